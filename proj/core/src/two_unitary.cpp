// Copyright 2026 The margindisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "margindisc/two_unitary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "margindisc/error.hpp"
#include "margindisc/geometry.hpp"

namespace margindisc {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kGapBand = 1e-9;
constexpr double kSingularGuard = 1e-12;

void check_priors(double eta1, double eta2) {
  if (!(eta1 >= 0.0) || !(eta2 >= 0.0) || !std::isfinite(eta1) ||
      !std::isfinite(eta2)) {
    throw Error(ErrorCode::kInvalidPriors, "priors must be nonnegative");
  }
  if (std::abs(eta1 + eta2 - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidPriors,
                "priors sum to " + std::to_string(eta1 + eta2));
  }
}

void check_ordered(double eta1, double eta2) {
  check_priors(eta1, eta2);
  if (eta1 > eta2 + 1e-15) {
    throw Error(ErrorCode::kInvalidPriors, "expected eta1 <= eta2");
  }
}

void check_probability(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must lie in [0, 1]");
  }
}

}  // namespace

UnitaryPair::UnitaryPair(CMatrix u1, CMatrix u2, double eta1, double eta2,
                         const KernelTolerances& tol)
    : u1_(std::move(u1)), u2_(std::move(u2)), eta1_(eta1), eta2_(eta2) {
  check_priors(eta1_, eta2_);
  if (u1_.rows() != u1_.cols() || u2_.rows() != u2_.cols() ||
      u1_.rows() != u2_.rows() || u1_.rows() == 0) {
    throw Error(ErrorCode::kDimensionMismatch,
                "unitaries must be square and of equal size");
  }
  for (const CMatrix* u : {&u1_, &u2_}) {
    const double residual = unitarity_residual(*u);
    if (residual > tol.unitary) {
      throw Error(ErrorCode::kNotUnitary,
                  "unitarity residual " + std::to_string(residual));
    }
  }
  if (eta1_ > eta2_) {
    std::swap(u1_, u2_);
    std::swap(eta1_, eta2_);
    swapped_ = true;
  }
}

ProcessSet UnitaryPair::as_process_set() const {
  return ProcessSet({u1_, u2_}, {eta1_, eta2_});
}

UnitaryPair UnitaryPair::with_ancilla(int r) const {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "ancilla dimension < 1");
  const CMatrix id = CMatrix::Identity(r, r);
  return UnitaryPair(kron(u1_, id), kron(u2_, id), eta1_, eta2_);
}

PhaseDecomposition phase_spectrum(const UnitaryPair& pair) {
  return unitary_eig(pair.first().adjoint() * pair.second());
}

double SminResult::certificate() const {
  Complex sum = 0.0;
  for (std::size_t k = 0; k < support.size(); ++k) {
    sum += weights[k] * std::polar(1.0, spectrum.phases[support[k]]);
  }
  return std::norm(sum);
}

SminResult s_min(const UnitaryPair& pair) {
  SminResult out;
  out.spectrum = phase_spectrum(pair);
  const auto& spectrum = out.spectrum;

  // One representative eigenvector per distinct eigenvalue.
  std::vector<int> reps;
  reps.reserve(spectrum.clusters.size());
  for (const auto& cluster : spectrum.clusters) reps.push_back(cluster.front());
  std::sort(reps.begin(), reps.end(), [&](int a, int b) {
    return spectrum.phases[a] < spectrum.phases[b];
  });

  auto assemble = [&](std::vector<int> support, std::vector<double> weights) {
    out.support = std::move(support);
    out.weights = std::move(weights);
    out.optimal_input = CVector::Zero(pair.dimension());
    for (std::size_t k = 0; k < out.support.size(); ++k) {
      out.optimal_input +=
          std::sqrt(out.weights[k]) * spectrum.vectors.col(out.support[k]);
    }
    out.optimal_input.normalize();
  };

  if (reps.size() == 1) {
    out.s_min = 1.0;
    assemble({reps.front()}, {1.0});
    return out;
  }

  // Largest angular gap between consecutive eigenphases, wrap included.
  double max_gap = -1.0;
  std::size_t gap_after = 0;
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const double here = spectrum.phases[reps[k]];
    const double next = k + 1 < reps.size()
                            ? spectrum.phases[reps[k + 1]]
                            : spectrum.phases[reps.front()] + 2.0 * kPi;
    if (next - here > max_gap) {
      max_gap = next - here;
      gap_after = k;
    }
  }

  std::vector<Point2> points;
  points.reserve(reps.size());
  for (int r : reps) {
    points.push_back({std::cos(spectrum.phases[r]), std::sin(spectrum.phases[r])});
  }
  const std::vector<int> hull = convex_hull(points);

  if (max_gap > kPi + kGapBand) {
    const BoundaryPoint nearest = nearest_boundary_point(points, hull);
    if (nearest.first == nearest.second) {
      assemble({reps[nearest.first]}, {1.0});
    } else {
      assemble({reps[nearest.first], reps[nearest.second]},
               {nearest.weight, 1.0 - nearest.weight});
    }
    out.s_min = out.certificate();
    return out;
  }

  out.origin_in_hull = true;
  out.s_min = 0.0;
  if (max_gap >= kPi - kGapBand) {
    // Origin on the hull boundary: the two eigenvalues bounding the largest
    // gap are antipodal.
    const int a = reps[gap_after];
    const int b = reps[(gap_after + 1) % reps.size()];
    assemble({a, b}, {0.5, 0.5});
    return out;
  }

  // Origin strictly inside: pick the fan triangle whose smallest barycentric
  // coordinate of the origin is largest.
  double best_margin = -1.0;
  std::array<int, 3> best_tri{};
  std::array<double, 3> best_w{};
  for (std::size_t i = 1; i + 1 < hull.size(); ++i) {
    const Point2& a = points[hull[0]];
    const Point2& b = points[hull[i]];
    const Point2& c = points[hull[i + 1]];
    const double det = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
    if (std::abs(det) < 1e-300) continue;
    const double wb = ((-a.x) * (c.y - a.y) - (c.x - a.x) * (-a.y)) / det;
    const double wc = ((b.x - a.x) * (-a.y) - (-a.x) * (b.y - a.y)) / det;
    const double wa = 1.0 - wb - wc;
    const double worst = std::min({wa, wb, wc});
    if (worst > best_margin) {
      best_margin = worst;
      best_tri = {hull[0], hull[i], hull[i + 1]};
      best_w = {wa, wb, wc};
    }
  }
  std::vector<int> support;
  std::vector<double> weights;
  double total = 0.0;
  for (int k = 0; k < 3; ++k) total += std::max(0.0, best_w[k]);
  for (int k = 0; k < 3; ++k) {
    const double w = std::max(0.0, best_w[k]) / total;
    if (w > 0.0) {
      support.push_back(reps[best_tri[k]]);
      weights.push_back(w);
    }
  }
  assemble(std::move(support), std::move(weights));
  return out;
}

CriticalMargins critical_margins(double eta1, double eta2, double overlap) {
  check_ordered(eta1, eta2);
  check_probability(overlap, "overlap S");
  CriticalMargins out;
  const double product = eta1 * eta2 * overlap;
  out.m_c = 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - 4.0 * product)));
  const double root = std::sqrt(product);
  const double denominator = 1.0 - 2.0 * root;
  if (denominator < kSingularGuard) {
    // eta1 = eta2 = 1/2 and S = 1; the limit along S = 1 is eta1.
    out.m_c_prime = eta1;
  } else if (eta1 <= eta2 * overlap) {
    out.m_c_prime = (eta1 - root) * (eta1 - root) / denominator;
  } else {
    out.m_c_prime = 0.0;
  }
  return out;
}

PurePmax p_max_pure(double eta1, double eta2, double overlap, double margin) {
  check_probability(margin, "margin");
  const CriticalMargins cm = critical_margins(eta1, eta2, overlap);
  const double product = eta1 * eta2 * overlap;
  if (margin >= cm.m_c) {
    return {0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * product))),
            Domain::kMinimumError};
  }
  if (margin >= cm.m_c_prime) {
    const double b = std::sqrt(std::max(0.0, 1.0 - 2.0 * std::sqrt(product)));
    const double a = std::sqrt(margin);
    return {(a + b) * (a + b), Domain::kIntermediate};
  }
  const double a = std::sqrt(margin / eta1 * overlap);
  const double b =
      std::sqrt(std::max(0.0, (eta1 - margin) / eta1 * (1.0 - overlap)));
  return {eta2 * (a + b) * (a + b), Domain::kSingleState};
}

MarginResult solve(const UnitaryPair& pair, double margin) {
  check_probability(margin, "margin");
  const SminResult smin = s_min(pair);
  const CriticalMargins cm =
      critical_margins(pair.eta1(), pair.eta2(), smin.s_min);
  const PurePmax best =
      p_max_pure(pair.eta1(), pair.eta2(), smin.s_min, margin);

  MarginResult result;
  result.p_max = best.probability;
  result.margin = margin;
  result.domain = best.domain;
  result.critical_margin = cm.m_c;
  result.critical_margin_prime = cm.m_c_prime;
  result.optimal_input = InputState::pure(smin.optimal_input);
  result.povm_note =
      "optimal measurement for the two output states is not constructed in "
      "closed form; the value is certified by the numerical oracle";
  TwoUnitaryProfile profile;
  profile.eta1 = pair.eta1();
  profile.eta2 = pair.eta2();
  profile.overlap = smin.s_min;
  profile.critical_margin = cm.m_c;
  profile.critical_margin_prime = cm.m_c_prime;
  profile.swapped = pair.swapped();
  result.two_unitary = profile;
  return result;
}

bool ancilla_invariance_check(const UnitaryPair& pair, int r) {
  const double base = s_min(pair).s_min;
  const double extended = s_min(pair.with_ancilla(r)).s_min;
  return std::abs(base - extended) <= 1e-10;
}

}  // namespace margindisc
