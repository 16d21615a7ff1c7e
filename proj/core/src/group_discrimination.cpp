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

#include "margindisc/group_discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "margindisc/error.hpp"
#include "margindisc/random.hpp"

namespace margindisc {

namespace {

constexpr double kWitnessTol = 1e-8;
constexpr double kKeyTol = 1e-8;

void check_margin(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must lie in [0, 1]");
  }
}

CVector optimal_input_vector(const IrrepDecomposition& dec,
                             const KappaSummary& summary) {
  const double k = to_double(summary.kappa);
  CVector phi = CVector::Zero(dec.basis.rows());
  for (const IrrepBlock& b : dec.blocks) {
    const double w = std::sqrt(static_cast<double>(b.dimension) /
                               static_cast<double>(dec.group_order));
    const int copies = std::min(b.multiplicity, b.dimension);
    for (int a = 0; a < copies; ++a) {
      phi += w * b.copies[static_cast<std::size_t>(a)].col(a);
    }
  }
  phi /= std::sqrt(k);
  // Guard the 1e-10 normalization check against accumulated rounding.
  return phi / phi.norm();
}

}  // namespace

KappaSummary kappa(const std::vector<IrrepSignature>& blocks,
                   int group_order) {
  if (group_order < 1) {
    throw Error(ErrorCode::kInvalidArgument, "group order must be positive");
  }
  KappaSummary out;
  out.group_order = group_order;
  out.blocks = blocks;
  out.kappa = 0;
  out.kappa_ancilla = 0;
  for (const IrrepSignature& b : blocks) {
    if (b.multiplicity < 1) continue;
    out.kappa += Rational(std::min(b.multiplicity, b.dimension) * b.dimension,
                          group_order);
    out.kappa_ancilla += Rational(b.dimension * b.dimension, group_order);
  }
  return out;
}

KappaSummary kappa(const IrrepDecomposition& dec) {
  return kappa(multiplicity_signature(dec), dec.group_order);
}

GroupPmax p_max(double kappa, double margin) {
  check_margin(margin);
  if (!(kappa > 0.0 && kappa <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "kappa must lie in (0, 1]");
  }
  GroupPmax out;
  if (kappa == 1.0) {
    out.probability = 1.0;
    out.domain = Domain::kMinimumError;
  } else if (margin >= 1.0 - kappa) {
    out.probability = kappa;
    out.domain = Domain::kMinimumError;
  } else {
    out.probability = kappa * margin / (1.0 - kappa);
    out.domain = Domain::kLinear;
  }
  return out;
}

GroupPmax p_max(const Rational& kappa, double margin) {
  check_margin(margin);
  if (kappa <= 0 || kappa > 1) {
    throw Error(ErrorCode::kInvalidArgument, "kappa must lie in (0, 1]");
  }
  GroupPmax out = p_max(to_double(kappa), margin);
  if (kappa == 1) {
    out.exact = Rational(1);
  } else if (Rational(margin) >= 1 - kappa) {
    out.domain = Domain::kMinimumError;
    out.probability = to_double(kappa);
    out.exact = kappa;
  } else {
    out.domain = Domain::kLinear;
    const double k = to_double(kappa);
    out.probability = k * margin / (1.0 - k);
    if (margin == 0.0) {
      out.probability = 0.0;
      out.exact = Rational(0);
    }
  }
  return out;
}

ProcessSet process_set(const ProjectiveRep& rep) {
  return ProcessSet::uniform(rep.matrices());
}

CMatrix group_sum(const ProjectiveRep& rep, const CMatrix& x) {
  CMatrix out = CMatrix::Zero(x.rows(), x.cols());
  for (const CMatrix& u : rep.matrices()) out.noalias() += u * x * u.adjoint();
  return out;
}

MarginResult optimal_strategy(const ProjectiveRep& rep,
                              const IrrepDecomposition& dec, double margin) {
  check_margin(margin);
  if (dec.basis.rows() != rep.dimension() || dec.group_order != rep.order()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "decomposition does not belong to this representation");
  }
  const KappaSummary summary = kappa(dec);
  const GroupPmax best = p_max(summary.kappa, margin);

  MarginResult result;
  result.p_max = best.probability;
  result.p_max_exact = best.exact;
  result.margin = margin;
  result.domain = best.domain;
  result.critical_margin = to_double(summary.critical_margin());
  result.kappa = summary;

  const CVector phi = optimal_input_vector(dec, summary);
  result.optimal_input = InputState::pure(phi);
  try {
    result.optimal_povm.emplace(rep, best.probability * phi * phi.adjoint());
  } catch (const Error& e) {
    throw Error(ErrorCode::kWitnessMismatch, e.what());
  }
  if (rep.order() < 2) {
    result.povm_note = "single process; no witness evaluation";
    return result;
  }
  const DiscriminationReport report = evaluate(
      process_set(rep), *result.optimal_input, result.optimal_povm->to_povm());
  result.witness = report;
  if (std::abs(report.success - result.p_max) > kWitnessTol ||
      report.error > margin + kWitnessTol) {
    throw Error(ErrorCode::kWitnessMismatch,
                "witness gives P_o = " + std::to_string(report.success) +
                    ", P_x = " + std::to_string(report.error) +
                    " against P_max = " + std::to_string(result.p_max));
  }
  return result;
}

MarginResult solve_group(const ProjectiveRep& rep, double margin,
                         std::uint64_t seed) {
  return optimal_strategy(rep, decompose(rep, seed), margin);
}

Symmetrization symmetrize(const ProjectiveRep& rep, const Povm& povm,
                          const InputState& input) {
  const int n = rep.order();
  if (povm.size() != static_cast<std::size_t>(n) + 1 ||
      povm.dimension() != rep.dimension() ||
      input.dimension() != rep.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "POVM needs |G| + 1 elements on the representation space");
  }
  CMatrix seed = CMatrix::Zero(rep.dimension(), rep.dimension());
  for (int g = 0; g < n; ++g) {
    seed.noalias() += rep[g].adjoint() * povm[static_cast<std::size_t>(g) + 1] *
                      rep[g];
  }
  seed /= static_cast<double>(n);
  seed = (0.5 * (seed + seed.adjoint())).eval();
  CovariantPovm covariant(rep, seed);
  const ProcessSet set = process_set(rep);
  DiscriminationReport before = evaluate(set, input, povm);
  DiscriminationReport after = evaluate(set, input, covariant.to_povm());
  return {std::move(covariant), before, after};
}

KeyInequalityReport verify_key_inequality(const ProjectiveRep& rep,
                                          const IrrepDecomposition& dec,
                                          int trials, std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::kInvalidArgument, "trials < 1");
  const KappaSummary summary = kappa(dec);
  const double k = to_double(summary.kappa);
  const Eigen::Index dim = rep.dimension();

  KeyInequalityReport out;
  out.trials = trials;
  for (int t = 0; t < trials; ++t) {
    Rng rng = derived_rng(seed, static_cast<std::uint64_t>(t));
    std::uniform_int_distribution<Eigen::Index> rank_dist(1, dim);
    const CMatrix e = random_psd(dim, rank_dist(rng), rng);
    const double norm = herm_eig(e).values(dim - 1);
    const double worst = min_eig(k * group_sum(rep, e) - e) / norm;
    out.worst_normalized = std::min(out.worst_normalized, worst);
  }

  const CVector phi = optimal_input_vector(dec, summary);
  const CMatrix e = phi * phi.adjoint();
  const CMatrix gap = k * group_sum(rep, e) - e;
  out.equality_min_eig = min_eig(gap);
  out.equality_expectation = (phi.adjoint() * gap * phi)(0, 0).real();
  out.passed = out.worst_normalized >= -kKeyTol &&
               std::abs(out.equality_min_eig) <= kKeyTol &&
               std::abs(out.equality_expectation) <= kKeyTol;
  return out;
}

ProjectiveRep ancilla_extend(const ProjectiveRep& rep, int r) {
  if (r < 1) throw Error(ErrorCode::kInvalidArgument, "ancilla dimension < 1");
  const CMatrix id = CMatrix::Identity(r, r);
  std::vector<CMatrix> matrices;
  matrices.reserve(rep.matrices().size());
  for (const CMatrix& u : rep.matrices()) matrices.push_back(kron(u, id));
  return ProjectiveRep(rep.group(), rep.factors(), std::move(matrices));
}

AncillaBound minimal_perfect_ancilla(const KappaSummary& summary) {
  AncillaBound out;
  for (const IrrepSignature& b : summary.blocks) {
    if (b.multiplicity < 1) continue;
    out.r_star = std::max(
        out.r_star, (b.dimension + b.multiplicity - 1) / b.multiplicity);
  }
  out.perfect = summary.kappa_ancilla == 1;
  return out;
}

AncillaBound minimal_perfect_ancilla(const IrrepDecomposition& dec) {
  return minimal_perfect_ancilla(kappa(dec));
}

int span_rank(const ProjectiveRep& rep, double tol) {
  const Eigen::Index dim = rep.dimension();
  CMatrix stacked(dim * dim, rep.order());
  for (int g = 0; g < rep.order(); ++g) stacked.col(g) = vec(rep[g]);
  Eigen::BDCSVD<CMatrix> svd(stacked);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > tol * s(0)) ++rank;
  }
  return rank;
}

}  // namespace margindisc
