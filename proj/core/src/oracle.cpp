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

#include "margindisc/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "margindisc/error.hpp"
#include "margindisc/group_discrimination.hpp"
#include "margindisc/random.hpp"

namespace margindisc {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-14;
constexpr double kMaxStep = 1e3;
constexpr int kInnerRound = 50;
constexpr double kFeasibilityTol = 1e-8;
constexpr double kKernelTol = 1e-10;
constexpr double kMinDamping = 1e-8;
// Below this violation the multipliers alone restore feasibility.
constexpr double kGrowthFloor = 1e-3;
// Curvature of the objective relative to the penalty term along grad P_x.
constexpr double kBaseCurvature = 1e-3;
// Floor on that curvature in units of the inverse step length.
constexpr double kStepCurvature = 1e-2;

CMatrix hermitian_part(const CMatrix& a) { return 0.5 * (a + a.adjoint()); }

// (W W^+)^{-1/2} W applied blockwise.
void retract(std::vector<CMatrix>& m) {
  const Eigen::Index d = m.front().rows();
  CMatrix s = CMatrix::Zero(d, d);
  for (const CMatrix& x : m) s.noalias() += x * x.adjoint();
  const HermEigen eig = herm_eig(hermitian_part(s));
  RVector inv = eig.values;
  for (Eigen::Index k = 0; k < inv.size(); ++k) {
    inv(k) = 1.0 / std::sqrt(std::max(inv(k), 1e-300));
  }
  const CMatrix root =
      eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  for (CMatrix& x : m) x = (root * x).eval();
}

// Candidate POVM after repair, with its exact evaluation.
struct Candidate {
  std::vector<CMatrix> elements;
  CMatrix input;
  DiscriminationReport report;
  double completeness = 0.0;
  double psd = 0.0;
  bool feasible = false;
};

class Ascent {
 public:
  Ascent(const ProcessSet& set, double margin, const OracleConfig& cfg,
         std::optional<CMatrix> fixed_input)
      : set_(set),
        margin_(margin),
        cfg_(cfg),
        fixed_(std::move(fixed_input)),
        n_(set.size()),
        d_(set.dimension()),
        zero_(margin <= 0.0) {
    if (fixed_) {
      const HermEigen eig = herm_eig(hermitian_part(*fixed_));
      RVector root = eig.values;
      for (Eigen::Index k = 0; k < root.size(); ++k) {
        root(k) = std::sqrt(std::max(root(k), 0.0));
      }
      fixed_root_ = eig.vectors * root.cast<Complex>().asDiagonal() *
                    eig.vectors.adjoint();
    }
  }

  Candidate run(Rng& rng, OracleTrace& trace) {
    std::vector<CMatrix> m(n_ + 1);
    for (CMatrix& x : m) x = random_ginibre(d_, d_, rng);
    retract(m);
    CVector phi;
    if (!fixed_) phi = random_unit_vector(d_, rng);

    lambda_ = 0.0;
    rho_ = cfg_.penalty;
    // At zero margin the scalar error constraint is degenerate; carry one
    // multiplier per block M_j^+ S_i instead.
    mult_.assign(zero_ ? n_ * n_ : 0,
                 CMatrix::Zero(d_, fixed_ ? d_ : Eigen::Index(1)));
    double step = cfg_.initial_step;
    Values cur = values(m, phi);
    double last_violation = violation(cur);
    int it = 0;
    for (; it < cfg_.iterations; ++it) {
      step_ = step;
      const Direction dir = direction(m, phi, cur);
      const double slope = dir.slope;
      bool moved = false;
      if (slope > 1e-24) {
        while (step >= kMinStep) {
          std::vector<CMatrix> m2 = m;
          for (std::size_t k = 0; k <= n_; ++k) m2[k] += step * dir.m[k];
          retract(m2);
          CVector phi2;
          if (!fixed_) phi2 = (phi + step * dir.phi).normalized();
          const Values next = values(m2, phi2);
          if (next.lagrangian >= cur.lagrangian + kArmijo * step * slope) {
            m = std::move(m2);
            phi = std::move(phi2);
            cur = next;
            moved = true;
            step = std::min(step * 2.0, kMaxStep);
            break;
          }
          step *= cfg_.step_decay;
        }
      }
      const bool round_end = (it + 1) % kInnerRound == 0;
      if (round_end || !moved) {
        const double now = violation(cur);
        const double before = lambda_;
        if (zero_) {
          for (std::size_t k = 0; k < mult_.size(); ++k) {
            if (k / n_ != k % n_) mult_[k] += rho_ * cur.blocks[k];
          }
        } else {
          lambda_ = cur.nu;
        }
        if (now > 0.25 * last_violation && now > kGrowthFloor) {
          rho_ = std::min(rho_ * 2.0, 1e6);
        }
        last_violation = now;
        step = std::max(step, cfg_.initial_step * 1e-3);
        cur = values(m, phi);
        if (!moved && std::abs(lambda_ - before) < 1e-14 && now < 1e-12) {
          break;
        }
      }
    }
    trace.iterations = it;
    return repair(m, phi);
  }

 private:
  struct Values {
    double success = 0.0;
    double error = 0.0;
    double nu = 0.0;
    double lagrangian = 0.0;
    std::vector<CMatrix> e;       // E_0..E_n
    std::vector<CMatrix> states;  // U_i rho U_i^+
    CMatrix average;              // sum eta_i states_i
    std::vector<CMatrix> factors;  // sqrt(eta_i) U_i rho^{1/2}
    std::vector<CMatrix> blocks;   // M_j^+ factors_i at i * n + j
  };
  struct Direction {
    std::vector<CMatrix> m;
    CVector phi;
    double slope = 0.0;  // directional derivative of the Lagrangian
  };

  // Constraint residual; at zero margin the norm of the blocks M_j^+ S_i.
  double violation(const Values& v) const {
    return zero_ ? std::sqrt(std::max(0.0, v.error))
                 : std::max(0.0, v.error - margin_);
  }

  CMatrix input_density(const CVector& phi) const {
    return fixed_ ? *fixed_ : CMatrix(phi * phi.adjoint());
  }

  Values values(const std::vector<CMatrix>& m, const CVector& phi) const {
    Values v;
    const CMatrix rho = input_density(phi);
    v.average = CMatrix::Zero(d_, d_);
    v.e.reserve(n_ + 1);
    for (const CMatrix& x : m) v.e.push_back(x * x.adjoint());
    CMatrix conclusive = CMatrix::Zero(d_, d_);
    for (std::size_t j = 1; j <= n_; ++j) conclusive += v.e[j];
    for (std::size_t i = 0; i < n_; ++i) {
      const CMatrix& u = set_.unitaries()[i];
      v.states.push_back(u * rho * u.adjoint());
      v.average += set_.priors()[i] * v.states.back();
      v.success +=
          set_.priors()[i] * trace_product(v.states.back(), v.e[i + 1]).real();
    }
    v.error = trace_product(v.average, conclusive).real() - v.success;
    if (zero_) {
      const CMatrix root = fixed_ ? fixed_root_ : CMatrix(phi);
      double linear = 0.0;
      v.blocks.assign(n_ * n_, CMatrix());
      for (std::size_t i = 0; i < n_; ++i) {
        v.factors.push_back(std::sqrt(set_.priors()[i]) *
                            (set_.unitaries()[i] * root));
        for (std::size_t j = 0; j < n_; ++j) {
          if (i == j) continue;
          const std::size_t k = i * n_ + j;
          v.blocks[k] = m[j + 1].adjoint() * v.factors[i];
          linear += trace_product(mult_[k].adjoint(), v.blocks[k]).real();
        }
      }
      v.lagrangian = v.success - linear - 0.5 * rho_ * v.error;
      return v;
    }
    v.nu = std::max(0.0, lambda_ + rho_ * (v.error - margin_));
    v.lagrangian =
        v.success - (v.nu * v.nu - lambda_ * lambda_) / (2.0 * rho_);
    return v;
  }

  // Output states that outcome j (1-based) must not fire on.
  CMatrix wrong_output(const Values& v, std::size_t j) const {
    return hermitian_part(v.average - set_.priors()[j - 1] * v.states[j - 1]);
  }

  // The same weight pulled back to the input.
  CMatrix wrong_input(const Values& v) const {
    CMatrix conclusive = CMatrix::Zero(d_, d_);
    for (std::size_t j = 1; j <= n_; ++j) conclusive += v.e[j];
    CMatrix out = CMatrix::Zero(d_, d_);
    for (std::size_t i = 0; i < n_; ++i) {
      const CMatrix& u = set_.unitaries()[i];
      out.noalias() +=
          set_.priors()[i] * u.adjoint() * (conclusive - v.e[i + 1]) * u;
    }
    return hermitian_part(out);
  }

  // Tangent projection at (m, phi).
  void project(const std::vector<CMatrix>& m, const CVector& phi,
               Direction& t) const {
    CMatrix normal = CMatrix::Zero(d_, d_);
    for (std::size_t k = 0; k <= n_; ++k) {
      normal.noalias() += t.m[k] * m[k].adjoint();
    }
    normal = hermitian_part(normal);
    for (std::size_t k = 0; k <= n_; ++k) t.m[k].noalias() -= normal * m[k];
    if (!fixed_) {
      const Complex overlap = phi.dot(t.phi);
      t.phi -= overlap.real() * phi;
    }
  }

  double inner(const Direction& a, const Direction& b) const {
    double out = 0.0;
    for (std::size_t k = 0; k <= n_; ++k) {
      out += trace_product(a.m[k].adjoint(), b.m[k]).real();
    }
    if (!fixed_) out += a.phi.dot(b.phi).real();
    return out;
  }

  // Right factor (M_k^+ M_k + delta)^{-1}: plain ascent slows to O(1/t)
  // when the optimal elements have lower rank than M_k. At zero margin the
  // left factor (1 + rho W)^{-1} undoes the penalty curvature. Ends with
  // the tangent projection.
  Direction precondition(const std::vector<CMatrix>& m, const CVector& phi,
                         const Values& v, const Direction& t,
                         double delta) const {
    Direction out;
    out.m.resize(n_ + 1);
    const CMatrix id = CMatrix::Identity(d_, d_);
    for (std::size_t k = 0; k <= n_; ++k) {
      const Eigen::LLT<CMatrix> llt(m[k].adjoint() * m[k] + delta * id);
      out.m[k] = llt.solve(t.m[k].adjoint()).adjoint();
      if (zero_ && k > 0) {
        out.m[k] = Eigen::LLT<CMatrix>(id + rho_ * wrong_output(v, k))
                       .solve(out.m[k]);
      }
    }
    out.phi = t.phi;
    if (zero_ && !fixed_) {
      out.phi = Eigen::LLT<CMatrix>(id + rho_ * wrong_input(v)).solve(t.phi);
    }
    project(m, phi, out);
    return out;
  }

  Direction direction(const std::vector<CMatrix>& m, const CVector& phi,
                      const Values& v) const {
    // With zero margin nu stands in for rho / 2 and the multiplier blocks
    // add their linear part.
    const double nu = zero_ ? 0.5 * rho_ : v.nu;
    Direction g;
    g.m.resize(n_ + 1);
    g.m[0] = CMatrix::Zero(d_, d_);
    for (std::size_t j = 1; j <= n_; ++j) {
      const CMatrix c = (1.0 + nu) * set_.priors()[j - 1] * v.states[j - 1] -
                        nu * v.average;
      g.m[j] = 2.0 * c * m[j];
      if (zero_) {
        for (std::size_t i = 0; i < n_; ++i) {
          if (i + 1 == j) continue;
          g.m[j].noalias() -= v.factors[i] * mult_[i * n_ + j - 1].adjoint();
        }
      }
    }
    if (!fixed_) {
      CMatrix conclusive = CMatrix::Zero(d_, d_);
      for (std::size_t j = 1; j <= n_; ++j) conclusive += v.e[j];
      CMatrix q = CMatrix::Zero(d_, d_);
      for (std::size_t i = 0; i < n_; ++i) {
        const CMatrix& u = set_.unitaries()[i];
        q.noalias() += set_.priors()[i] * u.adjoint() *
                       ((1.0 + nu) * v.e[i + 1] - nu * conclusive) * u;
      }
      g.phi = 2.0 * (q * phi);
      if (zero_) {
        for (std::size_t i = 0; i < n_; ++i) {
          const CMatrix& u = set_.unitaries()[i];
          for (std::size_t j = 0; j < n_; ++j) {
            if (i == j) continue;
            g.phi.noalias() -= std::sqrt(set_.priors()[i]) *
                               (u.adjoint() * (m[j + 1] * mult_[i * n_ + j]));
          }
        }
      }
    }
    project(m, phi, g);
    const double delta = std::clamp(std::sqrt(inner(g, g)), kMinDamping, 1.0);
    Direction dir = precondition(m, phi, v, g, delta);
    if (!zero_ && v.nu > 0.0) {
      // The active penalty adds rho a a^T with a the gradient of P_x;
      // remove it by Sherman-Morrison in the preconditioned metric.
      Direction a;
      a.m.resize(n_ + 1);
      a.m[0] = CMatrix::Zero(d_, d_);
      for (std::size_t j = 1; j <= n_; ++j) {
        a.m[j] = 2.0 * wrong_output(v, j) * m[j];
      }
      if (!fixed_) a.phi = 2.0 * (wrong_input(v) * phi);
      project(m, phi, a);
      const Direction ta = precondition(m, phi, v, a, delta);
      const double stiff = rho_ * inner(a, ta);
      if (stiff > 0.0) {
        const double h =
            std::max(kBaseCurvature * stiff, kStepCurvature / step_);
        const double coef = rho_ * inner(a, dir) / (h + stiff);
        for (std::size_t k = 0; k <= n_; ++k) dir.m[k] -= coef * ta.m[k];
        if (!fixed_) dir.phi -= coef * ta.phi;
      }
    }
    dir.slope = inner(g, dir);
    return dir;
  }

  Candidate repair(const std::vector<CMatrix>& m, const CVector& phi) const {
    const Values v = values(m, phi);
    std::vector<CMatrix> e = v.e;
    const CMatrix id = CMatrix::Identity(d_, d_);
    if (v.error > margin_) {
      if (margin_ > 0.0) {
        const double t = margin_ / v.error;
        for (std::size_t j = 1; j <= n_; ++j) e[j] *= t;
      } else {
        // Zero error: keep each conclusive element inside the kernel of the
        // states it must not fire on.
        for (std::size_t j = 1; j <= n_; ++j) {
          const HermEigen eig = herm_eig(wrong_output(v, j));
          const double scale = std::max(1.0, std::abs(eig.values(d_ - 1)));
          CMatrix proj = CMatrix::Zero(d_, d_);
          for (Eigen::Index k = 0; k < d_; ++k) {
            if (eig.values(k) <= kKernelTol * scale) {
              proj += eig.vectors.col(k) * eig.vectors.col(k).adjoint();
            }
          }
          e[j] = hermitian_part(proj * e[j] * proj);
        }
        CMatrix total = CMatrix::Zero(d_, d_);
        for (std::size_t j = 1; j <= n_; ++j) total += e[j];
        const double top = herm_eig(hermitian_part(total)).values(d_ - 1);
        if (top > 1.0) {
          for (std::size_t j = 1; j <= n_; ++j) e[j] /= top;
        }
      }
    }
    CMatrix total = CMatrix::Zero(d_, d_);
    for (std::size_t j = 1; j <= n_; ++j) {
      e[j] = hermitian_part(e[j]);
      total += e[j];
    }
    e[0] = hermitian_part(id - total);

    Candidate c;
    c.input = input_density(phi);
    c.elements = e;
    PovmTolerances tol;
    tol.psd = kFeasibilityTol;
    tol.completeness = kFeasibilityTol;
    try {
      const Povm povm(e, tol);
      c.psd = povm.psd_residual();
      c.completeness = povm.completeness_residual();
      const InputState input = fixed_ ? InputState::mixed(*fixed_)
                                      : InputState::pure(phi.normalized());
      c.report = evaluate(set_, input, povm);
      c.feasible = c.report.error <= margin_ + kFeasibilityTol;
    } catch (const Error&) {
      c.feasible = false;
    }
    return c;
  }

  const ProcessSet& set_;
  double margin_;
  const OracleConfig& cfg_;
  std::optional<CMatrix> fixed_;
  std::size_t n_;
  Eigen::Index d_;
  bool zero_;
  CMatrix fixed_root_;
  std::vector<CMatrix> mult_;
  double lambda_ = 0.0;
  double step_ = 1.0;
  double rho_ = 1.0;
};

void check_margin(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "margin must lie in [0, 1]");
  }
}

OracleReport run_restarts(const ProcessSet& set, double margin,
                          const OracleConfig& cfg,
                          const std::optional<CMatrix>& fixed,
                          std::uint64_t stream) {
  cfg.validate();
  check_margin(margin);
  OracleReport report;
  report.margin = margin;
  report.restarts = cfg.restarts;
  const Eigen::Index d = set.dimension();

  // Never measuring is always feasible.
  report.povm.assign(set.size() + 1, CMatrix::Zero(d, d));
  report.povm[0] = CMatrix::Identity(d, d);
  report.input = fixed ? *fixed : CMatrix(CMatrix::Identity(d, d) / double(d));
  report.completeness_residual = 0.0;
  report.psd_residual = 0.0;
  bool have = false;

  Ascent ascent(set, margin, cfg, fixed);
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = derived_rng(cfg.seed ^ (stream * 0x9e3779b97f4a7c15ULL),
                          static_cast<std::uint64_t>(r));
    OracleTrace trace;
    trace.restart = r;
    const Candidate c = ascent.run(rng, trace);
    trace.value = c.report.success;
    trace.feasible = c.feasible;
    if (cfg.keep_traces) report.traces.push_back(trace);
    if (c.feasible && (!have || c.report.success > report.success)) {
      have = true;
      report.success = c.report.success;
      report.error = c.report.error;
      report.margin_residual = std::max(0.0, c.report.error - margin);
      report.completeness_residual = c.completeness;
      report.psd_residual = c.psd;
      report.povm = c.elements;
      report.input = c.input;
    }
  }
  return report;
}

}  // namespace

void OracleConfig::validate() const {
  if (restarts < 1 || iterations < 1 || !(initial_step > 0.0) ||
      !(step_decay > 0.0 && step_decay < 1.0) || !(penalty > 0.0) ||
      !(tolerance > 0.0) || mixed_samples < 0) {
    throw Error(ErrorCode::kInvalidArgument, "invalid oracle configuration");
  }
}

OracleReport optimize_fixed_input(const ProcessSet& set,
                                  const InputState& input, double margin,
                                  const OracleConfig& cfg) {
  if (input.dimension() != set.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch, "input dimension");
  }
  return run_restarts(set, margin, cfg, input.density(), 1);
}

OracleReport optimize_full(const ProcessSet& set, double margin,
                           const OracleConfig& cfg,
                           std::optional<double> analytic) {
  OracleReport report = run_restarts(set, margin, cfg, std::nullopt, 0);

  bool mixed_ok = true;
  const Eigen::Index d = set.dimension();
  if (cfg.mixed_samples > 0 && d >= 2) {
    OracleConfig sub = cfg;
    sub.restarts = std::max(1, cfg.restarts / 4);
    double best = 0.0;
    for (int k = 0; k < cfg.mixed_samples; ++k) {
      Rng rng = derived_rng(cfg.seed ^ 0x6d69786564ULL,
                            static_cast<std::uint64_t>(k));
      std::uniform_int_distribution<Eigen::Index> rank_dist(2, d);
      const CMatrix rho = random_density(d, rank_dist(rng), rng);
      sub.seed = cfg.seed + 1000003ULL * static_cast<std::uint64_t>(k + 1);
      const OracleReport mixed =
          run_restarts(set, margin, sub, rho, 2 + static_cast<std::uint64_t>(k));
      best = std::max(best, mixed.success);
    }
    report.mixed_best = best;
    mixed_ok = best <= report.success + cfg.tolerance;
  }

  if (analytic) {
    report.analytic = *analytic;
    report.gap = *analytic - report.success;
    if (report.success > *analytic + 10.0 * cfg.tolerance) {
      throw Error(ErrorCode::kCertificationFailure,
                  "oracle found P_o = " + std::to_string(report.success) +
                      " above the analytic value " + std::to_string(*analytic));
    }
    report.certified = mixed_ok && report.success >= *analytic - cfg.tolerance &&
                       report.margin_residual <= kFeasibilityTol &&
                       report.completeness_residual <= kFeasibilityTol &&
                       report.psd_residual >= -kFeasibilityTol;
  }
  return report;
}

OracleReport optimize_full(const UnitaryPair& pair, double margin,
                           const OracleConfig& cfg) {
  const double analytic = solve(pair, margin).p_max;
  return optimize_full(pair.as_process_set(), margin, cfg, analytic);
}

OracleReport optimize_full(const ProjectiveRep& rep, double margin,
                           const OracleConfig& cfg) {
  const double analytic = solve_group(rep, margin, cfg.seed).p_max;
  return optimize_full(process_set(rep), margin, cfg, analytic);
}

ScanReport check_scan(std::vector<double> grid, std::vector<double> values,
                      double tolerance) {
  if (grid.size() != values.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "grid and values differ");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw Error(ErrorCode::kInvalidArgument, "grid must be sorted");
  }
  ScanReport out;
  for (std::size_t k = 1; k < values.size(); ++k) {
    out.monotonicity_violation =
        std::max(out.monotonicity_violation, values[k - 1] - values[k]);
  }
  for (std::size_t k = 1; k + 1 < values.size(); ++k) {
    const double span = grid[k + 1] - grid[k - 1];
    if (span <= 0.0) continue;
    const double chord = (values[k - 1] * (grid[k + 1] - grid[k]) +
                          values[k + 1] * (grid[k] - grid[k - 1])) /
                         span;
    out.concavity_violation =
        std::max(out.concavity_violation, chord - values[k]);
  }
  out.passed = out.concavity_violation <= tolerance &&
               out.monotonicity_violation <= tolerance;
  out.grid = std::move(grid);
  out.values = std::move(values);
  return out;
}

ScanReport concavity_scan(const UnitaryPair& pair,
                          const std::vector<double>& grid,
                          const OracleConfig& cfg) {
  std::vector<double> values;
  values.reserve(grid.size());
  for (double m : grid) {
    values.push_back(optimize_full(pair.as_process_set(), m, cfg).success);
  }
  return check_scan(grid, std::move(values), cfg.tolerance);
}

ScanReport concavity_scan(const ProjectiveRep& rep,
                          const std::vector<double>& grid,
                          const OracleConfig& cfg) {
  const ProcessSet set = process_set(rep);
  std::vector<double> values;
  values.reserve(grid.size());
  for (double m : grid) values.push_back(optimize_full(set, m, cfg).success);
  return check_scan(grid, std::move(values), cfg.tolerance);
}

}  // namespace margindisc
