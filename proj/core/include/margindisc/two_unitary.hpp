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

#pragma once

#include <vector>

#include "margindisc/discrimination.hpp"
#include "margindisc/linalg.hpp"
#include "margindisc/margin_result.hpp"

namespace margindisc {

/// Two unitaries with priors, stored so that eta1 <= eta2. When the input
/// priors are decreasing the unitaries are swapped along with them and
/// `swapped()` reports it.
class UnitaryPair {
 public:
  UnitaryPair(CMatrix u1, CMatrix u2, double eta1 = 0.5, double eta2 = 0.5,
              const KernelTolerances& tol = {});

  const CMatrix& first() const { return u1_; }
  const CMatrix& second() const { return u2_; }
  double eta1() const { return eta1_; }
  double eta2() const { return eta2_; }
  bool swapped() const { return swapped_; }
  Eigen::Index dimension() const { return u1_.rows(); }

  ProcessSet as_process_set() const;
  /// (U1 (x) 1_r, U2 (x) 1_r).
  UnitaryPair with_ancilla(int r) const;

 private:
  CMatrix u1_;
  CMatrix u2_;
  double eta1_ = 0.5;
  double eta2_ = 0.5;
  bool swapped_ = false;
};

/// Eigen-decomposition of U1^+ U2.
PhaseDecomposition phase_spectrum(const UnitaryPair& pair);

struct SminResult {
  double s_min = 1.0;
  /// Columns of `spectrum.vectors` carrying weight, with their weights q_a.
  std::vector<int> support;
  std::vector<double> weights;
  /// sum_a sqrt(q_a) |a>
  CVector optimal_input;
  PhaseDecomposition spectrum;
  bool origin_in_hull = false;

  /// |sum_a q_a exp(i theta_a)|^2 recomputed from the support.
  double certificate() const;
};

SminResult s_min(const UnitaryPair& pair);

struct CriticalMargins {
  double m_c = 0.0;
  double m_c_prime = 0.0;
};

/// Requires valid priors with eta1 <= eta2 and S in [0, 1].
CriticalMargins critical_margins(double eta1, double eta2, double overlap);

struct PurePmax {
  double probability = 0.0;
  Domain domain = Domain::kMinimumError;
};

/// Maximum success probability for the fixed output overlap S.
PurePmax p_max_pure(double eta1, double eta2, double overlap, double margin);

MarginResult solve(const UnitaryPair& pair, double margin);

/// True iff S_min of (U1 (x) 1_r, U2 (x) 1_r) equals S_min of the pair within
/// 1e-10.
bool ancilla_invariance_check(const UnitaryPair& pair, int r);

}  // namespace margindisc
