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

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "margindisc/discrimination.hpp"
#include "margindisc/group.hpp"
#include "margindisc/rational.hpp"

namespace margindisc {

/// Regime of the optimal strategy. The first three apply to a pair of
/// unitaries; group-symmetric problems use kMinimumError and kLinear.
enum class Domain { kMinimumError, kIntermediate, kSingleState, kLinear };

std::string_view to_string(Domain domain);

struct TwoUnitaryProfile {
  double eta1 = 0.5;  // smaller prior
  double eta2 = 0.5;
  double overlap = 1.0;  // S = min |<phi|U1^+ U2|phi>|^2
  double critical_margin = 0.0;        // m_c
  double critical_margin_prime = 0.0;  // m_c'
  bool swapped = false;  // priors were given in decreasing order
};

struct IrrepSignature {
  int dimension = 0;     // d_sigma
  int multiplicity = 0;  // m_sigma
  auto operator<=>(const IrrepSignature&) const = default;
};

struct KappaSummary {
  int group_order = 1;
  std::vector<IrrepSignature> blocks;
  Rational kappa;          // sum min(m, d) d / |G|
  Rational kappa_ancilla;  // sum over present irreps of d^2 / |G|

  Rational critical_margin() const { return Rational(1) - kappa; }
  /// kappa with an ancilla of dimension r: sum min(m r, d) d / |G|.
  Rational kappa_prime(int ancilla_dimension) const;
  /// Per-block terms min(m, d) d / |G|, in block order.
  std::vector<Rational> contributions() const;
};

/// Covariant measurement generated by the seed E_1: E_g = U_g E_1 U_g^+ and
/// E_0 = 1 - sum_g E_g, the latter computed explicitly and PSD-checked.
class CovariantPovm {
 public:
  CovariantPovm(const ProjectiveRep& rep, CMatrix seed, double psd_tol = 1e-8);

  const CMatrix& seed() const { return seed_; }
  const CMatrix& inconclusive() const { return inconclusive_; }
  /// E_g indexed by group element.
  const std::vector<CMatrix>& elements() const { return elements_; }
  double inconclusive_min_eig() const { return inconclusive_min_eig_; }

  /// {E_0, E_{g=0}, E_{g=1}, ...}, matching ProcessSet order of the rep.
  Povm to_povm() const;

  /// max over g, h of |U_h E_g U_h^+ - E_{hg}| and |U_g E_0 U_g^+ - E_0|.
  double covariance_residual(const ProjectiveRep& rep) const;

 private:
  CMatrix seed_;
  CMatrix inconclusive_;
  std::vector<CMatrix> elements_;
  double inconclusive_min_eig_ = 0.0;
};

struct MarginResult {
  double p_max = 0.0;
  std::optional<Rational> p_max_exact;
  double margin = 0.0;
  Domain domain = Domain::kMinimumError;
  double critical_margin = 0.0;
  std::optional<double> critical_margin_prime;

  std::optional<InputState> optimal_input;
  std::optional<CovariantPovm> optimal_povm;
  std::string povm_note;

  std::optional<KappaSummary> kappa;
  std::optional<TwoUnitaryProfile> two_unitary;
  /// Witness evaluation of (optimal_input, optimal_povm), when both exist.
  std::optional<DiscriminationReport> witness;
};

}  // namespace margindisc
