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

#include <cstdint>
#include <optional>
#include <vector>

#include "margindisc/discrimination.hpp"
#include "margindisc/group.hpp"
#include "margindisc/isotypic.hpp"
#include "margindisc/margin_result.hpp"
#include "margindisc/rational.hpp"

namespace margindisc {

KappaSummary kappa(const std::vector<IrrepSignature>& blocks, int group_order);
KappaSummary kappa(const IrrepDecomposition& dec);

struct GroupPmax {
  double probability = 0.0;
  Domain domain = Domain::kMinimumError;
  /// Set when the value is exact: the minimum-error branch, m = 0, or
  /// kappa = 1.
  std::optional<Rational> exact;
};

GroupPmax p_max(double kappa, double margin);
GroupPmax p_max(const Rational& kappa, double margin);

/// Uniform-prior process set {U_g} in group-element order.
ProcessSet process_set(const ProjectiveRep& rep);

/// Optimal input and covariant POVM for margin m, checked by evaluation.
/// Throws WitnessMismatch if the witness does not reproduce P_max. Groups of
/// order 1 get no witness, since a single process needs no discrimination.
MarginResult optimal_strategy(const ProjectiveRep& rep,
                              const IrrepDecomposition& dec, double margin);

/// decompose + optimal_strategy.
MarginResult solve_group(const ProjectiveRep& rep, double margin,
                         std::uint64_t seed);

struct Symmetrization {
  CovariantPovm povm;
  DiscriminationReport before;
  DiscriminationReport after;
};

/// E_1 = (1/|G|) sum_g U_g^+ F_g U_g, where F_g is povm[g + 1].
Symmetrization symmetrize(const ProjectiveRep& rep, const Povm& povm,
                          const InputState& input);

struct KeyInequalityReport {
  int trials = 0;
  /// Most negative min_eig(kappa sum_g U_g E U_g^+ - E) / ||E|| over trials.
  double worst_normalized = 0.0;
  /// min eigenvalue and <phi|...|phi> for E = |phi><phi| with the optimal
  /// input; both vanish in the equality case.
  double equality_min_eig = 0.0;
  double equality_expectation = 0.0;
  bool passed = false;
};

KeyInequalityReport verify_key_inequality(const ProjectiveRep& rep,
                                          const IrrepDecomposition& dec,
                                          int trials, std::uint64_t seed);

/// U_g (x) 1_r with the same group and factor set.
ProjectiveRep ancilla_extend(const ProjectiveRep& rep, int r);

struct AncillaBound {
  /// Smallest r with kappa'(r) = kappa^A, max over blocks of ceil(d / m).
  int r_star = 1;
  /// kappa^A = 1: with r_star the processes become perfectly
  /// distinguishable. False means some irrep is missing and no ancilla
  /// reaches P_max(0) = 1.
  bool perfect = false;
};

AncillaBound minimal_perfect_ancilla(const KappaSummary& summary);
AncillaBound minimal_perfect_ancilla(const IrrepDecomposition& dec);

/// Rank of the |G| vectorized matrices U_g.
int span_rank(const ProjectiveRep& rep, double tol = 1e-8);

/// sum_g U_g X U_g^+
CMatrix group_sum(const ProjectiveRep& rep, const CMatrix& x);

}  // namespace margindisc
