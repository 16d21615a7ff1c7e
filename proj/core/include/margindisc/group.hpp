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
#include <string>
#include <vector>

#include "margindisc/linalg.hpp"

namespace margindisc {

/// Finite group given by its multiplication table. Element 0 is the identity.
class FiniteGroup {
 public:
  /// Validates the table: Latin square, identity at 0, associativity
  /// (exhaustive up to order 64, 10^4 sampled triples above).
  static FiniteGroup from_table(std::vector<std::vector<int>> table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  /// Element (a, b) has index a * rhs.order() + b.
  static FiniteGroup direct_product(const FiniteGroup& lhs,
                                    const FiniteGroup& rhs);
  /// Symmetric group on n points; elements are permutations in
  /// lexicographic order (so the identity comes first), composed as
  /// (g h)(x) = g(h(x)).
  static FiniteGroup symmetric(int n);
  /// Closure of the given permutations under composition, capped at
  /// `max_order` elements.
  static FiniteGroup from_permutation_generators(
      const std::vector<std::vector<int>>& generators, int max_order = 10000);

  int order() const { return order_; }
  int multiply(int g, int h) const { return table_[index(g, h)]; }
  int inverse(int g) const { return inverse_[static_cast<std::size_t>(g)]; }
  std::vector<std::vector<int>> table() const;

  /// A small generating set, chosen greedily in index order.
  const std::vector<int>& generators() const { return generators_; }

  /// Permutation realized by element g when the group was built from
  /// permutations; empty otherwise.
  const std::vector<std::vector<int>>& permutations() const {
    return permutations_;
  }

 private:
  FiniteGroup() = default;
  std::size_t index(int g, int h) const {
    return static_cast<std::size_t>(g) * static_cast<std::size_t>(order_) +
           static_cast<std::size_t>(h);
  }
  void finish();

  int order_ = 0;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
  std::vector<std::vector<int>> permutations_;
};

/// c_{g,h} with U_g U_h = c_{g,h} U_{gh}.
class FactorSet {
 public:
  FactorSet(int order, std::vector<Complex> values);
  static FactorSet trivial(int order);

  int order() const { return order_; }
  Complex operator()(int g, int h) const {
    return values_[static_cast<std::size_t>(g) * order_ + h];
  }
  bool is_trivial(double tol = 1e-10) const;

  /// max |  |c| - 1  |
  double unit_modulus_residual() const;
  /// max | c_{g,h} c_{gh,k} - c_{g,hk} c_{h,k} | (sampled above order 64).
  double cocycle_residual(const FiniteGroup& group) const;

 private:
  int order_ = 0;
  std::vector<Complex> values_;
};

class ProjectiveRep {
 public:
  /// Shape checks only; use validate_rep for the algebraic checks.
  ProjectiveRep(FiniteGroup group, FactorSet factors,
                std::vector<CMatrix> matrices);

  const FiniteGroup& group() const { return group_; }
  const FactorSet& factors() const { return factors_; }
  const std::vector<CMatrix>& matrices() const { return matrices_; }
  const CMatrix& operator[](int g) const {
    return matrices_[static_cast<std::size_t>(g)];
  }
  Eigen::Index dimension() const { return matrices_.front().rows(); }
  int order() const { return group_.order(); }

 private:
  FiniteGroup group_;
  FactorSet factors_;
  std::vector<CMatrix> matrices_;
};

struct RepValidation {
  double unitarity = 0.0;      // max |U^+U - 1|
  double homomorphism = 0.0;   // max |U_g U_h - c U_gh|
  double cocycle = 0.0;
  double unit_modulus = 0.0;
  double identity = 0.0;       // distance of U_1 from a phase times 1
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Reports residuals of every defining property; never throws on an invalid
/// representation.
RepValidation validate_rep(const ProjectiveRep& rep);

/// c_{g,h} = tr(U_gh^+ U_g U_h) / D. Throws NotProjective when some product
/// is not proportional to U_gh within 1e-8.
FactorSet infer_factor_set(const FiniteGroup& group,
                           const std::vector<CMatrix>& matrices);

/// Builds a representation, infers its factor set and validates it.
ProjectiveRep make_projective_rep(FiniteGroup group,
                                  std::vector<CMatrix> matrices);

}  // namespace margindisc
