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

#include <gtest/gtest.h>

#include <numbers>

#include "margindisc/error.hpp"
#include "margindisc/group.hpp"
#include "test_util.hpp"

namespace margindisc {
namespace {

using testing::phase;

TEST(FiniteGroup, CyclicAndProducts) {
  const FiniteGroup z5 = FiniteGroup::cyclic(5);
  EXPECT_EQ(z5.order(), 5);
  EXPECT_EQ(z5.multiply(3, 4), 2);
  EXPECT_EQ(z5.inverse(2), 3);
  const FiniteGroup v = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                                    FiniteGroup::cyclic(3));
  EXPECT_EQ(v.order(), 6);
  // (1, 2) * (1, 2) = (0, 1)
  EXPECT_EQ(v.multiply(5, 5), 1);
  EXPECT_EQ(FiniteGroup::trivial().order(), 1);
}

TEST(FiniteGroup, SymmetricGroupTable) {
  const FiniteGroup s4 = FiniteGroup::symmetric(4);
  EXPECT_EQ(s4.order(), 24);
  const auto& perms = s4.permutations();
  for (int g = 0; g < 24; ++g) {
    for (int h = 0; h < 24; ++h) {
      const auto& pg = perms[g];
      const auto& ph = perms[h];
      const auto& gh = perms[s4.multiply(g, h)];
      for (int x = 0; x < 4; ++x) EXPECT_EQ(gh[x], pg[ph[x]]);
    }
    EXPECT_EQ(s4.multiply(g, s4.inverse(g)), 0);
  }
}

TEST(FiniteGroup, GeneratorsClosure) {
  const FiniteGroup s3 =
      FiniteGroup::from_permutation_generators({{1, 0, 2}, {1, 2, 0}});
  EXPECT_EQ(s3.order(), 6);
  const FiniteGroup z4 = FiniteGroup::from_permutation_generators({{1, 2, 3, 0}});
  EXPECT_EQ(z4.order(), 4);
}

TEST(FiniteGroup, RejectsBadTables) {
  EXPECT_THROW(FiniteGroup::from_table({{0, 1}, {1, 1}}), Error);
  // Latin square without identity in row 0.
  EXPECT_THROW(FiniteGroup::from_table({{1, 0}, {0, 1}}), Error);
  // Latin square with identity that is not associative.
  EXPECT_THROW(FiniteGroup::from_table({{0, 1, 2, 3, 4},
                                        {1, 0, 3, 4, 2},
                                        {2, 4, 0, 1, 3},
                                        {3, 2, 4, 0, 1},
                                        {4, 3, 1, 2, 0}}),
               Error);
}

TEST(ValidateRep, PauliSetValid) {
  const ProjectiveRep rep = testing::pauli_rep();
  const RepValidation v = validate_rep(rep);
  EXPECT_TRUE(v.ok());
  EXPECT_LT(v.homomorphism, 1e-12);
  EXPECT_LT(v.cocycle, 1e-12);
  EXPECT_FALSE(rep.factors().is_trivial());
}

TEST(ValidateRep, OrdinaryZ3Valid) {
  const ProjectiveRep rep = testing::phase_qubit_rep(3);
  EXPECT_TRUE(validate_rep(rep).ok());
  EXPECT_TRUE(rep.factors().is_trivial());
}

TEST(ValidateRep, TamperedMatrixReported) {
  const ProjectiveRep good = testing::phase_qubit_rep(3);
  std::vector<CMatrix> u = good.matrices();
  u[2] = testing::diag2(1.0, phase(0.5));
  const ProjectiveRep bad(good.group(), good.factors(), u);
  const RepValidation v = validate_rep(bad);
  EXPECT_FALSE(v.ok());
  EXPECT_GT(v.homomorphism, 0.1);
}

TEST(ValidateRep, BrokenCocycleReported) {
  const ProjectiveRep rep = testing::pauli_rep();
  std::vector<Complex> c;
  for (int g = 0; g < 4; ++g) {
    for (int h = 0; h < 4; ++h) c.push_back(rep.factors()(g, h));
  }
  c[1 * 4 + 2] *= -1.0;
  const ProjectiveRep bad(rep.group(), FactorSet(4, c), rep.matrices());
  const RepValidation v = validate_rep(bad);
  EXPECT_FALSE(v.ok());
  EXPECT_GT(v.cocycle, 0.1);
}

TEST(InferFactorSet, PauliRelations) {
  // Order (1, Z, X, XZ): X Z = (XZ) so c(X, Z) = 1; Z X = -(XZ) so c(Z, X) = -1.
  const ProjectiveRep rep = testing::pauli_rep();
  const FactorSet& c = rep.factors();
  EXPECT_NEAR(std::abs(c(2, 1) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c(1, 2) + 1.0), 0.0, 1e-12);
  // Direct product check against the matrices themselves.
  for (int g = 0; g < 4; ++g) {
    for (int h = 0; h < 4; ++h) {
      const CMatrix lhs = rep[g] * rep[h];
      const CMatrix rhs = c(g, h) * rep[rep.group().multiply(g, h)];
      EXPECT_LT(max_abs(lhs - rhs), 1e-12);
      EXPECT_NEAR(std::abs(c(g, h)), 1.0, 1e-12);
    }
  }
}

TEST(InferFactorSet, HeisenbergWeylQutrit) {
  const int d = 3;
  const Complex w = phase(2 * std::numbers::pi / d);
  CMatrix x = CMatrix::Zero(d, d);
  CMatrix z = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    x(a, (a + 1) % d) = 1.0;
    z(a, a) = std::pow(w, a);
  }
  std::vector<CMatrix> u;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      CMatrix m = CMatrix::Identity(d, d);
      for (int i = 0; i < k; ++i) m = m * x;
      for (int i = 0; i < l; ++i) m = m * z;
      u.push_back(m);
    }
  }
  const FiniteGroup g = FiniteGroup::direct_product(FiniteGroup::cyclic(d),
                                                    FiniteGroup::cyclic(d));
  const FactorSet c = infer_factor_set(g, u);
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      for (int k2 = 0; k2 < d; ++k2) {
        for (int l2 = 0; l2 < d; ++l2) {
          const Complex expected = phase(-2 * std::numbers::pi * l * k2 / d);
          EXPECT_LT(std::abs(c(k * d + l, k2 * d + l2) - expected), 1e-12);
        }
      }
    }
  }
  EXPECT_LT(c.cocycle_residual(g), 1e-12);
}

TEST(InferFactorSet, NotProjective) {
  std::vector<CMatrix> u = {CMatrix::Identity(2, 2), testing::sigma_x(),
                            testing::sigma_z()};
  try {
    infer_factor_set(FiniteGroup::cyclic(3), u);
    FAIL() << "expected NotProjective";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotProjective);
  }
}

TEST(InferFactorSet, OrdinaryRepsGiveOnes) {
  for (const ProjectiveRep& rep :
       {testing::phase_qubit_rep(5), testing::defining_rep(3),
        testing::cyclic_regular_rep(4)}) {
    EXPECT_TRUE(rep.factors().is_trivial(1e-10));
    EXPECT_TRUE(validate_rep(rep).ok());
  }
}

}  // namespace
}  // namespace margindisc
