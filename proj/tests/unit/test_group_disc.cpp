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

#include <set>

#include "margindisc/catalog.hpp"
#include "margindisc/error.hpp"
#include "margindisc/group_discrimination.hpp"
#include "margindisc/random.hpp"
#include "test_util.hpp"

namespace margindisc {
namespace {

Rational q(long a, long b) { return Rational(a) / Rational(b); }

std::vector<ProjectiveRep> sample_reps() {
  return {testing::pauli_rep(),
          testing::phase_qubit_rep(3),
          testing::defining_rep(3),
          *phase_shift(4, 2).rep,
          *phase_shift(3, 2).rep,
          *color_coding(3, 2).rep,
          *color_coding(4, 2).rep,
          *superdense(3).rep,
          *qutrit_phase_rep(2).rep};
}

TEST(Kappa, CatalogExamples) {
  for (int k = 2; k <= 8; ++k) {
    EXPECT_EQ(kappa(decompose(testing::phase_qubit_rep(k), 0)).kappa, q(2, k));
  }
  const KappaSummary cc = kappa(decompose(*color_coding(4, 2).rep, 0));
  EXPECT_EQ(cc.kappa, q(1, 2));
  EXPECT_EQ(cc.kappa_ancilla, q(7, 12));
  EXPECT_EQ(cc.critical_margin(), q(1, 2));
  for (int d = 2; d <= 4; ++d) {
    const KappaSummary s = kappa(decompose(*superdense(d).rep, 0));
    EXPECT_EQ(s.kappa, q(1, d));
    EXPECT_EQ(s.kappa_ancilla, 1);
  }
}

TEST(Kappa, AbelianDiagonalRepsFromDistinctCharacters) {
  // For a diagonal ordinary rep of Z_K every basis vector carries a
  // one-dimensional character; kappa counts the distinct ones.
  for (int K : {3, 4, 5, 6}) {
    for (int N : {1, 2, 3}) {
      const ProjectiveRep rep = *phase_shift(K, N).rep;
      std::set<std::vector<long>> seen;
      for (Eigen::Index i = 0; i < rep.dimension(); ++i) {
        std::vector<long> key;
        for (int g = 0; g < K; ++g) {
          key.push_back(std::lround(std::arg(rep[g](i, i)) * 1e6));
        }
        seen.insert(key);
      }
      const KappaSummary s = kappa(decompose(rep, 0));
      EXPECT_EQ(s.kappa, q(static_cast<long>(seen.size()), K)) << K << " " << N;
    }
  }
}

TEST(Kappa, ContributionsSumToKappa) {
  const KappaSummary s = kappa({{1, 5}, {2, 1}, {3, 3}}, 24);
  Rational total = 0;
  for (const Rational& c : s.contributions()) total += c;
  EXPECT_EQ(total, s.kappa);
  EXPECT_EQ(s.kappa_prime(1), q(1, 2));
  EXPECT_EQ(s.kappa_prime(2), q(7, 12));
  EXPECT_EQ(s.kappa_prime(7), q(7, 12));
}

TEST(PMax, Branches) {
  const GroupPmax lin = p_max(q(2, 3), 0.2);
  EXPECT_NEAR(lin.probability, 0.4, 1e-15);
  EXPECT_EQ(lin.domain, Domain::kLinear);
  for (const Rational& k : {q(1, 2), q(2, 3), q(1, 24)}) {
    const GroupPmax zero = p_max(k, 0.0);
    EXPECT_EQ(zero.probability, 0.0);
    ASSERT_TRUE(zero.exact.has_value());
    EXPECT_EQ(*zero.exact, 0);
  }
  for (double m : {0.0, 0.3, 1.0}) {
    const GroupPmax one = p_max(Rational(1), m);
    EXPECT_EQ(one.probability, 1.0);
    EXPECT_EQ(*one.exact, 1);
  }
  const GroupPmax half = p_max(q(1, 2), 1.0);
  EXPECT_EQ(half.probability, 0.5);
  EXPECT_EQ(half.domain, Domain::kMinimumError);
  EXPECT_EQ(*half.exact, q(1, 2));
  EXPECT_THROW(p_max(0.0, 0.5), Error);
  EXPECT_THROW(p_max(0.5, 1.5), Error);
}

TEST(PMax, ConcaveNondecreasingOnGrid) {
  for (const Rational& k : {q(1, 24), q(1, 4), q(1, 2), q(2, 3), q(23, 24)}) {
    double prev = -1.0;
    double prev2 = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double v = p_max(k, i / 100.0).probability;
      EXPECT_GE(v - prev, i == 0 ? 0.0 : -1e-12);
      if (i >= 2) EXPECT_LE(prev2 - 2 * prev + v, 1e-9);
      prev2 = prev;
      prev = v;
    }
  }
}

TEST(OptimalStrategy, PauliMinimumError) {
  const ProjectiveRep rep = testing::pauli_rep();
  const MarginResult r = optimal_strategy(rep, decompose(rep, 0), 1.0);
  EXPECT_NEAR(r.p_max, 0.5, 1e-15);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_NEAR(r.witness->success, 0.5, 1e-12);
  EXPECT_NEAR(r.optimal_povm->seed().trace().real(), 0.5, 1e-12);
}

TEST(OptimalStrategy, PhaseQubitAtCriticalMargin) {
  const ProjectiveRep rep = testing::phase_qubit_rep(3);
  const MarginResult r = optimal_strategy(rep, decompose(rep, 0), 1.0 / 3);
  EXPECT_NEAR(r.p_max, 2.0 / 3, 1e-12);
  EXPECT_LT(max_abs(r.optimal_povm->inconclusive()), 1e-12);
  EXPECT_NEAR(r.witness->success, 2.0 / 3, 1e-12);
  EXPECT_NEAR(r.witness->error, 1.0 / 3, 1e-12);
}

TEST(OptimalStrategy, KappaOneIsPerfect) {
  const ProjectiveRep rep = *phase_shift(3, 2).rep;
  for (double m : {0.0, 0.5, 1.0}) {
    const MarginResult r = optimal_strategy(rep, decompose(rep, 0), m);
    EXPECT_NEAR(r.witness->success, 1.0, 1e-12);
    EXPECT_NEAR(r.witness->error, 0.0, 1e-12);
  }
}

TEST(OptimalStrategy, WitnessConsistencyAcrossMargins) {
  for (const ProjectiveRep& rep : sample_reps()) {
    const IrrepDecomposition dec = decompose(rep, 0);
    const double mc = to_double(kappa(dec).critical_margin());
    for (double m : {0.0, 0.25 * mc, mc, 0.5 * (mc + 1), 1.0}) {
      const MarginResult r = optimal_strategy(rep, dec, m);
      ASSERT_TRUE(r.witness.has_value());
      EXPECT_NEAR(r.witness->success, r.p_max, 1e-8);
      EXPECT_LE(r.witness->error, m + 1e-8);
      EXPECT_GE(r.optimal_povm->inconclusive_min_eig(), -1e-8);
      EXPECT_LE(r.optimal_povm->covariance_residual(rep), 1e-8);
      EXPECT_NEAR(r.optimal_input->density().trace().real(), 1.0, 1e-12);
    }
  }
}

TEST(OptimalStrategy, AllOrNothing) {
  for (const ProjectiveRep& rep : sample_reps()) {
    const MarginResult r = solve_group(rep, 0.0, 0);
    const bool perfect = r.kappa->kappa == 1;
    EXPECT_EQ(r.p_max, perfect ? 1.0 : 0.0);
  }
}

TEST(Symmetrize, CovariantPovmIsFixedPoint) {
  const ProjectiveRep rep = testing::phase_qubit_rep(4);
  const MarginResult r = optimal_strategy(rep, decompose(rep, 0), 0.1);
  const Symmetrization s =
      symmetrize(rep, r.optimal_povm->to_povm(), *r.optimal_input);
  EXPECT_LT(max_abs(s.povm.seed() - r.optimal_povm->seed()), 1e-10);
}

TEST(Symmetrize, AlwaysGuessIdentity) {
  const ProjectiveRep rep = make_projective_rep(
      FiniteGroup::cyclic(2), {CMatrix::Identity(2, 2), testing::sigma_x()});
  const CMatrix zero = CMatrix::Zero(2, 2);
  const Povm povm({zero, CMatrix::Identity(2, 2), zero});
  CVector phi(2);
  phi << 1, 0;
  const Symmetrization s = symmetrize(rep, povm, InputState::pure(phi));
  // Guessing the identity element is right with probability 1/|G|.
  EXPECT_NEAR(s.before.success, 0.5, 1e-15);
  EXPECT_NEAR(s.after.success, 0.5, 1e-12);
  EXPECT_NEAR(s.after.error, 0.5, 1e-12);
  EXPECT_LT(max_abs(s.povm.seed() - 0.5 * CMatrix::Identity(2, 2)), 1e-12);
}

TEST(Symmetrize, PreservesProbabilitiesForRandomPovms) {
  for (const ProjectiveRep& rep : sample_reps()) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      Rng rng = derived_rng(41, t);
      const Povm povm(random_povm(rep.dimension(),
                                  static_cast<std::size_t>(rep.order()) + 1, rng));
      const InputState input =
          InputState::mixed(random_density(rep.dimension(), 1 + t % 3, rng));
      const Symmetrization s = symmetrize(rep, povm, input);
      EXPECT_NEAR(s.before.success, s.after.success, 1e-10);
      EXPECT_NEAR(s.before.error, s.after.error, 1e-10);
      EXPECT_LE(s.povm.covariance_residual(rep), 1e-10);
    }
  }
}

TEST(Symmetrize, WrongOutcomeCount) {
  const ProjectiveRep rep = testing::pauli_rep();
  Rng rng = derived_rng(42, 0);
  const Povm povm(random_povm(2, 3, rng));
  CVector phi(2);
  phi << 1, 0;
  EXPECT_THROW(symmetrize(rep, povm, InputState::pure(phi)), Error);
}

TEST(KeyInequality, IrreducibleIdentityCase) {
  const ProjectiveRep rep = testing::pauli_rep();
  const CMatrix sum = group_sum(rep, CMatrix::Identity(2, 2));
  const CMatrix lhs = 0.5 * sum - CMatrix::Identity(2, 2);
  EXPECT_LT(max_abs(lhs - CMatrix::Identity(2, 2)), 1e-12);
}

TEST(KeyInequality, HoldsWithEqualityWitness) {
  for (const ProjectiveRep& rep : sample_reps()) {
    const KeyInequalityReport r = verify_key_inequality(rep, decompose(rep, 0), 100, 3);
    EXPECT_TRUE(r.passed);
    EXPECT_EQ(r.trials, 100);
    EXPECT_GE(r.worst_normalized, -1e-8);
    EXPECT_NEAR(r.equality_min_eig, 0.0, 1e-8);
    EXPECT_NEAR(r.equality_expectation, 0.0, 1e-8);
  }
}

TEST(KeyInequality, DirectCheckOnColorCoding) {
  const ProjectiveRep rep = *color_coding(3, 2).rep;
  const double k = to_double(kappa(decompose(rep, 0)).kappa);
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng = derived_rng(43, t);
    const CMatrix m = random_ginibre(rep.dimension(), 1 + t % 8, rng);
    const CMatrix e = m * m.adjoint();
    EXPECT_GE(min_eig(k * group_sum(rep, e) - e), -1e-8 * max_abs(e));
  }
}

TEST(Ancilla, ExtendMultipliesMultiplicities) {
  const ProjectiveRep rep = testing::pauli_rep();
  EXPECT_EQ(max_abs(ancilla_extend(rep, 1)[3] - rep[3]), 0.0);
  const std::vector<IrrepSignature> s =
      multiplicity_signature(decompose(ancilla_extend(rep, 2), 0));
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].dimension, 2);
  EXPECT_EQ(s[0].multiplicity, 2);
  EXPECT_EQ(kappa(decompose(ancilla_extend(*superdense(3).rep, 3), 0)).kappa, 1);
}

TEST(Ancilla, MinimalPerfectAncilla) {
  for (int d = 2; d <= 4; ++d) {
    const AncillaBound b = minimal_perfect_ancilla(decompose(*superdense(d).rep, 0));
    EXPECT_EQ(b.r_star, d);
    EXPECT_TRUE(b.perfect);
  }
  const AncillaBound ab = minimal_perfect_ancilla(decompose(*phase_shift(5, 2).rep, 0));
  EXPECT_EQ(ab.r_star, 1);
  EXPECT_FALSE(ab.perfect);
  const AncillaBound cc = minimal_perfect_ancilla(decompose(*color_coding(4, 2).rep, 0));
  EXPECT_EQ(cc.r_star, 2);
}

TEST(Ancilla, KappaPrimeLaws) {
  for (const ProjectiveRep& rep : sample_reps()) {
    const IrrepDecomposition dec = decompose(rep, 0);
    const KappaSummary s = kappa(dec);
    const int r_star = minimal_perfect_ancilla(s).r_star;
    Rational prev = s.kappa;
    for (int r = 1; r <= 6; ++r) {
      const Rational kr = s.kappa_prime(r);
      EXPECT_LE(s.kappa, kr);
      EXPECT_LE(kr, s.kappa_ancilla);
      EXPECT_LE(s.kappa_ancilla, 1);
      EXPECT_GE(kr, prev);
      if (r >= r_star) EXPECT_EQ(kr, s.kappa_ancilla);
      prev = kr;
    }
    EXPECT_EQ(s.kappa_ancilla * rep.order(), span_rank(rep));
  }
}

TEST(Ancilla, ExtendedEngineMatchesKappaPrime) {
  const ProjectiveRep rep = *color_coding(3, 2).rep;
  const KappaSummary s = kappa(decompose(rep, 0));
  for (int r = 1; r <= 3; ++r) {
    EXPECT_EQ(kappa(decompose(ancilla_extend(rep, r), 0)).kappa, s.kappa_prime(r));
  }
}

}  // namespace
}  // namespace margindisc
