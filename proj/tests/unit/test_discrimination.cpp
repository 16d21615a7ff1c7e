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

#include <cmath>

#include "margindisc/discrimination.hpp"
#include "margindisc/error.hpp"
#include "margindisc/random.hpp"
#include "test_util.hpp"

namespace margindisc {
namespace {

using testing::diag2;

CMatrix projector(const CVector& v) { return v * v.adjoint(); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kInvalidArgument;
}

TEST(ProcessSet, Validation) {
  const CMatrix id = CMatrix::Identity(2, 2);
  EXPECT_EQ(code_of([&] { ProcessSet({id, 2.0 * id}, {0.5, 0.5}); }),
            ErrorCode::kNotUnitary);
  EXPECT_EQ(code_of([&] { ProcessSet({id, id}, {0.6, 0.6}); }),
            ErrorCode::kInvalidPriors);
  EXPECT_EQ(code_of([&] { ProcessSet({id, id}, {-0.1, 1.1}); }),
            ErrorCode::kInvalidPriors);
  EXPECT_EQ(code_of([&] { ProcessSet({id, CMatrix::Identity(3, 3)}, {0.5, 0.5}); }),
            ErrorCode::kDimensionMismatch);
  const ProcessSet u = ProcessSet::uniform({id, id, id});
  EXPECT_NEAR(u.priors()[2], 1.0 / 3, 1e-15);
}

TEST(Povm, Validation) {
  EXPECT_EQ(code_of([] { Povm({diag2(1, 0), diag2(0, 0.5)}); }),
            ErrorCode::kValidationError);
  EXPECT_EQ(code_of([] { Povm({diag2(1.5, 1), diag2(-0.5, 0)}); }),
            ErrorCode::kValidationError);
  const Povm ok({diag2(1, 0), diag2(0, 1)});
  EXPECT_LT(ok.completeness_residual(), 1e-15);
}

TEST(InputState, Validation) {
  EXPECT_EQ(code_of([] { InputState::mixed(diag2(0.7, 0.7)); }),
            ErrorCode::kValidationError);
  EXPECT_EQ(code_of([] { InputState::mixed(diag2(1.2, -0.2)); }),
            ErrorCode::kValidationError);
  CVector v(2);
  v << 1, 0;
  EXPECT_TRUE(InputState::pure(v).pure_vector().has_value());
}

TEST(Evaluate, OrthogonalOutputsPerfect) {
  const ProcessSet set({CMatrix::Identity(2, 2), testing::sigma_x()}, {0.5, 0.5});
  CVector phi(2);
  phi << 1, 0;
  const CVector o1 = phi;
  const CVector o2 = testing::sigma_x() * phi;
  const CMatrix e1 = projector(o1);
  const CMatrix e2 = projector(o2);
  const Povm povm({CMatrix::Identity(2, 2) - e1 - e2, e1, e2});
  const DiscriminationReport r = evaluate(set, InputState::pure(phi), povm);
  EXPECT_NEAR(r.success, 1.0, 1e-15);
  EXPECT_NEAR(r.error, 0.0, 1e-15);
  EXPECT_NEAR(r.inconclusive, 0.0, 1e-15);
}

TEST(Evaluate, AlwaysInconclusive) {
  const ProcessSet set({CMatrix::Identity(2, 2), testing::sigma_z()}, {0.3, 0.7});
  const CMatrix zero = CMatrix::Zero(2, 2);
  const Povm povm({CMatrix::Identity(2, 2), zero, zero});
  CVector phi(2);
  phi << 1, 0;
  const DiscriminationReport r = evaluate(set, InputState::pure(phi), povm);
  EXPECT_EQ(r.success, 0.0);
  EXPECT_EQ(r.error, 0.0);
  EXPECT_NEAR(r.inconclusive, 1.0, 1e-15);
}

TEST(Evaluate, HelstromOnPhasePair) {
  // Outputs |+> and (|0> + i|1>)/sqrt2; the Helstrom measurement projects on
  // the eigenvectors of (rho1 - rho2)/2.
  const CMatrix u2 = diag2(1.0, Complex(0, 1));
  const ProcessSet set({CMatrix::Identity(2, 2), u2}, {0.5, 0.5});
  CVector plus(2);
  plus << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
  const CVector out2 = u2 * plus;
  const CMatrix gamma = 0.5 * (projector(plus) - projector(out2));
  const HermEigen e = herm_eig(gamma);
  const CMatrix p2 = projector(e.vectors.col(0));
  const CMatrix p1 = projector(e.vectors.col(1));
  const Povm povm({CMatrix::Zero(2, 2), p1, p2});
  const DiscriminationReport r = evaluate(set, InputState::pure(plus), povm);
  const double expected = 0.5 * (1 + std::sqrt(0.5));
  EXPECT_NEAR(r.success, expected, 1e-12);
  EXPECT_NEAR(r.success, 0.853553, 1e-6);
  EXPECT_NEAR(r.error, 0.146447, 1e-6);
}

TEST(Evaluate, DimensionMismatch) {
  const ProcessSet set({CMatrix::Identity(2, 2), testing::sigma_z()}, {0.5, 0.5});
  const Povm two({diag2(1, 0), diag2(0, 1)});
  CVector phi(2);
  phi << 1, 0;
  EXPECT_EQ(code_of([&] { evaluate(set, InputState::pure(phi), two); }),
            ErrorCode::kDimensionMismatch);
}

TEST(MarginSatisfied, Examples) {
  DiscriminationReport r;
  r.error = 0.0;
  EXPECT_TRUE(margin_satisfied(r, 0.0));
  r.error = 0.2;
  EXPECT_FALSE(margin_satisfied(r, 0.1));
  r.error = 0.146447;
  EXPECT_TRUE(margin_satisfied(r, 0.146447));
  r.error = 0.1 + 2e-9;
  EXPECT_FALSE(margin_satisfied(r, 0.1));
}

TEST(Evaluate, LinearInInputAndNormalized) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    Rng rng = derived_rng(21, s);
    const Eigen::Index d = 1 + static_cast<Eigen::Index>(s % 6);
    const std::size_t n = 2 + s % 3;
    std::vector<CMatrix> us;
    for (std::size_t i = 0; i < n; ++i) us.push_back(random_unitary(d, rng));
    std::vector<double> priors(n);
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    double total = 0.0;
    for (double& p : priors) total += (p = unif(rng));
    for (double& p : priors) p /= total;
    const ProcessSet set(us, priors);
    const Povm povm(random_povm(d, n + 1, rng));
    const CMatrix r1 = random_density(d, d, rng);
    const CMatrix r2 = random_density(d, 1, rng);
    const double lambda = unif(rng);
    const auto a = evaluate(set, InputState::mixed(r1), povm);
    const auto b = evaluate(set, InputState::mixed(r2), povm);
    const auto c = evaluate(
        set, InputState::mixed(lambda * r1 + (1 - lambda) * r2), povm);
    EXPECT_NEAR(c.success, lambda * a.success + (1 - lambda) * b.success, 1e-10);
    EXPECT_NEAR(c.error, lambda * a.error + (1 - lambda) * b.error, 1e-10);
    for (const auto& r : {a, b, c}) {
      EXPECT_NEAR(r.success + r.error + r.inconclusive, 1.0, 1e-9);
      for (double p : {r.success, r.error, r.inconclusive}) {
        EXPECT_GE(p, -1e-10);
        EXPECT_LE(p, 1 + 1e-10);
      }
    }
  }
}

TEST(JointProbabilities, RowsSumToPriors) {
  Rng rng = derived_rng(22, 0);
  const ProcessSet set({random_unitary(3, rng), random_unitary(3, rng)}, {0.25, 0.75});
  const Povm povm(random_povm(3, 3, rng));
  const Eigen::MatrixXd p =
      joint_probabilities(set, InputState::mixed(random_density(3, 2, rng)), povm);
  EXPECT_NEAR(p.row(0).sum(), 0.25, 1e-12);
  EXPECT_NEAR(p.row(1).sum(), 0.75, 1e-12);
}

}  // namespace
}  // namespace margindisc
