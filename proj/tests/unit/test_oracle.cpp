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

#include "margindisc/catalog.hpp"
#include "margindisc/error.hpp"
#include "margindisc/group_discrimination.hpp"
#include "margindisc/oracle.hpp"
#include "margindisc/two_unitary.hpp"
#include "test_util.hpp"

namespace margindisc {
namespace {

using testing::diag2;
using testing::phase;

UnitaryPair quarter_pair(double eta1 = 0.5) {
  return UnitaryPair(CMatrix::Identity(2, 2),
                     diag2(1.0, phase(std::numbers::pi / 2)), eta1, 1 - eta1);
}

OracleConfig small_config() {
  OracleConfig cfg;
  cfg.restarts = 8;
  cfg.iterations = 2000;
  return cfg;
}

void expect_feasible(const OracleReport& r) {
  EXPECT_GE(r.psd_residual, -1e-8);
  EXPECT_LE(r.completeness_residual, 1e-8);
  EXPECT_LE(r.margin_residual, 1e-8);
}

TEST(OracleConfig, Validation) {
  OracleConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.restarts = 0;
  EXPECT_THROW(cfg.validate(), Error);
  cfg = OracleConfig{};
  cfg.tolerance = -1;
  EXPECT_THROW(cfg.validate(), Error);
}

TEST(FixedInput, OrthogonalOutputsUnambiguous) {
  const ProcessSet set({CMatrix::Identity(2, 2), testing::sigma_x()}, {0.5, 0.5});
  CVector phi(2);
  phi << 1, 0;
  const OracleReport r =
      optimize_fixed_input(set, InputState::pure(phi), 0.0, small_config());
  EXPECT_NEAR(r.success, 1.0, 1e-6);
  expect_feasible(r);
}

TEST(FixedInput, QuarterTurnHelstromAndUnambiguous) {
  const UnitaryPair pair = quarter_pair();
  const InputState input = InputState::pure(s_min(pair).optimal_input);
  const OracleReport one =
      optimize_fixed_input(pair.as_process_set(), input, 1.0, small_config());
  EXPECT_NEAR(one.success, (1 + std::sqrt(0.5)) / 2, 1e-6);
  const OracleReport zero =
      optimize_fixed_input(pair.as_process_set(), input, 0.0, small_config());
  EXPECT_NEAR(zero.success, 1 - std::sqrt(0.5), 1e-5);
  expect_feasible(zero);
  EXPECT_LE(zero.error, 1e-8);
}

TEST(Full, PhaseQubitLinearBranch) {
  const OracleReport r =
      optimize_full(testing::phase_qubit_rep(3), 0.2, small_config());
  ASSERT_TRUE(r.analytic.has_value());
  EXPECT_NEAR(*r.analytic, 0.4, 1e-15);
  EXPECT_NEAR(r.success, 0.4, 1e-5);
  EXPECT_TRUE(r.certified);
  expect_feasible(r);
}

TEST(Full, PauliMinimumError) {
  const OracleReport r = optimize_full(testing::pauli_rep(), 1.0, small_config());
  EXPECT_NEAR(r.success, 0.5, 1e-5);
  EXPECT_TRUE(r.certified);
  ASSERT_TRUE(r.mixed_best.has_value());
  EXPECT_LE(*r.mixed_best, r.success + 1e-5);
}

TEST(Full, QuarterTurnIntermediateMargin) {
  const OracleReport r = optimize_full(quarter_pair(), 0.05, small_config());
  const double analytic =
      std::pow(std::sqrt(0.05) + std::sqrt(1 - std::sqrt(0.5)), 2);
  EXPECT_NEAR(r.success, analytic, 1e-4);
  EXPECT_TRUE(r.certified);
  expect_feasible(r);
}

TEST(Full, UnequalPriorsAllDomains) {
  // eta = (0.2, 0.8), S = 1/2: second critical margin ~0.0158, first ~0.1382.
  const UnitaryPair pair = quarter_pair(0.2);
  for (double m : {0.0, 0.008, 0.05, 0.5}) {
    const OracleReport r = optimize_full(pair, m, small_config());
    EXPECT_NEAR(r.success, solve(pair, m).p_max, 1e-4) << m;
    EXPECT_TRUE(r.certified) << m;
  }
}

TEST(Full, RaisesWhenAnalyticValueTooLow) {
  const ProcessSet set = process_set(testing::pauli_rep());
  try {
    optimize_full(set, 1.0, small_config(), 0.3);
    FAIL() << "expected CertificationFailure";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kCertificationFailure);
  }
}

TEST(Full, DeterministicForSeed) {
  OracleConfig cfg = small_config();
  cfg.restarts = 2;
  cfg.iterations = 300;
  const OracleReport a = optimize_full(quarter_pair(), 0.1, cfg);
  const OracleReport b = optimize_full(quarter_pair(), 0.1, cfg);
  EXPECT_EQ(a.success, b.success);
  EXPECT_EQ(a.error, b.error);
}

TEST(Full, TracesKeptOnRequest) {
  OracleConfig cfg = small_config();
  cfg.restarts = 2;
  cfg.iterations = 200;
  cfg.keep_traces = true;
  const ProcessSet set = quarter_pair().as_process_set();
  CVector phi(2);
  phi << 1, 0;
  const OracleReport r = optimize_fixed_input(set, InputState::pure(phi), 0.1, cfg);
  EXPECT_EQ(r.traces.size(), 2u);
}

TEST(Scan, CheckScanDetectsViolations) {
  EXPECT_TRUE(check_scan({0, 0.5, 1}, {0, 0.5, 0.7}, 1e-9).passed);
  const ScanReport convex = check_scan({0, 0.5, 1}, {0, 0.1, 1}, 1e-9);
  EXPECT_FALSE(convex.passed);
  EXPECT_NEAR(convex.concavity_violation, 0.4, 1e-12);
  const ScanReport down = check_scan({0, 0.5, 1}, {0, 0.5, 0.4}, 1e-9);
  EXPECT_FALSE(down.passed);
  EXPECT_NEAR(down.monotonicity_violation, 0.1, 1e-12);
}

TEST(Scan, PerfectPairConstantOne) {
  const UnitaryPair pair(CMatrix::Identity(2, 2), testing::sigma_z());
  const ScanReport r = concavity_scan(pair, {0.0, 0.5, 1.0}, small_config());
  for (double v : r.values) EXPECT_NEAR(v, 1.0, 1e-5);
  EXPECT_TRUE(r.passed);
}

TEST(Scan, IdenticalPairPlateau) {
  const UnitaryPair pair(testing::sigma_x(), testing::sigma_x());
  const ScanReport r = concavity_scan(pair, {0.5, 0.75, 1.0}, small_config());
  for (double v : r.values) EXPECT_NEAR(v, 0.5, 1e-5);
}

TEST(Scan, GroupKinkAtCriticalMargin) {
  const ProjectiveRep rep = testing::phase_qubit_rep(3);
  const double mc = 1.0 / 3;
  const std::vector<double> grid = {0.0, mc / 2, mc, 1.0};
  const ScanReport r = concavity_scan(rep, grid, small_config());
  const std::vector<double> expected = {0.0, 1.0 / 3, 2.0 / 3, 2.0 / 3};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_NEAR(r.values[i], expected[i], 1e-5);
  }
  EXPECT_TRUE(r.passed);
}

}  // namespace
}  // namespace margindisc
