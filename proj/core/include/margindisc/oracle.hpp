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
#include "margindisc/linalg.hpp"
#include "margindisc/two_unitary.hpp"

namespace margindisc {

struct OracleConfig {
  int restarts = 32;
  int iterations = 2000;
  double initial_step = 0.5;
  double step_decay = 0.5;  // backtracking factor
  double penalty = 50.0;    // augmented Lagrangian weight on P_x <= m
  std::uint64_t seed = 0;
  double tolerance = 1e-5;
  /// Random mixed inputs tried by optimize_full.
  int mixed_samples = 4;
  bool keep_traces = false;

  /// Throws InvalidArgument unless every field is positive.
  void validate() const;
};

struct OracleTrace {
  int restart = 0;
  int iterations = 0;
  double value = 0.0;  // after feasibility repair
  bool feasible = false;
};

struct OracleReport {
  double success = 0.0;  // best feasible P_o
  double error = 0.0;    // its P_x
  double margin = 0.0;
  double margin_residual = 0.0;        // max(0, P_x - m)
  double completeness_residual = 0.0;  // max |sum E - 1|
  double psd_residual = 0.0;           // smallest eigenvalue over elements
  std::vector<CMatrix> povm;           // E_0, E_1, ...
  CMatrix input;                       // density matrix of the best input

  std::optional<double> analytic;
  /// analytic - success; positive when the oracle stays below.
  std::optional<double> gap;
  /// Best value found from random mixed inputs (optimize_full only).
  std::optional<double> mixed_best;
  bool certified = false;
  int restarts = 0;
  std::vector<OracleTrace> traces;
};

/// Maximizes P_o over POVMs for a fixed input subject to P_x <= m.
OracleReport optimize_fixed_input(const ProcessSet& set,
                                  const InputState& input, double margin,
                                  const OracleConfig& cfg = {});

/// Joint search over pure inputs and POVMs. When `analytic` is given the
/// result is compared with it: CertificationFailure if the oracle beats it by
/// more than 10 * tolerance; `certified` if it comes within tolerance from
/// below and no sampled mixed input beats the pure optimum.
OracleReport optimize_full(const ProcessSet& set, double margin,
                           const OracleConfig& cfg = {},
                           std::optional<double> analytic = std::nullopt);

/// Certifies against the closed-form value for the pair.
OracleReport optimize_full(const UnitaryPair& pair, double margin,
                           const OracleConfig& cfg = {});

/// Certifies against the group value; the decomposition uses cfg.seed.
OracleReport optimize_full(const ProjectiveRep& rep, double margin,
                           const OracleConfig& cfg = {});

struct ScanReport {
  std::vector<double> grid;
  std::vector<double> values;
  /// Largest amount by which a value falls below the chord of its
  /// neighbours, and largest decrease between consecutive points.
  double concavity_violation = 0.0;
  double monotonicity_violation = 0.0;
  bool passed = false;
};

/// Checks discrete concavity and monotone nondecrease of `values` on a
/// sorted grid.
ScanReport check_scan(std::vector<double> grid, std::vector<double> values,
                      double tolerance);

/// Oracle values over the grid.
ScanReport concavity_scan(const UnitaryPair& pair,
                          const std::vector<double>& grid,
                          const OracleConfig& cfg = {});
ScanReport concavity_scan(const ProjectiveRep& rep,
                          const std::vector<double>& grid,
                          const OracleConfig& cfg = {});

}  // namespace margindisc
