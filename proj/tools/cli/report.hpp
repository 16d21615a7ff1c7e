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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "margindisc/margin_result.hpp"
#include "margindisc/oracle.hpp"
#include "margindisc/rational.hpp"

namespace margindisc::cli {

struct KappaReport {
  int group_order = 1;
  std::vector<IrrepSignature> blocks;
  Rational kappa;
  Rational kappa_ancilla;
  /// kappa'(r) for the ancilla dimensions that were asked about.
  std::vector<std::pair<int, Rational>> kappa_prime;
  std::string r_star = "1";  // decimal, may exceed 64 bits
  bool perfect_with_ancilla = false;
  /// Where the numbers came from: "engine" or "closed-form".
  std::string source = "engine";
  /// Engine and closed form agree exactly, when both were computed.
  std::optional<bool> matches_closed_form;

  bool operator==(const KappaReport&) const = default;
};

struct OracleSummary {
  double success = 0.0;
  double error = 0.0;
  double margin_residual = 0.0;
  double completeness_residual = 0.0;
  double psd_residual = 0.0;
  std::optional<double> analytic;
  std::optional<double> gap;
  std::optional<double> mixed_best;
  bool certified = false;
  int restarts = 0;
  int iterations = 0;

  bool operator==(const OracleSummary&) const = default;
};

struct RunReport {
  std::string problem;  // two-unitary, group, catalog
  std::string label;
  double margin = 0.0;
  int ancilla = 1;
  double p_max = 0.0;
  std::optional<Rational> p_max_exact;
  std::string domain;
  double m_c = 0.0;
  std::optional<Rational> m_c_exact;
  std::optional<double> m_c_prime;
  std::optional<double> s_min;
  std::optional<KappaReport> kappa;
  std::map<std::string, double> witness_residuals;
  std::map<std::string, double> checks;  // verify / theorem results
  std::optional<OracleSummary> oracle;
  double seconds = 0.0;
  std::uint64_t seed = 0;

  bool operator==(const RunReport&) const = default;
};

OracleSummary summarize(const OracleReport& report, int iterations);

nlohmann::json to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& doc);

/// [num, den] with integers when they fit in 64 bits, decimal strings
/// otherwise.
nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& v);

std::string format_report(const RunReport& report, const std::string& format);

}  // namespace margindisc::cli
