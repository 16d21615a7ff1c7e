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

#include "cli/report.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

#include "margindisc/error.hpp"

namespace margindisc::cli {

namespace {

using nlohmann::json;

json big_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return static_cast<std::int64_t>(v);
  }
  return v.str();
}

BigInt big_from_json(const json& v) {
  if (v.is_number_integer()) return BigInt(v.get<std::int64_t>());
  if (v.is_string()) return BigInt(v.get<std::string>());
  throw Error(ErrorCode::kSchemaError, "expected an integer");
}

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class T>
std::optional<T> optional_from(const json& doc, const char* key) {
  if (!doc.contains(key) || doc[key].is_null()) return std::nullopt;
  return doc[key].get<T>();
}

json kappa_to_json(const KappaReport& k) {
  json blocks = json::array();
  for (const IrrepSignature& b : k.blocks) {
    blocks.push_back(json::array({b.dimension, b.multiplicity}));
  }
  json prime = json::array();
  for (const auto& [r, v] : k.kappa_prime) {
    prime.push_back({{"r", r}, {"value", rational_to_json(v)},
                     {"float", to_double(v)}});
  }
  json out = {{"group_order", k.group_order},
              {"blocks", std::move(blocks)},
              {"kappa", rational_to_json(k.kappa)},
              {"kappa_float", to_double(k.kappa)},
              {"kappaA", rational_to_json(k.kappa_ancilla)},
              {"kappaA_float", to_double(k.kappa_ancilla)},
              {"kappa_prime", std::move(prime)},
              {"r_star", k.r_star},
              {"perfect_with_ancilla", k.perfect_with_ancilla},
              {"source", k.source}};
  out["matches_closed_form"] = optional_json(k.matches_closed_form);
  return out;
}

KappaReport kappa_from_json(const json& v) {
  KappaReport k;
  k.group_order = v.at("group_order").get<int>();
  for (const json& b : v.at("blocks")) {
    k.blocks.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
  }
  k.kappa = rational_from_json(v.at("kappa"));
  k.kappa_ancilla = rational_from_json(v.at("kappaA"));
  for (const json& p : v.at("kappa_prime")) {
    k.kappa_prime.emplace_back(p.at("r").get<int>(),
                               rational_from_json(p.at("value")));
  }
  k.r_star = v.at("r_star").get<std::string>();
  k.perfect_with_ancilla = v.at("perfect_with_ancilla").get<bool>();
  k.source = v.at("source").get<std::string>();
  k.matches_closed_form = optional_from<bool>(v, "matches_closed_form");
  return k;
}

json oracle_to_json(const OracleSummary& o) {
  return {{"success", o.success},
          {"error", o.error},
          {"margin_residual", o.margin_residual},
          {"completeness_residual", o.completeness_residual},
          {"psd_residual", o.psd_residual},
          {"analytic", optional_json(o.analytic)},
          {"gap", optional_json(o.gap)},
          {"mixed_best", optional_json(o.mixed_best)},
          {"certified", o.certified},
          {"restarts", o.restarts},
          {"iterations", o.iterations}};
}

OracleSummary oracle_from_json(const json& v) {
  OracleSummary o;
  o.success = v.at("success").get<double>();
  o.error = v.at("error").get<double>();
  o.margin_residual = v.at("margin_residual").get<double>();
  o.completeness_residual = v.at("completeness_residual").get<double>();
  o.psd_residual = v.at("psd_residual").get<double>();
  o.analytic = optional_from<double>(v, "analytic");
  o.gap = optional_from<double>(v, "gap");
  o.mixed_best = optional_from<double>(v, "mixed_best");
  o.certified = v.at("certified").get<bool>();
  o.restarts = v.at("restarts").get<int>();
  o.iterations = v.at("iterations").get<int>();
  return o;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

// Flat (key, value) view shared by the csv and table formats.
std::vector<std::pair<std::string, std::string>> flatten(const RunReport& r) {
  std::vector<std::pair<std::string, std::string>> rows;
  rows.emplace_back("problem", r.problem);
  if (!r.label.empty()) rows.emplace_back("label", r.label);
  rows.emplace_back("margin", fmt(r.margin));
  if (r.ancilla != 1) rows.emplace_back("ancilla", std::to_string(r.ancilla));
  rows.emplace_back("p_max", fmt(r.p_max));
  if (r.p_max_exact) rows.emplace_back("p_max_exact", to_string(*r.p_max_exact));
  rows.emplace_back("domain", r.domain);
  rows.emplace_back("m_c", fmt(r.m_c));
  if (r.m_c_exact) rows.emplace_back("m_c_exact", to_string(*r.m_c_exact));
  if (r.m_c_prime) rows.emplace_back("m_c_prime", fmt(*r.m_c_prime));
  if (r.s_min) rows.emplace_back("s_min", fmt(*r.s_min));
  if (r.kappa) {
    rows.emplace_back("kappa", to_string(r.kappa->kappa));
    rows.emplace_back("kappaA", to_string(r.kappa->kappa_ancilla));
    for (const auto& [k, v] : r.kappa->kappa_prime) {
      rows.emplace_back("kappa_prime(" + std::to_string(k) + ")", to_string(v));
    }
    rows.emplace_back("r_star", r.kappa->r_star);
    std::string blocks;
    for (const IrrepSignature& b : r.kappa->blocks) {
      blocks += "(" + std::to_string(b.dimension) + "," +
                std::to_string(b.multiplicity) + ")";
    }
    rows.emplace_back("blocks", blocks);
  }
  for (const auto& [k, v] : r.witness_residuals) {
    rows.emplace_back("witness." + k, fmt(v));
  }
  for (const auto& [k, v] : r.checks) rows.emplace_back("check." + k, fmt(v));
  if (r.oracle) {
    rows.emplace_back("oracle.success", fmt(r.oracle->success));
    if (r.oracle->gap) rows.emplace_back("oracle.gap", fmt(*r.oracle->gap));
    rows.emplace_back("oracle.certified", r.oracle->certified ? "true" : "false");
  }
  rows.emplace_back("seconds", fmt(r.seconds));
  rows.emplace_back("seed", std::to_string(r.seed));
  return rows;
}

}  // namespace

json rational_to_json(const Rational& r) {
  return json::array({big_to_json(boost::multiprecision::numerator(r)),
                      big_to_json(boost::multiprecision::denominator(r))});
}

Rational rational_from_json(const json& v) {
  if (!v.is_array() || v.size() != 2) {
    throw Error(ErrorCode::kSchemaError, "expected [num, den]");
  }
  return Rational(big_from_json(v[0]), big_from_json(v[1]));
}

OracleSummary summarize(const OracleReport& report, int iterations) {
  OracleSummary o;
  o.success = report.success;
  o.error = report.error;
  o.margin_residual = report.margin_residual;
  o.completeness_residual = report.completeness_residual;
  o.psd_residual = report.psd_residual;
  o.analytic = report.analytic;
  o.gap = report.gap;
  o.mixed_best = report.mixed_best;
  o.certified = report.certified;
  o.restarts = report.restarts;
  o.iterations = iterations;
  return o;
}

json to_json(const RunReport& r) {
  json out;
  out["problem"] = r.problem;
  out["label"] = r.label;
  out["margin"] = r.margin;
  out["ancilla"] = r.ancilla;
  out["p_max"] = r.p_max;
  out["p_max_exact"] =
      r.p_max_exact ? rational_to_json(*r.p_max_exact) : json(nullptr);
  out["domain"] = r.domain;
  out["m_c"] = r.m_c;
  out["m_c_exact"] = r.m_c_exact ? rational_to_json(*r.m_c_exact) : json(nullptr);
  out["m_c_prime"] = optional_json(r.m_c_prime);
  out["s_min"] = optional_json(r.s_min);
  out["kappa"] = r.kappa ? kappa_to_json(*r.kappa) : json(nullptr);
  out["witness_residuals"] = r.witness_residuals;
  out["checks"] = r.checks;
  out["oracle"] = r.oracle ? oracle_to_json(*r.oracle) : json(nullptr);
  out["timing"] = {{"seconds", r.seconds}};
  out["seed"] = r.seed;
  return out;
}

RunReport report_from_json(const json& doc) {
  try {
    RunReport r;
    r.problem = doc.at("problem").get<std::string>();
    r.label = doc.at("label").get<std::string>();
    r.margin = doc.at("margin").get<double>();
    r.ancilla = doc.at("ancilla").get<int>();
    r.p_max = doc.at("p_max").get<double>();
    if (!doc.at("p_max_exact").is_null()) {
      r.p_max_exact = rational_from_json(doc["p_max_exact"]);
    }
    r.domain = doc.at("domain").get<std::string>();
    r.m_c = doc.at("m_c").get<double>();
    if (!doc.at("m_c_exact").is_null()) {
      r.m_c_exact = rational_from_json(doc["m_c_exact"]);
    }
    r.m_c_prime = optional_from<double>(doc, "m_c_prime");
    r.s_min = optional_from<double>(doc, "s_min");
    if (!doc.at("kappa").is_null()) r.kappa = kappa_from_json(doc["kappa"]);
    r.witness_residuals =
        doc.at("witness_residuals").get<std::map<std::string, double>>();
    r.checks = doc.at("checks").get<std::map<std::string, double>>();
    if (!doc.at("oracle").is_null()) r.oracle = oracle_from_json(doc["oracle"]);
    r.seconds = doc.at("timing").at("seconds").get<double>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kSchemaError, std::string("report: ") + e.what());
  }
}

std::string format_report(const RunReport& report, const std::string& format) {
  if (format == "json") return to_json(report).dump(2) + "\n";
  const auto rows = flatten(report);
  std::ostringstream os;
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << k << ',' << v << '\n';
    return os.str();
  }
  if (format == "table") {
    std::size_t width = 0;
    for (const auto& row : rows) width = std::max(width, row.first.size());
    for (const auto& [k, v] : rows) {
      os << std::left << std::setw(static_cast<int>(width) + 2) << k << v
         << '\n';
    }
    return os.str();
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + format + "'");
}

}  // namespace margindisc::cli
