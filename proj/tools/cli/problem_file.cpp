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

#include "cli/problem_file.hpp"

#include <string>
#include <vector>

#include "margindisc/error.hpp"

namespace margindisc::cli {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, path + ": " + what);
}

const json& field(const json& obj, const std::string& key,
                  const std::string& path) {
  if (!obj.is_object()) schema(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema(path, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema(path, "expected an integer");
  return v.get<int>();
}

Complex complex_value(const json& v, const std::string& path) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    schema(path, "expected a complex number [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

CMatrix matrix_value(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) schema(path, "expected a nonempty matrix");
  const auto rows = static_cast<Eigen::Index>(v.size());
  Eigen::Index cols = -1;
  CMatrix m;
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string rp = path + "[" + std::to_string(i) + "]";
    if (!row.is_array()) schema(rp, "expected a row array");
    if (cols < 0) {
      cols = static_cast<Eigen::Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Eigen::Index>(row.size()) != cols) {
      schema(rp, "ragged matrix row");
    }
    for (Eigen::Index j = 0; j < cols; ++j) {
      m(i, j) = complex_value(row[static_cast<std::size_t>(j)],
                              rp + "[" + std::to_string(j) + "]");
    }
  }
  return m;
}

// Runs `f`, prefixing any library error with the document path.
template <class F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSchemaError) throw;
    throw Error(e.code(), path + ": " + e.what());
  }
}

UnitaryPair parse_two_unitary(const json& payload) {
  const json& us = field(payload, "unitaries", "payload");
  if (!us.is_array() || us.size() != 2) {
    schema("payload.unitaries", "expected exactly two matrices");
  }
  CMatrix u1 = matrix_value(us[0], "payload.unitaries[0]");
  CMatrix u2 = matrix_value(us[1], "payload.unitaries[1]");
  double eta1 = 0.5;
  double eta2 = 0.5;
  if (payload.contains("priors")) {
    const json& p = payload["priors"];
    if (!p.is_array() || p.size() != 2) {
      schema("payload.priors", "expected two probabilities");
    }
    eta1 = number(p[0], "payload.priors[0]");
    eta2 = number(p[1], "payload.priors[1]");
    if (eta1 < 0.0 || eta2 < 0.0 || std::abs(eta1 + eta2 - 1.0) > 1e-12) {
      throw Error(ErrorCode::kInvalidPriors,
                  "payload.priors: must be nonnegative and sum to 1 (sum is " +
                      std::to_string(eta1 + eta2) + ")");
    }
  }
  return at_path("payload.unitaries", [&] {
    return UnitaryPair(std::move(u1), std::move(u2), eta1, eta2);
  });
}

FiniteGroup parse_group(const json& g) {
  const int order = integer(field(g, "order", "payload.group"),
                            "payload.group.order");
  if (order < 1) schema("payload.group.order", "must be positive");
  const json& t = field(g, "mult_table", "payload.group");
  if (!t.is_array() || static_cast<int>(t.size()) != order) {
    schema("payload.group.mult_table", "expected order rows");
  }
  std::vector<std::vector<int>> table(static_cast<std::size_t>(order));
  for (int i = 0; i < order; ++i) {
    const json& row = t[static_cast<std::size_t>(i)];
    const std::string rp = "payload.group.mult_table[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != order) {
      schema(rp, "expected order entries");
    }
    for (int j = 0; j < order; ++j) {
      table[static_cast<std::size_t>(i)].push_back(
          integer(row[static_cast<std::size_t>(j)],
                  rp + "[" + std::to_string(j) + "]"));
    }
  }
  return at_path("payload.group.mult_table",
                 [&] { return FiniteGroup::from_table(std::move(table)); });
}

FactorSet parse_factor_set(const json& g, int order) {
  const json& f = field(g, "factor_set", "payload.group");
  if (f.is_string()) {
    if (f.get<std::string>() != "trivial") {
      schema("payload.group.factor_set", "expected \"trivial\" or a table");
    }
    return FactorSet::trivial(order);
  }
  if (!f.is_array() || static_cast<int>(f.size()) != order) {
    schema("payload.group.factor_set", "expected order rows");
  }
  std::vector<Complex> values;
  values.reserve(static_cast<std::size_t>(order) * order);
  for (int i = 0; i < order; ++i) {
    const json& row = f[static_cast<std::size_t>(i)];
    const std::string rp = "payload.group.factor_set[" + std::to_string(i) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != order) {
      schema(rp, "expected order entries");
    }
    for (int j = 0; j < order; ++j) {
      values.push_back(complex_value(row[static_cast<std::size_t>(j)],
                                     rp + "[" + std::to_string(j) + "]"));
    }
  }
  return FactorSet(order, std::move(values));
}

std::string join_failures(const RepValidation& v) {
  std::string out;
  for (const std::string& f : v.failures) {
    if (!out.empty()) out += "; ";
    out += f;
  }
  return out;
}

CatalogRef parse_catalog(const json& payload) {
  const json& fam = field(payload, "family", "payload");
  if (!fam.is_string()) schema("payload.family", "expected a string");
  const std::string name = fam.get<std::string>();
  CatalogRef ref;
  auto get = [&](const char* key) {
    return integer(field(payload, key, "payload"),
                   std::string("payload.") + key);
  };
  if (name == "phase-shift") {
    ref.family = Family::kPhaseShift;
    ref.k = get("K");
    ref.n = payload.contains("N") ? get("N") : 1;
  } else if (name == "color-coding") {
    ref.family = Family::kColorCoding;
    ref.n = get("N");
    ref.d = get("d");
  } else if (name == "superdense") {
    ref.family = Family::kSuperdense;
    ref.d = get("d");
  } else if (name == "qutrit-phase") {
    ref.family = Family::kQutritPhase;
    ref.d = get("d");
  } else {
    schema("payload.family", "unknown family '" + name + "'");
  }
  return ref;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kTwoUnitary: return "two_unitary";
    case ProblemKind::kGroupRep: return "group_rep";
    case ProblemKind::kCatalog: return "catalog";
  }
  return "unknown";
}

CatalogProblem build_catalog(const CatalogRef& ref) {
  switch (ref.family) {
    case Family::kPhaseShift: return phase_shift(ref.k, ref.n);
    case Family::kColorCoding: return color_coding(ref.n, ref.d);
    case Family::kSuperdense: return superdense(ref.d);
    case Family::kQutritPhase: return qutrit_phase_rep(ref.d);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown catalog family");
}

ProblemFile parse_problem(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line and column.
    std::size_t line = 1;
    std::size_t col = 1;
    const std::size_t stop = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::kSchemaError, "line " + std::to_string(line) +
                                             ", column " + std::to_string(col) +
                                             ": malformed JSON");
  }
  if (!doc.is_object()) schema("$", "expected an object");

  ProblemFile out;
  const json& kind = field(doc, "kind", "$");
  if (!kind.is_string()) schema("kind", "expected a string");
  const std::string k = kind.get<std::string>();
  if (doc.contains("margin")) {
    const double m = number(doc["margin"], "margin");
    if (!(m >= 0.0 && m <= 1.0)) {
      throw Error(ErrorCode::kValidationError, "margin: must lie in [0, 1]");
    }
    out.margin = m;
  }
  if (doc.contains("options")) {
    if (!doc["options"].is_object()) schema("options", "expected an object");
    out.options = doc["options"];
  }
  const json& payload = field(doc, "payload", "$");
  if (!payload.is_object()) schema("payload", "expected an object");

  if (k == "two_unitary") {
    out.kind = ProblemKind::kTwoUnitary;
    out.pair = parse_two_unitary(payload);
  } else if (k == "group_rep") {
    out.kind = ProblemKind::kGroupRep;
    const json& g = field(payload, "group", "payload");
    FiniteGroup group = parse_group(g);
    FactorSet factors = parse_factor_set(g, group.order());
    const json& ms = field(payload, "matrices", "payload");
    if (!ms.is_array() || static_cast<int>(ms.size()) != group.order()) {
      schema("payload.matrices", "expected one matrix per group element");
    }
    std::vector<CMatrix> matrices;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      matrices.push_back(
          matrix_value(ms[i], "payload.matrices[" + std::to_string(i) + "]"));
    }
    ProjectiveRep rep = at_path("payload.matrices", [&] {
      return ProjectiveRep(std::move(group), std::move(factors),
                           std::move(matrices));
    });
    RepValidation v = validate_rep(rep);
    if (!v.ok()) {
      throw Error(ErrorCode::kValidationError,
                  "payload: " + join_failures(v));
    }
    out.validation = std::move(v);
    out.rep = std::move(rep);
  } else if (k == "catalog") {
    out.kind = ProblemKind::kCatalog;
    out.catalog = parse_catalog(payload);
    CatalogProblem p =
        at_path("payload", [&] { return build_catalog(*out.catalog); });
    if (p.rep) {
      out.validation = validate_rep(*p.rep);
      out.rep = std::move(p.rep);
    }
  } else {
    schema("kind", "expected two_unitary, group_rep or catalog");
  }
  return out;
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

json group_problem_json(const ProjectiveRep& rep,
                        std::optional<double> margin) {
  json group;
  group["order"] = rep.order();
  group["mult_table"] = rep.group().table();
  if (rep.factors().is_trivial(0.0)) {
    group["factor_set"] = "trivial";
  } else {
    json f = json::array();
    for (int g = 0; g < rep.order(); ++g) {
      json row = json::array();
      for (int h = 0; h < rep.order(); ++h) {
        row.push_back(complex_to_json(rep.factors()(g, h)));
      }
      f.push_back(std::move(row));
    }
    group["factor_set"] = std::move(f);
  }
  json matrices = json::array();
  for (const CMatrix& u : rep.matrices()) matrices.push_back(matrix_to_json(u));
  json doc;
  doc["kind"] = "group_rep";
  if (margin) doc["margin"] = *margin;
  doc["payload"] = {{"group", std::move(group)},
                    {"matrices", std::move(matrices)}};
  return doc;
}

json two_unitary_problem_json(const UnitaryPair& pair,
                              std::optional<double> margin) {
  json doc;
  doc["kind"] = "two_unitary";
  if (margin) doc["margin"] = *margin;
  doc["payload"] = {
      {"unitaries",
       json::array({matrix_to_json(pair.first()), matrix_to_json(pair.second())})},
      {"priors", json::array({pair.eta1(), pair.eta2()})}};
  return doc;
}

}  // namespace margindisc::cli
