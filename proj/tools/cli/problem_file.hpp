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

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "margindisc/catalog.hpp"
#include "margindisc/group.hpp"
#include "margindisc/two_unitary.hpp"

namespace margindisc::cli {

enum class ProblemKind { kTwoUnitary, kGroupRep, kCatalog };
std::string_view to_string(ProblemKind kind);

struct CatalogRef {
  Family family = Family::kPhaseShift;
  int k = 0;
  int n = 1;
  int d = 0;
};

struct ProblemFile {
  ProblemKind kind = ProblemKind::kTwoUnitary;
  std::optional<double> margin;
  std::optional<UnitaryPair> pair;      // two_unitary
  std::optional<ProjectiveRep> rep;     // group_rep, or a built catalog rep
  std::optional<CatalogRef> catalog;    // catalog
  std::optional<RepValidation> validation;
  nlohmann::json options = nlohmann::json::object();
};

/// Parses and validates a problem document. Throws SchemaError naming the
/// offending path (or line and column for syntax errors), and the core
/// validation errors prefixed with the path they came from.
ProblemFile parse_problem(std::string_view text);

CatalogProblem build_catalog(const CatalogRef& ref);

nlohmann::json complex_to_json(Complex z);
nlohmann::json matrix_to_json(const CMatrix& m);

/// group_rep document for `rep`, with an explicit factor set.
nlohmann::json group_problem_json(const ProjectiveRep& rep,
                                  std::optional<double> margin);
nlohmann::json two_unitary_problem_json(const UnitaryPair& pair,
                                        std::optional<double> margin);

}  // namespace margindisc::cli
