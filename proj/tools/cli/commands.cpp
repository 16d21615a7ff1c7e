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

#include "cli/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cli/problem_file.hpp"
#include "cli/report.hpp"
#include "margindisc/catalog.hpp"
#include "margindisc/group_discrimination.hpp"
#include "margindisc/isotypic.hpp"
#include "margindisc/oracle.hpp"
#include "margindisc/random.hpp"
#include "margindisc/two_unitary.hpp"

namespace margindisc::cli {

namespace {

// Largest representation dimension the engine decomposes on request.
constexpr Eigen::Index kEngineDimension = 81;

struct Options {
  std::string file;
  std::optional<double> margin;
  int ancilla = 1;
  int theorem_trials = 100;
  bool verify_theorem = false;
  bool oracle = false;
  int oracle_restarts = 32;
  int oracle_iterations = 2000;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string emit_file;
  int trials = 100;
  // catalog parameters
  int k = 0;
  int n = 1;
  int d = 0;
  bool curve = false;
  int max_n = 20;
};

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("MARGINDISC_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidArgument,
                  "MARGINDISC_SEED is not an unsigned integer");
    }
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double resolve_margin(const Options& o, const ProblemFile* pf) {
  if (o.margin) return *o.margin;
  if (pf && pf->margin) return *pf->margin;
  throw Error(ErrorCode::kSchemaError,
              "margin: required (pass --margin or set it in the file)");
}

void check_margin(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw Error(ErrorCode::kValidationError, "margin: must lie in [0, 1]");
  }
}

OracleConfig oracle_config(const Options& o, std::uint64_t seed) {
  OracleConfig cfg;
  cfg.restarts = o.oracle_restarts;
  cfg.iterations = o.oracle_iterations;
  cfg.seed = seed;
  return cfg;
}

KappaReport kappa_report(const KappaSummary& s, int ancilla,
                         const std::string& source) {
  KappaReport k;
  k.group_order = s.group_order;
  k.blocks = s.blocks;
  k.kappa = s.kappa;
  k.kappa_ancilla = s.kappa_ancilla;
  const AncillaBound bound = minimal_perfect_ancilla(s);
  k.r_star = std::to_string(bound.r_star);
  k.perfect_with_ancilla = bound.perfect;
  k.kappa_prime.emplace_back(ancilla, s.kappa_prime(ancilla));
  if (bound.r_star != ancilla) {
    k.kappa_prime.emplace_back(bound.r_star, s.kappa_prime(bound.r_star));
  }
  k.source = source;
  return k;
}

// Decomposes, solves and checks a representation (already ancilla-extended
// when r > 1); `base` is the representation before extension.
RunReport solve_rep(const ProjectiveRep& base, int ancilla, double margin,
                    std::uint64_t seed, const Options& o) {
  check_margin(margin);
  const IrrepDecomposition base_dec = decompose(base, seed);
  const KappaSummary base_kappa = kappa(base_dec);

  const ProjectiveRep rep =
      ancilla > 1 ? ancilla_extend(base, ancilla) : base;
  const IrrepDecomposition dec =
      ancilla > 1 ? decompose(rep, seed) : base_dec;
  const MarginResult result = optimal_strategy(rep, dec, margin);

  RunReport r;
  r.margin = margin;
  r.ancilla = ancilla;
  r.p_max = result.p_max;
  r.p_max_exact = result.p_max_exact;
  r.domain = std::string(to_string(result.domain));
  r.m_c = result.critical_margin;
  r.m_c_exact = result.kappa->critical_margin();
  r.kappa = kappa_report(base_kappa, ancilla, "engine");
  r.seed = seed;

  const DecompositionCheck check = check_decomposition(rep, dec);
  r.witness_residuals["transformation"] = check.transformation;
  r.witness_residuals["orthogonality"] = check.orthogonality;
  r.witness_residuals["reconstruction"] = check.reconstruction;
  if (ancilla > 1) {
    r.checks["ancilla_kappa_mismatch"] = to_double(
        abs(result.kappa->kappa - base_kappa.kappa_prime(ancilla)));
  }
  if (result.witness) {
    r.witness_residuals["success_gap"] =
        std::abs(result.witness->success - result.p_max);
    r.witness_residuals["margin_excess"] =
        std::max(0.0, result.witness->error - margin);
  }
  r.witness_residuals["inconclusive_min_eig"] =
      result.optimal_povm->inconclusive_min_eig();
  r.witness_residuals["covariance"] =
      result.optimal_povm->covariance_residual(rep);

  if (o.verify_theorem) {
    const KeyInequalityReport key =
        verify_key_inequality(rep, dec, o.theorem_trials, seed);
    r.checks["key_trials"] = key.trials;
    r.checks["key_worst_normalized"] = key.worst_normalized;
    r.checks["key_equality_min_eig"] = key.equality_min_eig;
    r.checks["key_equality_expectation"] = key.equality_expectation;
    r.checks["key_passed"] = key.passed ? 1.0 : 0.0;
    if (!key.passed) {
      throw Error(ErrorCode::kCertificationFailure,
                  "key inequality violated: " +
                      std::to_string(key.worst_normalized));
    }
  }
  if (o.oracle) {
    const OracleConfig cfg = oracle_config(o, seed);
    const OracleReport rep_oracle =
        optimize_full(process_set(rep), margin, cfg, result.p_max);
    r.oracle = summarize(rep_oracle, cfg.iterations);
  }
  return r;
}

// An oracle that stays below the analytic value is a convergence note, not a
// failure; exceeding it already raised CertificationFailure.
int emit(const RunReport& r, const Options& o, std::ostream& out,
         std::ostream& err) {
  out << format_report(r, o.format);
  if (r.oracle && !r.oracle->certified) {
    err << "note: oracle stopped " << r.oracle->gap.value_or(0.0)
        << " below the analytic value\n";
  }
  return 0;
}

int cmd_two_unitary(const Options& o, std::ostream& out,
                    std::ostream& err) {
  const Timer timer;
  const ProblemFile pf = parse_problem(read_file(o.file));
  if (pf.kind != ProblemKind::kTwoUnitary) {
    throw Error(ErrorCode::kSchemaError, "kind: expected two_unitary");
  }
  const double m = resolve_margin(o, &pf);
  check_margin(m);
  const std::uint64_t seed = resolve_seed(o);
  const UnitaryPair& pair = *pf.pair;
  const MarginResult result = solve(pair, m);
  const SminResult sm = s_min(pair);

  RunReport r;
  r.problem = "two-unitary";
  r.margin = m;
  r.p_max = result.p_max;
  r.domain = std::string(to_string(result.domain));
  r.m_c = result.critical_margin;
  r.m_c_prime = result.critical_margin_prime;
  r.s_min = sm.s_min;
  r.seed = seed;
  const CVector& phi = *result.optimal_input->pure_vector();
  const Complex overlap =
      phi.dot(pair.first().adjoint() * pair.second() * phi);
  r.witness_residuals["input_norm"] = std::abs(phi.squaredNorm() - 1.0);
  r.witness_residuals["overlap"] = std::abs(std::norm(overlap) - sm.s_min);
  r.witness_residuals["certificate"] = std::abs(sm.certificate() - sm.s_min);
  if (o.oracle) {
    const OracleConfig cfg = oracle_config(o, seed);
    r.oracle = summarize(optimize_full(pair, m, cfg), cfg.iterations);
  }
  r.seconds = timer.seconds();
  return emit(r, o, out, err);
}

int cmd_group(const Options& o, std::ostream& out,
                    std::ostream& err) {
  const Timer timer;
  const ProblemFile pf = parse_problem(read_file(o.file));
  if (pf.kind == ProblemKind::kTwoUnitary) {
    throw Error(ErrorCode::kSchemaError, "kind: expected group_rep or catalog");
  }
  if (!pf.rep) {
    throw Error(ErrorCode::kCapExceeded,
                "representation too large to build; use the catalog command");
  }
  const double m = resolve_margin(o, &pf);
  const std::uint64_t seed = resolve_seed(o);
  RunReport r = solve_rep(*pf.rep, o.ancilla, m, seed, o);
  r.problem = "group";
  if (pf.catalog) r.label = build_catalog(*pf.catalog).label();
  r.seconds = timer.seconds();
  return emit(r, o, out, err);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path);
  f << text;
}

int cmd_catalog(const CatalogRef& ref, const Options& o, std::ostream& out,
                std::ostream& err) {
  const Timer timer;
  if (ref.family == Family::kColorCoding && o.curve) {
    out << curve_csv(color_coding_curve(o.max_n));
    return 0;
  }
  const double m = resolve_margin(o, nullptr);
  check_margin(m);
  if (o.ancilla < 1) {
    throw Error(ErrorCode::kInvalidArgument, "--ancilla must be >= 1");
  }
  const std::uint64_t seed = resolve_seed(o);
  const CatalogProblem p = build_catalog(ref);

  if (!o.emit_file.empty()) {
    if (!p.rep) {
      throw Error(ErrorCode::kCapExceeded, "representation was not built");
    }
    write_text(o.emit_file, group_problem_json(*p.rep, m).dump(2) + "\n");
  }

  RunReport r;
  const bool engine =
      p.rep && p.rep->dimension() * o.ancilla <= kEngineDimension;
  if (engine) {
    r = solve_rep(*p.rep, o.ancilla, m, seed, o);
    r.kappa->matches_closed_form =
        r.kappa->kappa == p.kappa && r.kappa->kappa_ancilla == p.kappa_ancilla;
  } else {
    const KappaSummary s = p.summary();
    const Rational k = s.kappa_prime(o.ancilla);
    const GroupPmax best = p_max(k, m);
    r.margin = m;
    r.ancilla = o.ancilla;
    r.p_max = best.probability;
    r.p_max_exact = best.exact;
    r.domain = std::string(to_string(best.domain));
    r.m_c = to_double(1 - k);
    r.m_c_exact = 1 - k;
    r.kappa = kappa_report(s, o.ancilla, "closed-form");
    r.seed = seed;
  }
  r.kappa->r_star = p.r_star.str();
  r.problem = "catalog";
  r.label = p.label();
  r.seconds = timer.seconds();
  return emit(r, o, out, err);
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Timer timer;
  if (o.trials < 1) throw Error(ErrorCode::kInvalidArgument, "--trials < 1");
  const ProblemFile pf = parse_problem(read_file(o.file));
  const std::uint64_t seed = resolve_seed(o);
  RunReport r;
  r.problem = "verify";
  r.seed = seed;
  bool ok = true;

  if (pf.kind == ProblemKind::kTwoUnitary) {
    const double m = pf.margin.value_or(1.0);
    const UnitaryPair& pair = *pf.pair;
    const MarginResult result = solve(pair, m);
    const SminResult sm = s_min(pair);
    r.margin = m;
    r.p_max = result.p_max;
    r.domain = std::string(to_string(result.domain));
    r.m_c = result.critical_margin;
    r.m_c_prime = result.critical_margin_prime;
    r.s_min = sm.s_min;
    r.checks["certificate_residual"] = std::abs(sm.certificate() - sm.s_min);
    double worst = 0.0;
    for (int a = 2; a <= 3; ++a) {
      worst = std::max(worst,
                       std::abs(s_min(pair.with_ancilla(a)).s_min - sm.s_min));
    }
    r.checks["ancilla_invariance"] = worst;
    ok = worst <= 1e-10 && r.checks["certificate_residual"] <= 1e-10;
  } else {
    if (!pf.rep) {
      throw Error(ErrorCode::kCapExceeded, "representation was not built");
    }
    const ProjectiveRep& rep = *pf.rep;
    const IrrepDecomposition dec = decompose(rep, seed);
    const DecompositionCheck check = check_decomposition(rep, dec);
    r.witness_residuals["transformation"] = check.transformation;
    r.witness_residuals["orthogonality"] = check.orthogonality;
    r.witness_residuals["reconstruction"] = check.reconstruction;

    const KeyInequalityReport key =
        verify_key_inequality(rep, dec, o.trials, seed);
    r.checks["key_worst_normalized"] = key.worst_normalized;
    r.checks["key_equality_min_eig"] = key.equality_min_eig;
    r.checks["key_equality_expectation"] = key.equality_expectation;
    ok = ok && key.passed;

    double sym = 0.0;
    if (rep.order() >= 2) {
      for (int t = 0; t < o.trials; ++t) {
        Rng rng = derived_rng(seed ^ 0x73796d6dULL, static_cast<std::uint64_t>(t));
        const Povm povm(random_povm(rep.dimension(),
                                    static_cast<std::size_t>(rep.order()) + 1,
                                    rng));
        const InputState input =
            t % 2 == 0 ? InputState::pure(random_unit_vector(rep.dimension(), rng))
                       : InputState::mixed(random_density(
                             rep.dimension(), rep.dimension(), rng));
        const Symmetrization s = symmetrize(rep, povm, input);
        sym = std::max({sym, std::abs(s.before.success - s.after.success),
                        std::abs(s.before.error - s.after.error)});
      }
    }
    r.checks["symmetrization"] = sym;
    ok = ok && sym <= 1e-10;

    const KappaSummary summary = kappa(dec);
    const double mc = to_double(summary.critical_margin());
    double success_gap = 0.0;
    double margin_excess = 0.0;
    std::vector<double> margins = {0.0, 0.5 * mc, mc, 1.0};
    if (pf.margin) margins.push_back(*pf.margin);
    for (double m : margins) {
      const MarginResult res = optimal_strategy(rep, dec, m);
      if (!res.witness) continue;
      success_gap = std::max(success_gap,
                             std::abs(res.witness->success - res.p_max));
      margin_excess = std::max(margin_excess, res.witness->error - m);
    }
    r.witness_residuals["success_gap"] = success_gap;
    r.witness_residuals["margin_excess"] = std::max(0.0, margin_excess);
    ok = ok && success_gap <= 1e-8 && margin_excess <= 1e-8;

    const double m = pf.margin.value_or(1.0);
    const MarginResult res = optimal_strategy(rep, dec, m);
    r.margin = m;
    r.p_max = res.p_max;
    r.p_max_exact = res.p_max_exact;
    r.domain = std::string(to_string(res.domain));
    r.m_c = res.critical_margin;
    r.m_c_exact = summary.critical_margin();
    r.kappa = kappa_report(summary, 1, "engine");
  }
  r.checks["passed"] = ok ? 1.0 : 0.0;
  r.seconds = timer.seconds();
  out << format_report(r, o.format);
  if (!ok) {
    throw Error(ErrorCode::kCertificationFailure, "verification failed");
  }
  return 0;
}

void add_format(CLI::App* app, Options& o) {
  app->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
}

void add_seed(CLI::App* app, Options& o) {
  app->add_option("--seed", o.seed,
                  "Seed for randomized steps (default: $MARGINDISC_SEED or 0)");
}

void add_solver_flags(CLI::App* app, Options& o) {
  app->add_option("--margin", o.margin, "Error margin in [0, 1]");
  app->add_flag("--oracle", o.oracle, "Certify with the numerical oracle");
  app->add_option("--oracle-restarts", o.oracle_restarts)
      ->check(CLI::PositiveNumber);
  app->add_option("--oracle-iterations", o.oracle_iterations)
      ->check(CLI::PositiveNumber);
  add_seed(app, o);
  add_format(app, o);
}

void add_group_flags(CLI::App* app, Options& o) {
  app->add_option("--ancilla", o.ancilla, "Ancilla dimension r")
      ->check(CLI::PositiveNumber);
  app->add_option("--verify-theorem", o.theorem_trials,
                  "Check the key inequality on T random operators")
      ->expected(0, 1)
      ->default_str("100")
      ->each([&o](const std::string&) { o.verify_theorem = true; });
}

}  // namespace

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNoConvergence:
    case ErrorCode::kDegenerateDraw:
    case ErrorCode::kAlignmentFailure:
    case ErrorCode::kWitnessMismatch:
      return 2;
    case ErrorCode::kCertificationFailure:
      return 3;
    default:
      return 1;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Unitary process discrimination with an error margin",
               "margindisc"};
  app.require_subcommand(1);
  Options o;

  auto* two = app.add_subcommand("two-unitary", "Solve a pair of unitaries");
  two->add_option("--file", o.file, "Problem file")->required();
  add_solver_flags(two, o);

  auto* group = app.add_subcommand("group", "Solve a group-covariant set");
  group->add_option("--file", o.file, "Problem file")->required();
  add_solver_flags(group, o);
  add_group_flags(group, o);

  auto* cat = app.add_subcommand("catalog", "Built-in problem families");
  cat->require_subcommand(1);
  CatalogRef ref;
  auto* ps = cat->add_subcommand("phase-shift", "diag(1, e^{2 pi i k/K})^N");
  ps->add_option("--K", o.k)->required();
  ps->add_option("--N", o.n);
  auto* cc = cat->add_subcommand("color-coding", "S_N on (C^d)^N");
  cc->add_option("--N", o.n)->required();
  cc->add_option("--d", o.d);
  cc->add_flag("--curve", o.curve, "Emit kappa / kappaA curve data as CSV");
  cc->add_option("--max-N", o.max_n);
  auto* sd = cat->add_subcommand("superdense", "X^k Z^l on C^d");
  sd->add_option("--d", o.d)->required();
  auto* qp = cat->add_subcommand("qutrit-phase", "diag(1, w^k, w^l)");
  qp->add_option("--d", o.d)->required();
  for (CLI::App* sub : {ps, cc, sd, qp}) {
    add_solver_flags(sub, o);
    add_group_flags(sub, o);
    sub->add_option("--emit-file", o.emit_file,
                    "Also write the representation as a group_rep file");
  }

  auto* ver = app.add_subcommand("verify", "Run the consistency checks");
  ver->add_option("--file", o.file, "Problem file")->required();
  ver->add_option("--trials", o.trials, "Random trials per check");
  add_seed(ver, o);
  add_format(ver, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*two) return cmd_two_unitary(o, out, err);
    if (*group) return cmd_group(o, out, err);
    if (*ver) return cmd_verify(o, out);
    if (*cat) {
      if (*ps) {
        ref.family = Family::kPhaseShift;
        ref.k = o.k;
        ref.n = o.n;
      } else if (*cc) {
        ref.family = Family::kColorCoding;
        ref.n = o.n;
        ref.d = o.d;
        if (!o.curve && o.d == 0) {
          throw Error(ErrorCode::kInvalidArgument, "--d is required");
        }
      } else if (*sd) {
        ref.family = Family::kSuperdense;
        ref.d = o.d;
      } else {
        ref.family = Family::kQutritPhase;
        ref.d = o.d;
      }
      return cmd_catalog(ref, o, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace margindisc::cli
