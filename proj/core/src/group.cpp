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

#include "margindisc/group.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "margindisc/error.hpp"
#include "margindisc/random.hpp"

namespace margindisc {

namespace {

constexpr int kExhaustiveOrder = 64;
constexpr int kSampledChecks = 10000;
constexpr std::uint64_t kCheckSeed = 0x5eedc0ffeeULL;

// Calls f(g, h, k) for all triples, or for a fixed pseudo-random sample when
// the group is large.
template <typename F>
void for_triples(int order, F&& f) {
  if (order <= kExhaustiveOrder) {
    for (int g = 0; g < order; ++g)
      for (int h = 0; h < order; ++h)
        for (int k = 0; k < order; ++k) f(g, h, k);
    return;
  }
  Rng rng(kCheckSeed);
  std::uniform_int_distribution<int> pick(0, order - 1);
  for (int s = 0; s < kSampledChecks; ++s) f(pick(rng), pick(rng), pick(rng));
}

template <typename F>
void for_pairs(int order, F&& f) {
  if (order <= kExhaustiveOrder) {
    for (int g = 0; g < order; ++g)
      for (int h = 0; h < order; ++h) f(g, h);
    return;
  }
  Rng rng(kCheckSeed + 1);
  std::uniform_int_distribution<int> pick(0, order - 1);
  for (int s = 0; s < kSampledChecks; ++s) f(pick(rng), pick(rng));
}

int permutation_rank(const std::vector<int>& perm) {
  // Lehmer code; lexicographic rank among permutations of the same size.
  const int n = static_cast<int>(perm.size());
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

std::vector<int> compose(const std::vector<int>& g, const std::vector<int>& h) {
  std::vector<int> out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = g[h[x]];
  return out;
}

}  // namespace

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw Error(ErrorCode::kValidationError, "empty group table");
  FiniteGroup group;
  group.order_ = n;
  group.table_.reserve(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(table[g].size()) != n) {
      throw Error(ErrorCode::kValidationError,
                  "group table row " + std::to_string(g) + " has wrong length");
    }
    for (int h = 0; h < n; ++h) {
      const int gh = table[g][h];
      if (gh < 0 || gh >= n) {
        throw Error(ErrorCode::kValidationError,
                    "group table entry out of range at [" + std::to_string(g) +
                        "][" + std::to_string(h) + "]");
      }
      group.table_.push_back(gh);
    }
  }
  for (int g = 0; g < n; ++g) {
    if (group.multiply(0, g) != g || group.multiply(g, 0) != g) {
      throw Error(ErrorCode::kValidationError,
                  "element 0 is not the identity (column/row " +
                      std::to_string(g) + ")");
    }
  }
  std::vector<char> seen(static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) {
    std::fill(seen.begin(), seen.end(), 0);
    for (int h = 0; h < n; ++h) {
      if (seen[group.multiply(g, h)]++) {
        throw Error(ErrorCode::kValidationError,
                    "group table is not a Latin square (row " +
                        std::to_string(g) + ")");
      }
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (int h = 0; h < n; ++h) {
      if (seen[group.multiply(h, g)]++) {
        throw Error(ErrorCode::kValidationError,
                    "group table is not a Latin square (column " +
                        std::to_string(g) + ")");
      }
    }
  }
  bool associative = true;
  for_triples(n, [&](int g, int h, int k) {
    if (group.multiply(group.multiply(g, h), k) !=
        group.multiply(g, group.multiply(h, k))) {
      associative = false;
    }
  });
  if (!associative) {
    throw Error(ErrorCode::kValidationError, "group table is not associative");
  }
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::trivial() { return from_table({{0}}); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "cyclic order < 1");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) table[g][h] = (g + h) % n;
  return from_table(std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& lhs,
                                        const FiniteGroup& rhs) {
  const int a = lhs.order();
  const int b = rhs.order();
  std::vector<std::vector<int>> table(a * b, std::vector<int>(a * b));
  for (int g = 0; g < a * b; ++g) {
    for (int h = 0; h < a * b; ++h) {
      table[g][h] = lhs.multiply(g / b, h / b) * b + rhs.multiply(g % b, h % b);
    }
  }
  return from_table(std::move(table));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "symmetric degree < 1");
  int order = 1;
  for (int k = 2; k <= n; ++k) {
    order *= k;
    if (order > 10000) {
      throw Error(ErrorCode::kCapExceeded,
                  "symmetric group of degree " + std::to_string(n) +
                      " exceeds 10^4 elements");
    }
  }
  std::vector<std::vector<int>> perms;
  perms.reserve(static_cast<std::size_t>(order));
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));

  FiniteGroup group;
  group.order_ = order;
  group.table_.resize(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      group.table_[group.index(g, h)] =
          permutation_rank(compose(perms[g], perms[h]));
    }
  }
  group.permutations_ = std::move(perms);
  group.finish();
  return group;
}

FiniteGroup FiniteGroup::from_permutation_generators(
    const std::vector<std::vector<int>>& generators, int max_order) {
  if (generators.empty()) return trivial();
  const std::size_t n = generators.front().size();
  for (const auto& g : generators) {
    std::vector<int> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expect(n);
    std::iota(expect.begin(), expect.end(), 0);
    if (g.size() != n || sorted != expect) {
      throw Error(ErrorCode::kInvalidArgument, "generator is not a permutation");
    }
  }
  std::vector<int> id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  std::map<std::vector<int>, int> lookup{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& gen : generators) {
      auto next = compose(gen, elems[head]);
      if (lookup.count(next)) continue;
      if (static_cast<int>(elems.size()) >= max_order) {
        throw Error(ErrorCode::kCapExceeded,
                    "closure exceeds " + std::to_string(max_order) +
                        " elements");
      }
      lookup.emplace(next, static_cast<int>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  const int order = static_cast<int>(elems.size());
  FiniteGroup group;
  group.order_ = order;
  group.table_.resize(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g)
    for (int h = 0; h < order; ++h)
      group.table_[group.index(g, h)] = lookup.at(compose(elems[g], elems[h]));
  group.permutations_ = std::move(elems);
  group.finish();
  return group;
}

std::vector<std::vector<int>> FiniteGroup::table() const {
  std::vector<std::vector<int>> out(order_, std::vector<int>(order_));
  for (int g = 0; g < order_; ++g)
    for (int h = 0; h < order_; ++h) out[g][h] = multiply(g, h);
  return out;
}

void FiniteGroup::finish() {
  inverse_.assign(static_cast<std::size_t>(order_), -1);
  for (int g = 0; g < order_; ++g) {
    for (int h = 0; h < order_; ++h) {
      if (multiply(g, h) == 0) {
        inverse_[g] = h;
        break;
      }
    }
    if (inverse_[g] < 0 || multiply(inverse_[g], g) != 0) {
      throw Error(ErrorCode::kValidationError,
                  "element " + std::to_string(g) + " has no inverse");
    }
  }

  std::vector<char> in_subgroup(static_cast<std::size_t>(order_), 0);
  in_subgroup[0] = 1;
  generators_.clear();
  for (int g = 1; g < order_; ++g) {
    if (in_subgroup[g]) continue;
    generators_.push_back(g);
    std::vector<int> members;
    for (int x = 0; x < order_; ++x)
      if (in_subgroup[x]) members.push_back(x);
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (int gen : generators_) {
        const int next = multiply(gen, members[head]);
        if (!in_subgroup[next]) {
          in_subgroup[next] = 1;
          members.push_back(next);
        }
      }
    }
  }
}

FactorSet::FactorSet(int order, std::vector<Complex> values)
    : order_(order), values_(std::move(values)) {
  if (static_cast<std::size_t>(order) * order != values_.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "factor set size");
  }
}

FactorSet FactorSet::trivial(int order) {
  return FactorSet(order, std::vector<Complex>(
                              static_cast<std::size_t>(order) * order, 1.0));
}

bool FactorSet::is_trivial(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [&](const Complex& c) {
    return std::abs(c - Complex(1.0)) <= tol;
  });
}

double FactorSet::unit_modulus_residual() const {
  double worst = 0.0;
  for (const auto& c : values_) worst = std::max(worst, std::abs(std::abs(c) - 1.0));
  return worst;
}

double FactorSet::cocycle_residual(const FiniteGroup& group) const {
  if (group.order() != order_) {
    throw Error(ErrorCode::kDimensionMismatch, "factor set / group order");
  }
  double worst = 0.0;
  for_triples(order_, [&](int g, int h, int k) {
    const Complex lhs = (*this)(g, h) * (*this)(group.multiply(g, h), k);
    const Complex rhs = (*this)(g, group.multiply(h, k)) * (*this)(h, k);
    worst = std::max(worst, std::abs(lhs - rhs));
  });
  return worst;
}

ProjectiveRep::ProjectiveRep(FiniteGroup group, FactorSet factors,
                             std::vector<CMatrix> matrices)
    : group_(std::move(group)),
      factors_(std::move(factors)),
      matrices_(std::move(matrices)) {
  if (static_cast<int>(matrices_.size()) != group_.order()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need one matrix per group element");
  }
  if (factors_.order() != group_.order()) {
    throw Error(ErrorCode::kDimensionMismatch, "factor set / group order");
  }
  const Eigen::Index d = matrices_.front().rows();
  if (d == 0) throw Error(ErrorCode::kDimensionMismatch, "empty matrices");
  for (std::size_t g = 0; g < matrices_.size(); ++g) {
    if (matrices_[g].rows() != d || matrices_[g].cols() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "matrix " + std::to_string(g) + " has wrong shape");
    }
  }
}

RepValidation validate_rep(const ProjectiveRep& rep) {
  constexpr double kMatrixTol = 1e-8;
  constexpr double kScalarTol = 1e-10;
  RepValidation report;
  const int n = rep.order();
  for (int g = 0; g < n; ++g) {
    report.unitarity = std::max(report.unitarity, unitarity_residual(rep[g]));
  }
  for_pairs(n, [&](int g, int h) {
    const CMatrix diff = rep[g] * rep[h] -
                         rep.factors()(g, h) * rep[rep.group().multiply(g, h)];
    report.homomorphism = std::max(report.homomorphism, max_abs(diff));
  });
  report.unit_modulus = rep.factors().unit_modulus_residual();
  report.cocycle = rep.factors().cocycle_residual(rep.group());
  const CMatrix& e = rep[0];
  const Complex phase = e(0, 0);
  report.identity =
      std::max(max_abs(e - phase * CMatrix::Identity(e.rows(), e.cols())),
               std::abs(std::abs(phase) - 1.0));

  auto fail = [&](const char* what, double value, double tol) {
    if (!(value <= tol)) {
      report.failures.push_back(std::string(what) + " residual " +
                                std::to_string(value));
    }
  };
  fail("unitarity", report.unitarity, kMatrixTol);
  fail("homomorphism", report.homomorphism, kMatrixTol);
  fail("unit modulus", report.unit_modulus, kScalarTol);
  fail("cocycle", report.cocycle, kScalarTol);
  fail("identity", report.identity, kMatrixTol);
  return report;
}

FactorSet infer_factor_set(const FiniteGroup& group,
                           const std::vector<CMatrix>& matrices) {
  constexpr double kProportionalityTol = 1e-8;
  const int n = group.order();
  if (static_cast<int>(matrices.size()) != n) {
    throw Error(ErrorCode::kDimensionMismatch,
                "need one matrix per group element");
  }
  const double dim = static_cast<double>(matrices.front().rows());
  std::vector<Complex> values(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) {
      const CMatrix& ugh = matrices[group.multiply(g, h)];
      const CMatrix prod = matrices[g] * matrices[h];
      const Complex c = trace_product(ugh.adjoint(), prod) / dim;
      const double residual = max_abs(prod - c * ugh);
      if (residual > kProportionalityTol) {
        throw Error(ErrorCode::kNotProjective,
                    "U_" + std::to_string(g) + " U_" + std::to_string(h) +
                        " is not proportional to U_" +
                        std::to_string(group.multiply(g, h)) + " (residual " +
                        std::to_string(residual) + ")");
      }
      values[static_cast<std::size_t>(g) * n + h] = c;
    }
  }
  FactorSet factors(n, std::move(values));
  const double cocycle = factors.cocycle_residual(group);
  if (cocycle > 1e-8) {
    throw Error(ErrorCode::kNotProjective,
                "inferred factor set violates the cocycle identity (" +
                    std::to_string(cocycle) + ")");
  }
  return factors;
}

ProjectiveRep make_projective_rep(FiniteGroup group,
                                  std::vector<CMatrix> matrices) {
  FactorSet factors = infer_factor_set(group, matrices);
  ProjectiveRep rep(std::move(group), std::move(factors), std::move(matrices));
  const RepValidation report = validate_rep(rep);
  if (!report.ok()) {
    throw Error(ErrorCode::kValidationError, report.failures.front());
  }
  return rep;
}

}  // namespace margindisc
