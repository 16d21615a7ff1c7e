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

#include "margindisc/catalog.hpp"

#include <algorithm>
#include <bit>
#include <climits>
#include <cmath>
#include <numbers>
#include <sstream>

#include "margindisc/error.hpp"

namespace margindisc {

namespace {

constexpr int kMaxPartitionSize = 60;
constexpr long long kMaxPhaseShiftDim = 4096;
constexpr long long kMaxColorDim = 4096;
constexpr long long kMaxRepEntries = 1LL << 22;

void enumerate(int remaining, int cap, int max_rows, std::vector<int>& prefix,
               std::vector<Partition>& out) {
  if (remaining == 0) {
    out.push_back({prefix});
    return;
  }
  if (static_cast<int>(prefix.size()) == max_rows) return;
  for (int part = std::min(remaining, cap); part >= 1; --part) {
    prefix.push_back(part);
    enumerate(remaining - part, part, max_rows, prefix, out);
    prefix.pop_back();
  }
}

std::vector<int> hooks(const Partition& lambda) {
  const std::vector<int> cols = lambda.conjugate();
  std::vector<int> out;
  for (int i = 0; i < lambda.rows(); ++i) {
    for (int j = 0; j < lambda.parts[static_cast<std::size_t>(i)]; ++j) {
      out.push_back(lambda.parts[static_cast<std::size_t>(i)] - j +
                    cols[static_cast<std::size_t>(j)] - i - 1);
    }
  }
  return out;
}

BigInt hook_product(const Partition& lambda) {
  BigInt p = 1;
  for (int h : hooks(lambda)) p *= h;
  return p;
}

// prod over cells of (d + content)
BigInt content_product(const Partition& lambda, int d) {
  BigInt p = 1;
  for (int i = 0; i < lambda.rows(); ++i) {
    for (int j = 0; j < lambda.parts[static_cast<std::size_t>(i)]; ++j) {
      p *= d + j - i;
    }
  }
  return p;
}

BigInt ceil_div(const BigInt& a, const BigInt& b) { return (a + b - 1) / b; }

int checked_int(const BigInt& v) {
  return v > INT_MAX ? -1 : static_cast<int>(v);
}

void sort_blocks(std::vector<IrrepSignature>& blocks) {
  std::sort(blocks.begin(), blocks.end());
}

Complex root_of_unity(long long num, long long den) {
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(num % den) /
                             static_cast<double>(den));
}

// kappa, kappa^A and r* from a closed-form block list.
void fill_from_blocks(CatalogProblem& p) {
  const KappaSummary s = p.summary();
  p.kappa = s.kappa;
  p.kappa_ancilla = s.kappa_ancilla;
  p.r_star = 1;
  for (const IrrepSignature& b : p.blocks) {
    if (b.multiplicity < 1) continue;
    p.r_star = std::max(p.r_star, ceil_div(b.dimension, b.multiplicity));
  }
}

}  // namespace

int Partition::size() const {
  int n = 0;
  for (int p : parts) n += p;
  return n;
}

std::vector<int> Partition::conjugate() const {
  std::vector<int> cols(parts.empty() ? 0 : static_cast<std::size_t>(parts[0]),
                        0);
  for (int p : parts) {
    for (int j = 0; j < p; ++j) ++cols[static_cast<std::size_t>(j)];
  }
  return cols;
}

std::vector<Partition> partitions(int n, int max_rows) {
  if (n < 0 || max_rows < 0) {
    throw Error(ErrorCode::kInvalidArgument, "negative partition size");
  }
  if (n > kMaxPartitionSize) {
    throw Error(ErrorCode::kCapExceeded,
                "partition enumeration limited to n <= 60");
  }
  std::vector<Partition> out;
  std::vector<int> prefix;
  enumerate(n, n, max_rows, prefix, out);
  return out;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

BigInt hook_length_dimension(const Partition& lambda) {
  return factorial(lambda.size()) / hook_product(lambda);
}

BigInt hook_content_dimension(const Partition& lambda, int d) {
  if (lambda.rows() > d) return 0;
  return content_product(lambda, d) / hook_product(lambda);
}

std::string to_string(Family family) {
  switch (family) {
    case Family::kPhaseShift: return "phase-shift";
    case Family::kColorCoding: return "color-coding";
    case Family::kSuperdense: return "superdense";
    case Family::kQutritPhase: return "qutrit-phase";
  }
  return "unknown";
}

std::string CatalogProblem::label() const {
  std::ostringstream os;
  os << to_string(family);
  switch (family) {
    case Family::kPhaseShift: os << " K=" << k << " N=" << n; break;
    case Family::kColorCoding: os << " N=" << n << " d=" << d; break;
    case Family::kSuperdense:
    case Family::kQutritPhase: os << " d=" << d; break;
  }
  return os.str();
}

int CatalogProblem::group_order() const {
  switch (family) {
    case Family::kPhaseShift: return k;
    case Family::kColorCoding: return checked_int(factorial(n));
    case Family::kSuperdense:
    case Family::kQutritPhase: return d * d;
  }
  return 0;
}

KappaSummary CatalogProblem::summary() const {
  if (blocks.empty()) {
    throw Error(ErrorCode::kCapExceeded, "closed-form blocks exceed int range");
  }
  KappaSummary s;
  s.group_order = group_order();
  s.blocks = blocks;
  s.kappa = 0;
  s.kappa_ancilla = 0;
  for (const IrrepSignature& b : blocks) {
    if (b.multiplicity < 1) continue;
    s.kappa += Rational(std::min(b.multiplicity, b.dimension) * b.dimension,
                        s.group_order);
    s.kappa_ancilla += Rational(b.dimension * b.dimension, s.group_order);
  }
  return s;
}

CatalogProblem phase_shift(int K, int N) {
  if (K < 2 || N < 1) {
    throw Error(ErrorCode::kInvalidArgument, "phase shift needs K >= 2, N >= 1");
  }
  if (N > 12) {
    throw Error(ErrorCode::kCapExceeded, "2^N exceeds 4096");
  }
  const long long dim = 1LL << N;
  if (dim > kMaxPhaseShiftDim) {
    throw Error(ErrorCode::kCapExceeded, "2^N exceeds 4096");
  }
  CatalogProblem p;
  p.family = Family::kPhaseShift;
  p.k = K;
  p.n = N;
  p.d = 2;

  std::vector<int> mult(static_cast<std::size_t>(K), 0);
  BigInt binom = 1;
  for (int w = 0; w <= N; ++w) {
    mult[static_cast<std::size_t>(w % K)] += static_cast<int>(binom);
    binom = binom * (N - w) / (w + 1);
  }
  for (int m : mult) {
    if (m > 0) p.blocks.push_back({1, m});
  }
  sort_blocks(p.blocks);
  fill_from_blocks(p);

  std::vector<CMatrix> matrices;
  matrices.reserve(static_cast<std::size_t>(K));
  for (int k = 0; k < K; ++k) {
    CMatrix u = CMatrix::Zero(dim, dim);
    for (long long x = 0; x < dim; ++x) {
      const int weight = std::popcount(static_cast<unsigned long long>(x));
      u(x, x) = root_of_unity(static_cast<long long>(k) * weight, K);
    }
    matrices.push_back(std::move(u));
  }
  p.rep.emplace(FiniteGroup::cyclic(K), FactorSet::trivial(K),
                std::move(matrices));
  return p;
}

CatalogProblem color_coding(int N, int d) {
  if (N < 2 || d < 2) {
    throw Error(ErrorCode::kInvalidArgument, "color coding needs N, d >= 2");
  }
  if (N > kMaxPartitionSize) {
    throw Error(ErrorCode::kCapExceeded, "color coding limited to N <= 60");
  }
  CatalogProblem p;
  p.family = Family::kColorCoding;
  p.n = N;
  p.d = d;

  const BigInt order = factorial(N);
  Rational kappa = 0;
  Rational kappa_a = 0;
  BigInt r_star = 1;
  bool fits = true;
  for (const Partition& lambda : partitions(N, d)) {
    const BigInt hp = hook_product(lambda);
    const BigInt f = order / hp;
    const BigInt s = content_product(lambda, d) / hp;
    kappa += Rational(std::min(f, s) * f, order);
    kappa_a += Rational(f * f, order);
    r_star = std::max(r_star, ceil_div(f, s));
    const int fi = checked_int(f);
    const int si = checked_int(s);
    if (fi < 0 || si < 0) fits = false;
    if (fits) p.blocks.push_back({fi, si});
  }
  if (fits && order <= INT_MAX) {
    sort_blocks(p.blocks);
  } else {
    p.blocks.clear();
  }
  p.kappa = kappa;
  p.kappa_ancilla = kappa_a;
  p.r_star = r_star;

  // Representation matrices, when small enough.
  long long dim = 1;
  for (int k = 0; k < N && dim <= kMaxColorDim; ++k) dim *= d;
  if (dim > kMaxColorDim || N > 7) return p;
  const long long entries = static_cast<long long>(order) * dim * dim;
  if (entries > kMaxRepEntries) return p;

  FiniteGroup group = FiniteGroup::symmetric(N);
  std::vector<CMatrix> matrices;
  matrices.reserve(static_cast<std::size_t>(group.order()));
  std::vector<int> digits(static_cast<std::size_t>(N));
  std::vector<int> moved(static_cast<std::size_t>(N));
  for (const std::vector<int>& perm : group.permutations()) {
    CMatrix u = CMatrix::Zero(dim, dim);
    for (long long x = 0; x < dim; ++x) {
      long long rest = x;
      for (int k = N - 1; k >= 0; --k) {
        digits[static_cast<std::size_t>(k)] = static_cast<int>(rest % d);
        rest /= d;
      }
      // Tensor factor k moves to position perm[k].
      for (int k = 0; k < N; ++k) {
        moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] =
            digits[static_cast<std::size_t>(k)];
      }
      long long y = 0;
      for (int k = 0; k < N; ++k) y = y * d + moved[static_cast<std::size_t>(k)];
      u(y, x) = 1.0;
    }
    matrices.push_back(std::move(u));
  }
  const int n_elems = group.order();
  p.rep.emplace(std::move(group), FactorSet::trivial(n_elems),
                std::move(matrices));
  return p;
}

CatalogProblem superdense(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "superdense needs d >= 2");
  CatalogProblem p;
  p.family = Family::kSuperdense;
  p.d = d;
  p.blocks = {{d, 1}};
  fill_from_blocks(p);

  CMatrix x = CMatrix::Zero(d, d);
  CMatrix z = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    x(a, (a + 1) % d) = 1.0;
    z(a, a) = root_of_unity(a, d);
  }
  std::vector<CMatrix> matrices;
  std::vector<CMatrix> xk(static_cast<std::size_t>(d));
  std::vector<CMatrix> zl(static_cast<std::size_t>(d));
  xk[0] = zl[0] = CMatrix::Identity(d, d);
  for (int k = 1; k < d; ++k) {
    xk[static_cast<std::size_t>(k)] = xk[static_cast<std::size_t>(k - 1)] * x;
    zl[static_cast<std::size_t>(k)] = zl[static_cast<std::size_t>(k - 1)] * z;
  }
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      matrices.push_back(xk[static_cast<std::size_t>(k)] *
                         zl[static_cast<std::size_t>(l)]);
    }
  }
  const int order = d * d;
  std::vector<Complex> c(static_cast<std::size_t>(order) * order);
  for (int g = 0; g < order; ++g) {
    for (int h = 0; h < order; ++h) {
      const int l = g % d;
      const int k2 = h / d;
      c[static_cast<std::size_t>(g) * order + h] =
          root_of_unity(-static_cast<long long>(l) * k2 % d + d, d);
    }
  }
  const FiniteGroup cyc = FiniteGroup::cyclic(d);
  p.rep.emplace(FiniteGroup::direct_product(cyc, cyc),
                FactorSet(order, std::move(c)), std::move(matrices));
  return p;
}

CatalogProblem qutrit_phase_rep(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "qutrit phase needs d >= 2");
  CatalogProblem p;
  p.family = Family::kQutritPhase;
  p.d = d;
  p.blocks = {{1, 1}, {1, 1}, {1, 1}};
  fill_from_blocks(p);

  std::vector<CMatrix> matrices;
  for (int k = 0; k < d; ++k) {
    for (int l = 0; l < d; ++l) {
      CMatrix v = CMatrix::Zero(3, 3);
      v(0, 0) = 1.0;
      v(1, 1) = root_of_unity(k, d);
      v(2, 2) = root_of_unity(l, d);
      matrices.push_back(std::move(v));
    }
  }
  const FiniteGroup cyc = FiniteGroup::cyclic(d);
  p.rep.emplace(FiniteGroup::direct_product(cyc, cyc),
                FactorSet::trivial(d * d), std::move(matrices));
  return p;
}

CMatrix superdense_output_gram(int d) {
  const CatalogProblem p = superdense(d);
  CVector phi = CVector::Zero(d * d);
  for (int a = 0; a < d; ++a) phi(a * d + a) = 1.0 / std::sqrt(double(d));
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix outputs(d * d, d * d);
  for (int g = 0; g < d * d; ++g) outputs.col(g) = kron((*p.rep)[g], id) * phi;
  return outputs.adjoint() * outputs;
}

std::vector<CurveRow> color_coding_curve(int max_n) {
  if (max_n > kMaxPartitionSize) {
    throw Error(ErrorCode::kCapExceeded, "curve limited to N <= 60");
  }
  std::vector<CurveRow> rows;
  for (int n = 2; n <= max_n; ++n) {
    const BigInt order = factorial(n);
    const std::vector<Partition> all = partitions(n, n);
    std::vector<BigInt> hook_prod;
    std::vector<BigInt> dims;
    hook_prod.reserve(all.size());
    for (const Partition& lambda : all) {
      hook_prod.push_back(hook_product(lambda));
      dims.push_back(order / hook_prod.back());
    }
    for (int d = 2; d <= n; ++d) {
      CurveRow row;
      row.n = n;
      row.d = d;
      row.kappa = 0;
      row.kappa_ancilla = 0;
      for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].rows() > d) continue;
        const BigInt s = content_product(all[i], d) / hook_prod[i];
        row.kappa += Rational(std::min(s, dims[i]) * dims[i], order);
        row.kappa_ancilla += Rational(dims[i] * dims[i], order);
      }
      row.rescaled_x = (d - 2.0 * std::sqrt(double(n))) / std::cbrt(std::sqrt(double(n)));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string curve_csv(const std::vector<CurveRow>& rows) {
  std::ostringstream os;
  os.precision(17);
  os << "N,d,kappa_num,kappa_den,kappaA_num,kappaA_den,kappa_float,"
        "kappaA_float,rescaled_x\n";
  for (const CurveRow& r : rows) {
    os << r.n << ',' << r.d << ',' << boost::multiprecision::numerator(r.kappa)
       << ',' << boost::multiprecision::denominator(r.kappa) << ','
       << boost::multiprecision::numerator(r.kappa_ancilla) << ','
       << boost::multiprecision::denominator(r.kappa_ancilla) << ','
       << to_double(r.kappa) << ',' << to_double(r.kappa_ancilla) << ','
       << r.rescaled_x << '\n';
  }
  return os.str();
}

}  // namespace margindisc
