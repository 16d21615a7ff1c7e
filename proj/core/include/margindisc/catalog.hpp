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
#include <vector>

#include "margindisc/group.hpp"
#include "margindisc/margin_result.hpp"
#include "margindisc/rational.hpp"

namespace margindisc {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  int size() const;
  int rows() const { return static_cast<int>(parts.size()); }
  /// Column lengths.
  std::vector<int> conjugate() const;
};

/// Partitions of n with at most `max_rows` rows, in reverse lexicographic
/// order ((n) first). CapExceeded above n = 60.
std::vector<Partition> partitions(int n, int max_rows);

BigInt factorial(int n);
/// f_lambda = N! / prod(hooks)
BigInt hook_length_dimension(const Partition& lambda);
/// s_lambda(d) = prod (d + j - i) / hook(i, j); zero when rows > d.
BigInt hook_content_dimension(const Partition& lambda, int d);

enum class Family { kPhaseShift, kColorCoding, kSuperdense, kQutritPhase };
std::string to_string(Family family);

struct CatalogProblem {
  Family family = Family::kPhaseShift;
  int k = 0;  // phase-shift group order K
  int n = 0;  // number of copies N
  int d = 0;  // local dimension (color coding, superdense) or group factor
  /// Absent when the representation is too large to build.
  std::optional<ProjectiveRep> rep;
  Rational kappa;
  Rational kappa_ancilla;
  BigInt r_star = 1;
  /// Closed-form (d_sigma, m_sigma) sorted by (d, m); empty when the values
  /// do not fit in int.
  std::vector<IrrepSignature> blocks;

  std::string label() const;
  /// Closed-form summary; requires `blocks`.
  KappaSummary summary() const;
  int group_order() const;
};

/// U_k = diag(1, exp(2 pi i k / K)) on N qubits over Z_K.
CatalogProblem phase_shift(int K, int N);
/// Permutations of N tensor factors of C^d over S_N. The representation is
/// built when d^N <= 4096 and |G| d^{2N} <= 2^22.
CatalogProblem color_coding(int N, int d);
/// X^k Z^l over Z_d x Z_d, element index k * d + l.
CatalogProblem superdense(int d);
/// diag(1, w^k, w^l) on a qutrit over Z_d x Z_d.
CatalogProblem qutrit_phase_rep(int d);

/// Gram matrix of the d^2 outputs (U_{k,l} (x) 1) |Phi> for the maximally
/// entangled |Phi> on C^d (x) C^d.
CMatrix superdense_output_gram(int d);

struct CurveRow {
  int n = 0;
  int d = 0;
  Rational kappa;
  Rational kappa_ancilla;
  double rescaled_x = 0.0;  // (d - 2 sqrt N) / N^{1/6}
};

/// Rows for N = 2..max_n and d = 2..N. CapExceeded above N = 60.
std::vector<CurveRow> color_coding_curve(int max_n);
std::string curve_csv(const std::vector<CurveRow>& rows);

}  // namespace margindisc
