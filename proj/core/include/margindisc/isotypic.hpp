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
#include <vector>

#include "margindisc/group.hpp"
#include "margindisc/linalg.hpp"
#include "margindisc/margin_result.hpp"

namespace margindisc {

/// One isotypic component. Copy b spans the columns of `copies[b]`, and
/// U_g copies[b] = copies[b] matrices[g] for every copy.
struct IrrepBlock {
  int id = 0;
  int dimension = 0;     // d_sigma
  int multiplicity = 0;  // m_sigma
  std::vector<CMatrix> copies;    // D x d each
  std::vector<CMatrix> matrices;  // D^sigma(g), d x d, indexed by g

  /// |sigma, b, a> as column b * d + a.
  CMatrix basis() const;
  std::vector<Complex> character() const;
};

struct IrrepDecomposition {
  std::vector<IrrepBlock> blocks;
  /// D x D unitary; the blocks' bases concatenated in block order.
  CMatrix basis;
  int group_order = 1;
  /// Seed of the commutant draw that succeeded, and how many draws it took.
  std::uint64_t seed = 0;
  int attempts = 1;
};

/// Residuals of the defining properties of a decomposition.
struct DecompositionCheck {
  double transformation = 0.0;  // max |U_g V_b - V_b D(g)|
  double orthogonality = 0.0;   // max deviation from (|G|/d) delta
  double reconstruction = 0.0;  // max |U_g - V blockdiag(D(g)) V^+|
  double basis_unitarity = 0.0;
};

/// Orthonormal (Hilbert-Schmidt) basis of { X : U_g X = X U_g for all g }.
/// Works on D^2 x D^2 maps, so it is limited to D <= 32 (CapExceeded above).
std::vector<CMatrix> commutant_basis(const ProjectiveRep& rep);

/// Decomposes `rep` into irreducible blocks using a random Hermitian element
/// of its commutant. Redraws up to 5 times if the draw is degenerate.
IrrepDecomposition decompose(const ProjectiveRep& rep, std::uint64_t seed);

/// (d_sigma, m_sigma) for each block, in block order.
std::vector<IrrepSignature> multiplicity_signature(
    const IrrepDecomposition& dec);

DecompositionCheck check_decomposition(const ProjectiveRep& rep,
                                       const IrrepDecomposition& dec);

}  // namespace margindisc
