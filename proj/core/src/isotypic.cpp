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

#include "margindisc/isotypic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "margindisc/error.hpp"
#include "margindisc/random.hpp"

namespace margindisc {

namespace {

constexpr int kMaxRedraws = 5;
constexpr double kCharacterTol = 0.01;
constexpr double kClusterGap = 1e-6;
constexpr double kAlignTol = 1e-6;
constexpr double kTransformTol = 1e-7;
constexpr double kOrthogonalityTol = 1e-6;
constexpr double kBasisTol = 1e-8;
constexpr Eigen::Index kCommutantCap = 32;

// Elements whose relations pin down an intertwiner. The identity covers the
// trivial group, which has no generators.
std::vector<int> constraint_elements(const FiniteGroup& group) {
  std::vector<int> out = group.generators();
  if (out.empty()) out.push_back(0);
  return out;
}

Complex character_product(const std::vector<Complex>& a,
                          const std::vector<Complex>& b) {
  Complex sum = 0.0;
  for (std::size_t g = 0; g < a.size(); ++g) sum += std::conj(a[g]) * b[g];
  return sum / static_cast<double>(a.size());
}

std::vector<Complex> character_of(const ProjectiveRep& rep, const CMatrix& v) {
  std::vector<Complex> chi(static_cast<std::size_t>(rep.order()));
  for (int g = 0; g < rep.order(); ++g) {
    chi[static_cast<std::size_t>(g)] = (v.adjoint() * rep[g] * v).trace();
  }
  return chi;
}

std::vector<CMatrix> restricted(const ProjectiveRep& rep, const CMatrix& v) {
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(rep.order()));
  for (int g = 0; g < rep.order(); ++g) {
    out.push_back(v.adjoint() * rep[g] * v);
  }
  return out;
}

// T with ref(g) T = T other(g), scaled unitary, largest entry real positive.
CMatrix intertwiner(const std::vector<CMatrix>& ref,
                    const std::vector<CMatrix>& other,
                    const std::vector<int>& elements) {
  const Eigen::Index d = ref.front().rows();
  const CMatrix id = CMatrix::Identity(d, d);
  CMatrix stacked(static_cast<Eigen::Index>(elements.size()) * d * d, d * d);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto g = static_cast<std::size_t>(elements[k]);
    stacked.middleRows(static_cast<Eigen::Index>(k) * d * d, d * d) =
        kron(id, ref[g]) - kron(other[g].transpose(), id);
  }
  const CMatrix ns = nullspace(stacked, 1e-8, 1.0);
  if (ns.cols() != 1) {
    throw Error(ErrorCode::kAlignmentFailure,
                "intertwiner space has dimension " + std::to_string(ns.cols()));
  }
  CMatrix t = unvec(ns.col(0), d, d);
  t *= std::sqrt(static_cast<double>(d)) / t.norm();
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < t.size(); ++k) {
    if (std::abs(t(k)) > std::abs(t(best)) + 1e-12) best = k;
  }
  t *= std::conj(t(best)) / std::abs(t(best));

  double residual = unitarity_residual(t);
  for (std::size_t g = 0; g < ref.size(); ++g) {
    residual = std::max(residual, max_abs(ref[g] * t - t * other[g]));
  }
  if (residual > kAlignTol) {
    throw Error(ErrorCode::kAlignmentFailure,
                "intertwiner residual " + std::to_string(residual));
  }
  return t;
}

// Phase-free lexicographic order on the first reference basis vector.
bool first_vector_less(const IrrepBlock& a, const IrrepBlock& b) {
  const CMatrix& va = a.copies.front();
  const CMatrix& vb = b.copies.front();
  for (Eigen::Index k = 0; k < va.rows(); ++k) {
    const double x = std::abs(va(k, 0));
    const double y = std::abs(vb(k, 0));
    if (std::abs(x - y) > 1e-9) return x > y;
  }
  return false;
}

IrrepDecomposition attempt(const ProjectiveRep& rep, Rng& rng) {
  const Eigen::Index dim = rep.dimension();
  const int order = rep.order();

  const CMatrix h = random_hermitian(dim, rng);
  CMatrix r = CMatrix::Zero(dim, dim);
  for (const CMatrix& u : rep.matrices()) r.noalias() += u * h * u.adjoint();
  r /= static_cast<double>(order);
  r = (0.5 * (r + r.adjoint())).eval();
  const HermEigen eig = herm_eig(r);

  const double range = eig.values(dim - 1) - eig.values(0);
  const double scale =
      std::max({1e-300, std::abs(eig.values(0)), std::abs(eig.values(dim - 1))});
  // A scalar R (irreducible representation) shows only rounding spread.
  const double gap = range <= 1e-10 * scale ? 2.0 * scale : kClusterGap * range;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> clusters;  // start, size
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= dim; ++k) {
    if (k == dim || eig.values(k) - eig.values(k - 1) > gap) {
      clusters.emplace_back(start, k - start);
      start = k;
    }
  }

  struct Copy {
    CMatrix vectors;
    std::vector<Complex> chi;
  };
  std::vector<Copy> copies;
  for (const auto& [first, size] : clusters) {
    Copy c{eig.vectors.middleCols(first, size), {}};
    c.chi = character_of(rep, c.vectors);
    const double self = std::abs(character_product(c.chi, c.chi));
    if (std::abs(self - 1.0) > kCharacterTol) {
      throw Error(ErrorCode::kDegenerateDraw,
                  "eigenspace of dimension " + std::to_string(size) +
                      " has character norm " + std::to_string(self));
    }
    copies.push_back(std::move(c));
  }

  // Group copies into equivalence classes.
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < copies.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes) {
      const double ip =
          std::abs(character_product(copies[cls.front()].chi, copies[i].chi));
      const double rounded = std::round(ip);
      if (std::abs(ip - rounded) > kCharacterTol || rounded > 1.0) {
        throw Error(ErrorCode::kDegenerateDraw,
                    "character inner product " + std::to_string(ip));
      }
      if (rounded == 1.0) {
        if (copies[cls.front()].vectors.cols() != copies[i].vectors.cols()) {
          throw Error(ErrorCode::kDegenerateDraw,
                      "equivalent copies of different dimension");
        }
        cls.push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({i});
  }

  const std::vector<int> elements = constraint_elements(rep.group());
  IrrepDecomposition dec;
  dec.group_order = order;
  for (const auto& cls : classes) {
    IrrepBlock block;
    const CMatrix& ref = copies[cls.front()].vectors;
    block.dimension = static_cast<int>(ref.cols());
    block.multiplicity = static_cast<int>(cls.size());
    block.matrices = restricted(rep, ref);
    block.copies.push_back(ref);
    for (std::size_t k = 1; k < cls.size(); ++k) {
      const CMatrix& v = copies[cls[k]].vectors;
      const CMatrix t = intertwiner(block.matrices, restricted(rep, v), elements);
      block.copies.push_back(v * t.adjoint());
    }
    dec.blocks.push_back(std::move(block));
  }

  std::stable_sort(dec.blocks.begin(), dec.blocks.end(),
                   [](const IrrepBlock& a, const IrrepBlock& b) {
                     if (a.dimension != b.dimension) {
                       return a.dimension < b.dimension;
                     }
                     if (a.multiplicity != b.multiplicity) {
                       return a.multiplicity < b.multiplicity;
                     }
                     return first_vector_less(a, b);
                   });
  dec.basis.resize(dim, dim);
  Eigen::Index col = 0;
  for (std::size_t s = 0; s < dec.blocks.size(); ++s) {
    dec.blocks[s].id = static_cast<int>(s);
    const CMatrix b = dec.blocks[s].basis();
    dec.basis.middleCols(col, b.cols()) = b;
    col += b.cols();
  }
  return dec;
}

}  // namespace

CMatrix IrrepBlock::basis() const {
  CMatrix out(copies.front().rows(),
              static_cast<Eigen::Index>(copies.size()) * dimension);
  for (std::size_t b = 0; b < copies.size(); ++b) {
    out.middleCols(static_cast<Eigen::Index>(b) * dimension, dimension) =
        copies[b];
  }
  return out;
}

std::vector<Complex> IrrepBlock::character() const {
  std::vector<Complex> chi;
  chi.reserve(matrices.size());
  for (const CMatrix& m : matrices) chi.push_back(m.trace());
  return chi;
}

std::vector<CMatrix> commutant_basis(const ProjectiveRep& rep) {
  const Eigen::Index dim = rep.dimension();
  if (dim > kCommutantCap) {
    throw Error(ErrorCode::kCapExceeded,
                "commutant basis limited to dimension " +
                    std::to_string(kCommutantCap));
  }
  const std::vector<int> elements = constraint_elements(rep.group());
  const CMatrix id = CMatrix::Identity(dim, dim);
  CMatrix stacked(static_cast<Eigen::Index>(elements.size()) * dim * dim,
                  dim * dim);
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const CMatrix& u = rep[elements[k]];
    stacked.middleRows(static_cast<Eigen::Index>(k) * dim * dim, dim * dim) =
        kron(id, u) - kron(u.transpose(), id);
  }
  const CMatrix ns = nullspace(stacked, 1e-9, 1.0);
  std::vector<CMatrix> out;
  out.reserve(static_cast<std::size_t>(ns.cols()));
  for (Eigen::Index k = 0; k < ns.cols(); ++k) {
    out.push_back(unvec(ns.col(k), dim, dim));
  }
  return out;
}

IrrepDecomposition decompose(const ProjectiveRep& rep, std::uint64_t seed) {
  std::string last;
  for (int k = 0; k <= kMaxRedraws; ++k) {
    Rng rng = derived_rng(seed, static_cast<std::uint64_t>(k));
    try {
      IrrepDecomposition dec = attempt(rep, rng);
      dec.seed = seed;
      dec.attempts = k + 1;
      const DecompositionCheck check = check_decomposition(rep, dec);
      if (check.transformation > kTransformTol) {
        throw Error(ErrorCode::kAlignmentFailure,
                    "transformation residual " +
                        std::to_string(check.transformation));
      }
      if (check.orthogonality > kOrthogonalityTol) {
        throw Error(ErrorCode::kAlignmentFailure,
                    "orthogonality residual " +
                        std::to_string(check.orthogonality));
      }
      if (check.basis_unitarity > kBasisTol) {
        throw Error(ErrorCode::kAlignmentFailure,
                    "basis unitarity residual " +
                        std::to_string(check.basis_unitarity));
      }
      return dec;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateDraw) throw;
      last = e.what();
    }
  }
  throw Error(ErrorCode::kDegenerateDraw,
              "no generic commutant element after " +
                  std::to_string(kMaxRedraws + 1) + " draws: " + last);
}

std::vector<IrrepSignature> multiplicity_signature(
    const IrrepDecomposition& dec) {
  std::vector<IrrepSignature> out;
  out.reserve(dec.blocks.size());
  for (const IrrepBlock& b : dec.blocks) {
    out.push_back({b.dimension, b.multiplicity});
  }
  return out;
}

DecompositionCheck check_decomposition(const ProjectiveRep& rep,
                                       const IrrepDecomposition& dec) {
  DecompositionCheck out;
  const int order = rep.order();
  out.basis_unitarity = unitarity_residual(dec.basis);

  Eigen::Index total = 0;
  for (const IrrepBlock& b : dec.blocks) {
    total += static_cast<Eigen::Index>(b.dimension) * b.dimension;
  }
  Eigen::MatrixXcd table(order, total);
  for (int g = 0; g < order; ++g) {
    CMatrix rebuilt = CMatrix::Zero(rep.dimension(), rep.dimension());
    Eigen::Index offset = 0;
    for (const IrrepBlock& b : dec.blocks) {
      const CMatrix& dg = b.matrices[static_cast<std::size_t>(g)];
      for (const CMatrix& v : b.copies) {
        out.transformation =
            std::max(out.transformation, max_abs(rep[g] * v - v * dg));
        rebuilt.noalias() += v * dg * v.adjoint();
      }
      for (int a1 = 0; a1 < b.dimension; ++a1) {
        for (int a2 = 0; a2 < b.dimension; ++a2) {
          table(g, offset + a1 * b.dimension + a2) = dg(a1, a2);
        }
      }
      offset += static_cast<Eigen::Index>(b.dimension) * b.dimension;
    }
    out.reconstruction = std::max(out.reconstruction, max_abs(rep[g] - rebuilt));
  }

  const CMatrix gram = table.adjoint() * table;
  Eigen::Index offset = 0;
  CMatrix expected = CMatrix::Zero(total, total);
  for (const IrrepBlock& b : dec.blocks) {
    const Eigen::Index n = static_cast<Eigen::Index>(b.dimension) * b.dimension;
    expected.block(offset, offset, n, n) =
        CMatrix::Identity(n, n) * (static_cast<double>(order) / b.dimension);
    offset += n;
  }
  out.orthogonality = total > 0 ? max_abs(gram - expected) : 0.0;
  return out;
}

}  // namespace margindisc
