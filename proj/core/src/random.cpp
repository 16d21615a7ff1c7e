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

#include "margindisc/random.hpp"

#include <cmath>

#include <Eigen/QR>

namespace margindisc {

Rng derived_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32), 0x6d646973u};
  return Rng(seq);
}

CMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, M_SQRT1_2);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

CMatrix random_unitary(Eigen::Index dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(dim, dim);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double mag = std::abs(r(i, i));
    if (mag > 0.0) q.col(i) *= r(i, i) / mag;
  }
  return q;
}

CMatrix random_hermitian(Eigen::Index dim, Rng& rng) {
  const CMatrix g = random_ginibre(dim, dim, rng);
  return 0.5 * (g + g.adjoint());
}

CMatrix random_psd(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  const CMatrix m = random_ginibre(dim, rank, rng);
  return m * m.adjoint();
}

CVector random_unit_vector(Eigen::Index dim, Rng& rng) {
  CVector v = random_ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

CMatrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng) {
  CMatrix rho = random_psd(dim, rank, rng);
  return rho / rho.trace().real();
}

std::vector<CMatrix> random_povm(Eigen::Index dim, std::size_t outcomes,
                                 Rng& rng) {
  std::vector<CMatrix> elements;
  elements.reserve(outcomes);
  CMatrix total = CMatrix::Zero(dim, dim);
  for (std::size_t k = 0; k < outcomes; ++k) {
    elements.push_back(random_psd(dim, dim, rng));
    total += elements.back();
  }
  const HermEigen eig = herm_eig(0.5 * (total + total.adjoint()));
  const RVector inv = eig.values.cwiseSqrt().cwiseInverse();
  const CMatrix root =
      eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  for (CMatrix& e : elements) {
    e = root * e * root;
    e = (0.5 * (e + e.adjoint())).eval();
  }
  return elements;
}

}  // namespace margindisc
