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

#include "margindisc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "margindisc/error.hpp"

namespace margindisc {

double max_abs(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return a.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  return max_abs(a - a.adjoint());
}

double unitarity_residual(const CMatrix& u) {
  if (u.rows() != u.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  return max_abs(u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols()));
}

HermEigen herm_eig(const CMatrix& a, const KernelTolerances& tol) {
  const double residual = hermiticity_residual(a);
  if (residual > tol.hermitian) {
    throw Error(ErrorCode::kNotHermitian,
                "hermiticity residual " + std::to_string(residual));
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "Hermitian eigensolver");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

double wrap_phase(double theta) {
  // std::arg lands in [-pi, pi]; fold -pi onto +pi.
  if (theta <= -std::numbers::pi) theta += 2.0 * std::numbers::pi;
  return theta;
}

}  // namespace

PhaseDecomposition unitary_eig(const CMatrix& u, const KernelTolerances& tol) {
  const double residual = unitarity_residual(u);
  if (residual > tol.unitary) {
    throw Error(ErrorCode::kNotUnitary,
                "unitarity residual " + std::to_string(residual));
  }
  const Eigen::Index n = u.rows();
  PhaseDecomposition out;
  if (n == 0) return out;

  // Schur vectors of a normal matrix are eigenvectors; the triangular factor
  // is diagonal up to rounding, so the basis is unitary even for degenerate
  // spectra.
  Eigen::ComplexSchur<CMatrix> schur(u);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "complex Schur decomposition");
  }
  const CMatrix& t = schur.matrixT();
  const CMatrix& q = schur.matrixU();

  std::vector<double> raw(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) raw[i] = wrap_phase(std::arg(t(i, i)));

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return raw[x] < raw[y]; });

  out.phases.resize(static_cast<std::size_t>(n));
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.phases[i] = raw[order[i]];
    out.vectors.col(i) = q.col(order[i]);
  }

  std::vector<std::vector<int>> clusters;
  clusters.push_back({0});
  for (int i = 1; i < n; ++i) {
    if (out.phases[i] - out.phases[i - 1] <= tol.phase_cluster) {
      clusters.back().push_back(i);
    } else {
      clusters.push_back({i});
    }
  }
  if (clusters.size() > 1) {
    const double wrap_gap =
        out.phases.front() + 2.0 * std::numbers::pi - out.phases.back();
    if (wrap_gap <= tol.phase_cluster) {
      auto& last = clusters.back();
      last.insert(last.end(), clusters.front().begin(), clusters.front().end());
      clusters.erase(clusters.begin());
    }
  }

  for (const auto& cluster : clusters) {
    if (cluster.size() < 2) continue;
    CMatrix block(n, static_cast<Eigen::Index>(cluster.size()));
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      block.col(static_cast<Eigen::Index>(k)) = out.vectors.col(cluster[k]);
    }
    Eigen::HouseholderQR<CMatrix> qr(block);
    const CMatrix thin =
        qr.householderQ() * CMatrix::Identity(n, block.cols());
    for (std::size_t k = 0; k < cluster.size(); ++k) {
      out.vectors.col(cluster[k]) = thin.col(static_cast<Eigen::Index>(k));
    }
  }
  out.clusters = std::move(clusters);
  return out;
}

CMatrix nullspace(const CMatrix& l, double tol, double scale_floor) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "nullspace tolerance must be > 0");
  }
  const Eigen::Index cols = l.cols();
  if (l.rows() == 0) return CMatrix::Identity(cols, cols);
  Eigen::BDCSVD<CMatrix> svd(l, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "singular value decomposition");
  }
  const double threshold = tol * std::max(max_abs(l), scale_floor);
  const RVector& sv = svd.singularValues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < cols; ++i) {
    if (i >= sv.size() || sv(i) <= threshold) keep.push_back(i);
  }
  CMatrix basis(cols, static_cast<Eigen::Index>(keep.size()));
  for (std::size_t k = 0; k < keep.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = svd.matrixV().col(keep[k]);
  }
  return basis;
}

double min_eig(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "matrix is not square");
  }
  const CMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "Hermitian eigensolver");
  }
  return solver.eigenvalues()(0);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  return a.cwiseProduct(b.transpose()).sum();
}

CVector vec(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::kDimensionMismatch, "unvec size");
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

}  // namespace margindisc
