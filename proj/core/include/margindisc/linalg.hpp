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

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace margindisc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Tolerances shared by the dense kernel. Every operation takes an instance
/// so callers can override any default without touching global state.
struct KernelTolerances {
  double hermitian = 1e-8;
  double unitary = 1e-8;
  /// Eigenphases closer than this (radians) are treated as one eigenvalue.
  double phase_cluster = 1e-7;
};

struct HermEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns are eigenvectors, unitary
};

/// Spectral decomposition of a unitary: U = sum_a exp(i phases[a]) v_a v_a^+.
struct PhaseDecomposition {
  std::vector<double> phases;  // (-pi, pi], ascending
  CMatrix vectors;             // orthonormal columns matching `phases`
  /// Groups of column indices sharing one eigenvalue. A cluster may wrap
  /// around the branch cut, joining phases near -pi with phases near +pi.
  std::vector<std::vector<int>> clusters;
};

/// max_ij |A_ij|
double max_abs(const CMatrix& a);
double hermiticity_residual(const CMatrix& a);
/// max_ij |(U^+ U - 1)_ij|
double unitarity_residual(const CMatrix& u);

HermEigen herm_eig(const CMatrix& a, const KernelTolerances& tol = {});

PhaseDecomposition unitary_eig(const CMatrix& u,
                               const KernelTolerances& tol = {});

/// Orthonormal basis (as columns) of { x : L x ~ 0 }, keeping directions whose
/// singular value is at most `tol * max(max_abs(L), scale_floor)`. The floor
/// keeps the threshold meaningful when L is pure rounding noise.
CMatrix nullspace(const CMatrix& l, double tol, double scale_floor = 0.0);

/// Smallest eigenvalue of the Hermitian part (A + A^+)/2.
double min_eig(const CMatrix& a);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// tr(A B) without forming the product.
Complex trace_product(const CMatrix& a, const CMatrix& b);

/// Column-major vectorization and its inverse.
CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

}  // namespace margindisc
