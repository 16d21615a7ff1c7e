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

#include "margindisc/discrimination.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "margindisc/error.hpp"

namespace margindisc {

ProcessSet::ProcessSet(std::vector<CMatrix> unitaries,
                       std::vector<double> priors,
                       const KernelTolerances& tol)
    : unitaries_(std::move(unitaries)), priors_(std::move(priors)) {
  if (unitaries_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "a process set needs at least two unitaries");
  }
  if (priors_.size() != unitaries_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "priors and unitaries differ in length");
  }
  dimension_ = unitaries_.front().rows();
  for (std::size_t i = 0; i < unitaries_.size(); ++i) {
    const CMatrix& u = unitaries_[i];
    if (u.rows() != dimension_ || u.cols() != dimension_) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "unitary " + std::to_string(i) + " has wrong shape");
    }
    const double residual = unitarity_residual(u);
    if (residual > tol.unitary) {
      throw Error(ErrorCode::kNotUnitary,
                  "unitary " + std::to_string(i) + " residual " +
                      std::to_string(residual));
    }
  }
  double total = 0.0;
  for (double p : priors_) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kInvalidPriors, "negative or non-finite prior");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidPriors,
                "priors sum to " + std::to_string(total));
  }
}

ProcessSet ProcessSet::uniform(std::vector<CMatrix> unitaries,
                               const KernelTolerances& tol) {
  const std::size_t n = unitaries.size();
  std::vector<double> priors(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return ProcessSet(std::move(unitaries), std::move(priors), tol);
}

Povm::Povm(std::vector<CMatrix> elements, const PovmTolerances& tol)
    : elements_(std::move(elements)) {
  if (elements_.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument, "POVM needs at least 2 elements");
  }
  const Eigen::Index d = elements_.front().rows();
  for (std::size_t mu = 0; mu < elements_.size(); ++mu) {
    const CMatrix& e = elements_[mu];
    if (e.rows() != d || e.cols() != d) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "POVM element " + std::to_string(mu) + " has wrong shape");
    }
    if (hermiticity_residual(e) > tol.hermitian) {
      throw Error(ErrorCode::kValidationError,
                  "POVM element " + std::to_string(mu) + " not Hermitian");
    }
    const double lowest = min_eig(e);
    if (lowest < -tol.psd) {
      throw Error(ErrorCode::kValidationError,
                  "POVM element " + std::to_string(mu) +
                      " not PSD, min eigenvalue " + std::to_string(lowest));
    }
  }
  const double completeness = completeness_residual();
  if (completeness > tol.completeness) {
    throw Error(ErrorCode::kValidationError,
                "POVM completeness residual " + std::to_string(completeness));
  }
}

double Povm::psd_residual() const {
  double lowest = 0.0;
  for (const auto& e : elements_) lowest = std::min(lowest, min_eig(e));
  return lowest;
}

double Povm::completeness_residual() const {
  CMatrix sum = CMatrix::Zero(dimension(), dimension());
  for (const auto& e : elements_) sum += e;
  return max_abs(sum - CMatrix::Identity(dimension(), dimension()));
}

InputState InputState::pure(const CVector& phi) {
  const double norm2 = phi.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw Error(ErrorCode::kValidationError,
                "input vector not normalized, |phi|^2 = " +
                    std::to_string(norm2));
  }
  InputState s;
  s.rho_ = phi * phi.adjoint();
  s.phi_ = phi;
  return s;
}

InputState InputState::mixed(const CMatrix& rho) {
  if (rho.rows() != rho.cols()) {
    throw Error(ErrorCode::kDimensionMismatch, "density matrix not square");
  }
  if (hermiticity_residual(rho) > 1e-8) {
    throw Error(ErrorCode::kValidationError, "density matrix not Hermitian");
  }
  if (min_eig(rho) < -1e-9) {
    throw Error(ErrorCode::kValidationError, "density matrix not PSD");
  }
  if (std::abs(rho.trace().real() - 1.0) > 1e-10) {
    throw Error(ErrorCode::kValidationError, "density matrix trace != 1");
  }
  InputState s;
  s.rho_ = rho;
  return s;
}

Eigen::MatrixXd joint_probabilities(const ProcessSet& set,
                                    const InputState& input, const Povm& povm) {
  const std::size_t n = set.size();
  if (povm.size() != n + 1) {
    throw Error(ErrorCode::kDimensionMismatch,
                "POVM must have one element per process plus inconclusive");
  }
  if (input.dimension() != set.dimension() ||
      povm.dimension() != set.dimension()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "input, POVM and processes disagree on dimension");
  }
  Eigen::MatrixXd joint(n, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const CMatrix& u = set.unitaries()[i];
    const CMatrix out = u * input.density() * u.adjoint();
    for (std::size_t mu = 0; mu <= n; ++mu) {
      joint(i, mu) = set.priors()[i] * trace_product(out, povm[mu]).real();
    }
  }
  return joint;
}

DiscriminationReport evaluate(const ProcessSet& set, const InputState& input,
                              const Povm& povm) {
  const Eigen::MatrixXd joint = joint_probabilities(set, input, povm);
  DiscriminationReport report;
  for (Eigen::Index i = 0; i < joint.rows(); ++i) {
    report.inconclusive += joint(i, 0);
    for (Eigen::Index mu = 1; mu < joint.cols(); ++mu) {
      if (mu == i + 1) {
        report.success += joint(i, mu);
      } else {
        report.error += joint(i, mu);
      }
    }
  }
  return report;
}

bool margin_satisfied(const DiscriminationReport& report, double margin) {
  return report.error <= margin + 1e-9;
}

}  // namespace margindisc
