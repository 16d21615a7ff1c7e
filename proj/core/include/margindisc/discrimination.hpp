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
#include <vector>

#include "margindisc/linalg.hpp"

namespace margindisc {

/// A finite set of unitary processes U_i applied with prior probabilities
/// eta_i. Validated on construction.
class ProcessSet {
 public:
  ProcessSet(std::vector<CMatrix> unitaries, std::vector<double> priors,
             const KernelTolerances& tol = {});

  /// Equal priors 1/n.
  static ProcessSet uniform(std::vector<CMatrix> unitaries,
                            const KernelTolerances& tol = {});

  Eigen::Index dimension() const { return dimension_; }
  std::size_t size() const { return unitaries_.size(); }
  const std::vector<CMatrix>& unitaries() const { return unitaries_; }
  const std::vector<double>& priors() const { return priors_; }

 private:
  Eigen::Index dimension_ = 0;
  std::vector<CMatrix> unitaries_;
  std::vector<double> priors_;
};

struct PovmTolerances {
  double hermitian = 1e-8;
  double psd = 1e-9;
  double completeness = 1e-8;
};

/// Measurement with outcomes 0..n; outcome 0 is "inconclusive" and outcome
/// i >= 1 guesses process i-1. Validated on construction only.
class Povm {
 public:
  explicit Povm(std::vector<CMatrix> elements, const PovmTolerances& tol = {});

  std::size_t size() const { return elements_.size(); }
  Eigen::Index dimension() const { return elements_.front().rows(); }
  const std::vector<CMatrix>& elements() const { return elements_; }
  const CMatrix& operator[](std::size_t mu) const { return elements_[mu]; }

  /// Smallest eigenvalue over all elements and max |sum E - 1|.
  double psd_residual() const;
  double completeness_residual() const;

 private:
  std::vector<CMatrix> elements_;
};

class InputState {
 public:
  static InputState pure(const CVector& phi);
  static InputState mixed(const CMatrix& rho);

  const CMatrix& density() const { return rho_; }
  const std::optional<CVector>& pure_vector() const { return phi_; }
  Eigen::Index dimension() const { return rho_.rows(); }

 private:
  InputState() = default;
  CMatrix rho_;
  std::optional<CVector> phi_;
};

struct DiscriminationReport {
  double success = 0.0;       // P_o
  double error = 0.0;         // P_x
  double inconclusive = 0.0;  // P_?
  std::optional<double> margin;
};

/// Row i, column mu: eta_i tr(U_i rho U_i^+ E_mu).
Eigen::MatrixXd joint_probabilities(const ProcessSet& set,
                                    const InputState& input, const Povm& povm);

DiscriminationReport evaluate(const ProcessSet& set, const InputState& input,
                              const Povm& povm);

/// True iff P_x <= m + 1e-9.
bool margin_satisfied(const DiscriminationReport& report, double margin);

}  // namespace margindisc
