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

#include "margindisc/margin_result.hpp"

#include <algorithm>

#include "margindisc/error.hpp"

namespace margindisc {

std::string_view to_string(Domain domain) {
  switch (domain) {
    case Domain::kMinimumError: return "minimum-error";
    case Domain::kIntermediate: return "intermediate";
    case Domain::kSingleState: return "single-state";
    case Domain::kLinear: return "linear";
  }
  return "unknown";
}

Rational KappaSummary::kappa_prime(int ancilla_dimension) const {
  if (ancilla_dimension < 1) {
    throw Error(ErrorCode::kInvalidArgument, "ancilla dimension must be >= 1");
  }
  Rational sum = 0;
  for (const auto& b : blocks) {
    const long long copies =
        static_cast<long long>(b.multiplicity) * ancilla_dimension;
    sum += Rational(std::min<long long>(copies, b.dimension) * b.dimension,
                    group_order);
  }
  return sum;
}

std::vector<Rational> KappaSummary::contributions() const {
  std::vector<Rational> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) {
    out.emplace_back(std::min(b.multiplicity, b.dimension) * b.dimension,
                     group_order);
  }
  return out;
}

CovariantPovm::CovariantPovm(const ProjectiveRep& rep, CMatrix seed,
                             double psd_tol)
    : seed_(std::move(seed)) {
  const Eigen::Index d = rep.dimension();
  if (seed_.rows() != d || seed_.cols() != d) {
    throw Error(ErrorCode::kDimensionMismatch, "covariant seed shape");
  }
  if (hermiticity_residual(seed_) > 1e-8 || min_eig(seed_) < -psd_tol) {
    throw Error(ErrorCode::kValidationError, "covariant seed is not PSD");
  }
  elements_.reserve(static_cast<std::size_t>(rep.order()));
  CMatrix total = CMatrix::Zero(d, d);
  for (int g = 0; g < rep.order(); ++g) {
    elements_.push_back(rep[g] * seed_ * rep[g].adjoint());
    total += elements_.back();
  }
  inconclusive_ = CMatrix::Identity(d, d) - total;
  inconclusive_ = 0.5 * (inconclusive_ + inconclusive_.adjoint());
  inconclusive_min_eig_ = min_eig(inconclusive_);
  if (inconclusive_min_eig_ < -psd_tol) {
    throw Error(ErrorCode::kValidationError,
                "sum_g U_g E_1 U_g^+ exceeds the identity (min eigenvalue of "
                "E_0 is " + std::to_string(inconclusive_min_eig_) + ")");
  }
}

Povm CovariantPovm::to_povm() const {
  std::vector<CMatrix> elems;
  elems.reserve(elements_.size() + 1);
  elems.push_back(inconclusive_);
  elems.insert(elems.end(), elements_.begin(), elements_.end());
  PovmTolerances tol;
  tol.psd = 1e-8;
  return Povm(std::move(elems), tol);
}

double CovariantPovm::covariance_residual(const ProjectiveRep& rep) const {
  double worst = 0.0;
  const int n = rep.order();
  for (int h = 0; h < n; ++h) {
    const CMatrix& u = rep[h];
    worst = std::max(worst,
                     max_abs(u * inconclusive_ * u.adjoint() - inconclusive_));
    for (int g = 0; g < n; ++g) {
      const CMatrix moved = u * elements_[g] * u.adjoint();
      worst = std::max(worst,
                       max_abs(moved - elements_[rep.group().multiply(h, g)]));
    }
  }
  return worst;
}

}  // namespace margindisc
