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
#include <random>
#include <vector>

#include "margindisc/linalg.hpp"

namespace margindisc {

using Rng = std::mt19937_64;

/// Derives an independent stream for sub-task `index` of a seeded job.
Rng derived_rng(std::uint64_t seed, std::uint64_t index);

/// i.i.d. standard complex Gaussian entries.
CMatrix random_ginibre(Eigen::Index rows, Eigen::Index cols, Rng& rng);

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(Eigen::Index dim, Rng& rng);

CMatrix random_hermitian(Eigen::Index dim, Rng& rng);

/// M M^+ with M of shape dim x rank.
CMatrix random_psd(Eigen::Index dim, Eigen::Index rank, Rng& rng);

CVector random_unit_vector(Eigen::Index dim, Rng& rng);

/// Random density matrix of the given rank, trace one.
CMatrix random_density(Eigen::Index dim, Eigen::Index rank, Rng& rng);

/// Full-rank random elements A_k normalized as S^{-1/2} A_k S^{-1/2}, where
/// S = sum_k A_k.
std::vector<CMatrix> random_povm(Eigen::Index dim, std::size_t outcomes,
                                 Rng& rng);

}  // namespace margindisc
