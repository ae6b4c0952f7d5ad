// Copyright 2026 The otlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "otlab/qlin/linalg.h"
#include "otlab/util/rng.h"

namespace otlab::qlin {

ComplexVector random_gaussian_vector(std::size_t dim, Rng &rng);
/// Haar-random pure state.
PureState random_state(std::size_t dim, Rng &rng);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix random_unitary(std::size_t dim, Rng &rng);
/// Random density matrix of full rank from a Ginibre matrix.
DensityMatrix random_density(std::size_t dim, Rng &rng);
/// Projector onto a Haar-random subspace of the given rank.
ComplexMatrix random_projector(std::size_t dim, std::size_t rank, Rng &rng);

}  // namespace otlab::qlin
