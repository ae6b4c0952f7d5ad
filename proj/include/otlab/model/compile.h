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

#include "otlab/model/spec.h"
#include "otlab/otcore/program.h"

namespace otlab::model {

/// Largest message space the compiler accepts.
inline constexpr std::size_t kMaxMessageDim = 64;
/// Largest local space (private (x) message) per party.
inline constexpr std::size_t kMaxLocalDim = 4096;

/// Rewrites an interactive protocol as unitary rounds on A (x) M (x) B.
///
/// Every register a party holds gets a private factor; measurements become
/// controlled shifts into their classical targets, classical sampling becomes
/// a prepared ancilla, and each party with abort checks gets a flag register
/// whose nonzero values form the "abort" POVM element. A register that a
/// party receives and passes on in the same step, or touches for the first
/// time in the step that sends it, stays in M. Consecutive steps of one party
/// share a round; a receive-only round is inserted when a party sends twice
/// in a row.
///
/// Throws UnsupportedError when a message needs more than kMaxMessageDim
/// levels or a local space exceeds kMaxLocalDim.
ProtocolSpec compile_with_deferred_measurement(const otcore::InteractiveProtocol &protocol);

}  // namespace otlab::model
