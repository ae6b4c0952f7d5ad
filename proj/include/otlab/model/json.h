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

#include <string>

#include "json.hpp"
#include "otlab/model/spec.h"

namespace otlab::model {

/// Complex matrices are arrays of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
/// Throws ValidationError on ragged or malformed input.
ComplexMatrix matrix_from_json(const nlohmann::json &j);

/// {"dim_a", "dim_m", "dim_b", "rounds": [{"actor", "unitary"}], "alice_povm": {label: matrix},
///  "bob_povm": {...}, "n", "k"} plus optional "name", "messages", "alice_factors", "bob_factors".
nlohmann::json to_json(const ProtocolSpec &spec);
ProtocolSpec spec_from_json(const nlohmann::json &j);

ProtocolSpec load_spec(const std::string &path);
void save_spec(const ProtocolSpec &spec, const std::string &path, bool pretty = true);

}  // namespace otlab::model
