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

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "otlab/otcore/program.h"

namespace otlab::otcore {

/// A register as it exists during a run: declared registers plus the fresh
/// registers created by Copy messages.
struct RegisterInstance {
    std::string name;
    std::size_t dim = 2;
    bool classical = true;
    Party holder = Party::kAlice;
};

/// Name resolution for both parties as registers change hands.
class Scope {
  public:
    std::size_t declare(const RegisterDecl &decl);
    /// Throws ValidationError if `party` cannot see `name`.
    std::size_t resolve(Party party, const std::string &name) const;
    bool visible(Party party, const std::string &name) const;
    std::size_t move(Party from, const std::string &name, const std::string &as);
    /// Returns the id of the fresh receiver register.
    std::size_t copy(Party from, const std::string &name, const std::string &as);
    /// Binds `as` for the receiver to a fresh classical register of `dim` (malformed message stand-in).
    std::size_t bind_dummy(Party receiver, const std::string &as, std::size_t dim);

    const std::vector<RegisterInstance> &instances() const { return instances_; }
    const RegisterInstance &instance(std::size_t id) const { return instances_.at(id); }

  private:
    std::vector<RegisterInstance> instances_;
    std::map<std::string, std::size_t> names_[2];
};

inline std::size_t party_index(Party p) { return p == Party::kAlice ? 0 : 1; }

}  // namespace otlab::otcore
