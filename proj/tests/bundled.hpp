// Copyright 2026 The qreact Authors
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

// Access to the bundled two-orbital model systems.

#include "qreact/fermion.hpp"

#include <array>
#include <string>

#ifndef QREACT_DATA_DIR
#error "QREACT_DATA_DIR must point at the bundled data directory"
#endif

namespace qreact::testing {

inline constexpr std::array<const char*, 3> kBundledSystems = {
    "reactant", "ts", "product"};

inline std::string data_path(const std::string& file) {
  return std::string(QREACT_DATA_DIR) + "/" + file;
}

/// HOMO/LUMO space, parity mapping, two-qubit reduction.
inline MappedHamiltonian bundled_hamiltonian(const std::string& name) {
  const auto m = read_fcidump(data_path(name + ".fcidump"));
  return map_integrals(m, ActiveSpace::from_integrals(m, {}, {0, 1}),
                       Mapping::Parity, true);
}

}  // namespace qreact::testing
