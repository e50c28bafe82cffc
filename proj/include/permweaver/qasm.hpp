// Copyright 2026 The Permweaver Authors
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

#include <optional>
#include <string_view>

#include "permweaver/circuit.hpp"

namespace permweaver {

/// Reads the subset of OpenQASM 2.0 written by export_qasm, plus the `mcx`
/// lines of export_listing: one `qreg q[W];`, then x/h/t/tdg/cx/ry/rz/mcx
/// gates with numeric angles. Comments, the version line and includes are
/// skipped. When `num_main` is given, W must be num_main (no ancilla) or
/// num_main + 1 (last wire is the ancilla). Throws InputError naming the
/// line on anything else.
Circuit parse_qasm(std::string_view text, std::optional<int> num_main = std::nullopt);

}  // namespace permweaver
