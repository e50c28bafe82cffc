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
#include <span>

#include "permweaver/circuit.hpp"

namespace permweaver {

/// Upper bound on CX gates per control of a lowered MCX: for every control
/// count c, mcx_cx_cost(c) <= kMcxCxPerControl * c.
inline constexpr int kMcxCxPerControl = 24;

/// Lowers a multi-controlled X to {x, cx, h, t, tdg}.
///
/// c <= 2 controls need no extra wire (c = 2 is the 6-CX Toffoli). For c >= 3
/// the ancilla and the `spare` wires form a pool of borrowed (dirty) wires;
/// any state on them is returned unchanged.
///   - With at least c - 2 pool wires: one Toffoli ladder, 12c - 18 CX.
///   - Otherwise the controls are split into halves g1 (ceil(c/2)) and g2 and
///     the gate is built as B A B A^-1 with
///       A: ancilla ^= AND(g1), borrowing g2, the target and spare wires,
///       B: target  ^= AND(g2) & ancilla, borrowing g1 and spare wires,
///     for 24c - 60 CX before simplification.
/// Ladder Toffolis that do not touch the final target are 3-CX relative-phase
/// Toffolis; their diagonal phases cancel between each ladder and its mirror
/// image, so the lowered gate is exact.
///
/// Negative controls are conjugated with X (no CX cost). Throws InputError if
/// c >= 3 and no pool wire is given, or if wires collide.
Circuit mcx_to_cx(std::span<const Control> controls, int target, std::optional<int> ancilla,
                  std::span<const int> spare = {});

/// Exact CX count of mcx_to_cx for `num_controls` positive controls with one
/// ancilla and `num_spare` spare wires (memoized; computed by lowering once).
int mcx_cx_cost(int num_controls, int num_spare = 0);

/// Lowers every MCX and negatively controlled CX of a permutation-level
/// circuit. Each gate borrows the circuit's ancilla and every main wire it
/// does not act on. Other gates pass through.
Circuit lower_circuit(const Circuit& c);

}  // namespace permweaver
