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

#include "permweaver/sim.hpp"

#include <cmath>
#include <numbers>

namespace permweaver::sim {

namespace {

using cd = std::complex<double>;

void check_wires(const Circuit& c, int n_wires, int limit) {
  if (n_wires < c.num_wires()) throw InputError("simulation: fewer wires than the circuit uses");
  if (n_wires > limit) {
    throw InputError("simulation: " + std::to_string(n_wires) + " wires exceeds the limit of " + std::to_string(limit));
  }
}

// 2x2 matrix {a, b; c, d} for a single-qubit gate.
struct Mat2 {
  cd a, b, c, d;
};

Mat2 matrix_of(const Gate& g) {
  const double s2 = std::numbers::sqrt2 / 2.0;
  const cd i(0.0, 1.0);
  switch (g.kind) {
    case GateKind::X: return {0, 1, 1, 0};
    case GateKind::H: return {s2, s2, s2, -s2};
    case GateKind::T: return {1, 0, 0, std::exp(i * (std::numbers::pi / 4))};
    case GateKind::Tdg: return {1, 0, 0, std::exp(-i * (std::numbers::pi / 4))};
    case GateKind::RY: {
      const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ: return {std::exp(-i * (g.angle / 2)), 0, 0, std::exp(i * (g.angle / 2))};
  }
  return {1, 0, 0, 1};
}

}  // namespace

Word simulate_permutation_word(const Circuit& c, Word bits) {
  for (const auto& g : c.gates()) {
    if (g.kind != GateKind::X) throw InputError("simulate_permutation: circuit contains a non-permutation gate");
    bool fire = true;
    for (const auto& ctl : g.controls) {
      if (((bits >> ctl.qubit) & 1U) != (ctl.polarity ? 1U : 0U)) {
        fire = false;
        break;
      }
    }
    if (fire) bits ^= bit_of(g.target);
  }
  return bits;
}

BitLabel simulate_permutation(const Circuit& c, const BitLabel& label) {
  if (label.size() == c.num_wires()) return BitLabel(label.size(), simulate_permutation_word(c, label.bits()));
  if (label.size() != c.num_main()) throw InputError("simulate_permutation: label width does not match circuit");
  const Word out = simulate_permutation_word(c, label.bits());
  if (c.has_ancilla() && (out & bit_of(c.ancilla()))) throw StateError("simulate_permutation: ancilla left set");
  return BitLabel(label.size(), out & low_mask(label.size()));
}

void apply(const Circuit& c, int n_wires, StateVector& state) {
  check_wires(c, n_wires, kMaxStatevectorWires);
  const std::size_t dim = std::size_t{1} << n_wires;
  if (state.size() != dim) throw InputError("apply: state length does not match wire count");
  auto wire_bit = [n_wires](int w) { return std::size_t{1} << (n_wires - 1 - w); };

  for (const auto& g : c.gates()) {
    std::size_t cmask = 0, cval = 0;
    for (const auto& ctl : g.controls) {
      cmask |= wire_bit(ctl.qubit);
      if (ctl.polarity) cval |= wire_bit(ctl.qubit);
    }
    const std::size_t tb = wire_bit(g.target);
    const Mat2 m = matrix_of(g);
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if (idx & tb) continue;
      if ((idx & cmask) != cval) continue;
      const cd a0 = state[idx];
      const cd a1 = state[idx | tb];
      state[idx] = m.a * a0 + m.b * a1;
      state[idx | tb] = m.c * a0 + m.d * a1;
    }
  }
}

StateVector statevector(const Circuit& c, int n_wires) {
  check_wires(c, n_wires, kMaxStatevectorWires);
  StateVector state(std::size_t{1} << n_wires, cd(0.0, 0.0));
  state[0] = 1.0;
  apply(c, n_wires, state);
  return state;
}

Matrix unitary(const Circuit& c, int n_wires) {
  check_wires(c, n_wires, kMaxUnitaryWires);
  const std::size_t dim = std::size_t{1} << n_wires;
  Matrix u{dim, std::vector<cd>(dim * dim)};
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector v(dim, cd(0.0, 0.0));
    v[col] = 1.0;
    apply(c, n_wires, v);
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = v[row];
  }
  return u;
}

std::size_t basis_index(Word bits, int label_width, int n_wires) {
  std::size_t idx = 0;
  for (int j = 0; j < label_width; ++j) {
    if ((bits >> j) & 1U) idx |= std::size_t{1} << (n_wires - 1 - j);
  }
  return idx;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw InputError("fidelity: vector lengths differ");
  cd overlap(0.0, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::abs(overlap);
}

StateVector embed(const SparseState& state, int n_wires) {
  if (n_wires < state.num_qubits() || n_wires > kMaxStatevectorWires) throw InputError("embed: bad wire count");
  StateVector v(std::size_t{1} << n_wires, cd(0.0, 0.0));
  for (const auto& e : state.entries()) v[basis_index(e.label.bits(), state.num_qubits(), n_wires)] = e.amplitude;
  return v;
}

}  // namespace permweaver::sim
