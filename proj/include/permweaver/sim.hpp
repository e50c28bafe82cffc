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

#include <complex>
#include <vector>

#include "permweaver/circuit.hpp"
#include "permweaver/core.hpp"

namespace permweaver::sim {

// Basis ordering for dense vectors: wire 0 is the most significant bit of
// the state index.

inline constexpr int kMaxStatevectorWires = 16;
inline constexpr int kMaxUnitaryWires = 8;

using StateVector = std::vector<std::complex<double>>;

/// Row-major 2^n x 2^n matrix.
struct Matrix {
  std::size_t dim = 0;
  std::vector<std::complex<double>> data;

  std::complex<double>& operator()(std::size_t r, std::size_t c) { return data[r * dim + c]; }
  const std::complex<double>& operator()(std::size_t r, std::size_t c) const { return data[r * dim + c]; }
};

/// Image of a basis label under a permutation-level circuit. The label width
/// must be num_main() (ancilla starts and must end at 0) or num_wires().
BitLabel simulate_permutation(const Circuit& c, const BitLabel& label);

/// Raw word variant over all wires (bit j = wire j).
Word simulate_permutation_word(const Circuit& c, Word bits);

/// Applies the circuit to |0...0> on `n_wires` wires.
StateVector statevector(const Circuit& c, int n_wires);

/// Applies the circuit in place to an arbitrary input vector of 2^n_wires entries.
void apply(const Circuit& c, int n_wires, StateVector& state);

Matrix unitary(const Circuit& c, int n_wires);

/// State index of a label on `n_wires` wires (extra low wires set to 0).
std::size_t basis_index(Word bits, int label_width, int n_wires);

/// |<a|b>|, insensitive to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// Dense vector for a sparse state embedded into `n_wires` >= n wires
/// (extra wires, such as an ancilla, in |0>).
StateVector embed(const SparseState& state, int n_wires);

}  // namespace permweaver::sim
