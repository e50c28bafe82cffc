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
#include <span>
#include <string_view>
#include <vector>

#include "permweaver/circuit.hpp"
#include "permweaver/clusterperm.hpp"
#include "permweaver/core.hpp"

namespace permweaver {

enum class PrepMethod { ClusterSwaps, PairwiseSwaps, DenseAll };

/// "cluster", "pairwise", "dense"; also accepts the benchmark spellings
/// "cluster_swaps", "pairwise_swaps", "dense_all". Throws InputError.
PrepMethod parse_prep_method(std::string_view name);
/// Benchmark spelling: cluster_swaps / pairwise_swaps / dense_all.
std::string_view method_name(PrepMethod m);

/// Uniformly controlled rotation: for each control assignment p (controls[0]
/// is the most significant bit of p) applies RY/RZ(angles[p]) to `target`.
/// Gray-code form with 2^k CX gates; `reversed` emits the gates in reverse
/// order, which realizes the same operator.
void append_multiplexed_rotation(Circuit& c, GateKind axis, std::span<const double> angles,
                                 std::span<const int> controls, int target, bool reversed = false);

/// Circuit of width `num_wires` taking |0..0> on `wires` to the given vector
/// (up to global phase); the bit of wires[0] is the most significant index
/// bit. Throws InputError unless the vector has 2^|wires| entries and unit
/// norm within 1e-10.
Circuit dense_prepare(std::span<const std::complex<double>> amplitudes, std::span<const int> wires, int num_wires);

/// Permutation-level circuit of single-label transpositions realizing the
/// spec; cycles of length k take k - 1 transpositions.
Circuit pairwise_decompose(const PermutationSpec& spec);

/// Intermediate products of the swap-based pipelines.
struct PrepPlan {
  Pattern root;
  SplitTree tree;
  PermutationSpec spec;  ///< dense source -> target label
};

PrepPlan plan_cluster_permutation(const SparseState& state);

/// X on the root's fixed 1s, dense prep on the root's spanned wires, then the
/// lowered swap-block permutation. Lowered and peephole-simplified.
Circuit cluster_swaps_prepare(const SparseState& state);

/// Same scaffold with the permutation built by pairwise_decompose.
Circuit pairwise_prepare(const SparseState& state);

/// dense_prepare over all n wires of the zero-padded vector.
Circuit dense_all_prepare(const SparseState& state);

Circuit prepare(const SparseState& state, PrepMethod method);

}  // namespace permweaver
