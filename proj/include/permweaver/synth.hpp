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
#include <utility>
#include <vector>

#include "permweaver/circuit.hpp"
#include "permweaver/core.hpp"
#include "permweaver/diffmatrix.hpp"

namespace permweaver {

/// A single-block swap of two SHCs with equal wildcard positions: one MCX on
/// `target_dim`, conjugated by CX(target_dim -> j) for the other flipped
/// positions j.
struct Block {
  Pattern shc1;
  Pattern shc2;
  Word flip_mask = 0;
  int target_dim = 0;
  std::vector<Control> controls;

  std::vector<int> flip_set() const;
};

/// Builds the block swapping `shc1` and `shc2` element-wise. The MCX target
/// defaults to the smallest flipped position. Throws InputError on a
/// wildcard mismatch, identical patterns, or a target outside the flip set.
std::pair<Block, Circuit> emit_swap_block(const Pattern& shc1, const Pattern& shc2,
                                          std::optional<int> target_dim = std::nullopt);

/// 2 * (|flip_set| - 1) + mcx_cx_cost(|controls|, spare), where the spare
/// wires are the block's spanned positions. Equals the CX count of the
/// lowered block.
int block_cx_cost(const Block& b);

/// Same cost from the shape alone on `n` main wires.
int block_cx_cost(int num_flipped, int num_fixed, int n);

struct ShcEdge {
  Pattern source;
  Pattern destination;
  Word flip_mask = 0;
  int forward = 0;
  int backward = 0;
  int cx_cost = 0;
  Rational final_weight;
  Rational source_avg_adjacent;
  bool destination_empty = true;

  int raw_weight() const { return forward + backward; }
  std::vector<int> flip_set() const;
};

/// Candidate swaps among SHCs fixed exactly on `fixed_dims`.
struct ShcGraph {
  std::vector<int> fixed_dims;  ///< ascending
  std::vector<Pattern> nodes;   ///< non-empty SHCs, ascending by fixed value
  std::vector<ShcEdge> edges;

  const ShcEdge* edge(const Pattern& from, const Pattern& to) const;
};

/// Builds the graph: per non-empty node, signed column sums over its rows at
/// each fixed dimension, sorted descending (ties by position); one edge per
/// prefix of that order as long as the cumulative sum strictly increases,
/// always at least one. Final weight divides forward + backward by the
/// block's CX cost, taking cost 0 as 1.
ShcGraph form_shc_graph(const DifferenceMatrix& dm, std::vector<int> fixed_dims);

/// Total order used for edge selection: true if `a` is strictly better.
/// Keys: final weight, forward weight, source average adjacency (all higher
/// is better), then lexicographically smaller (fixed dims, source pattern,
/// flip set).
bool edge_better(const ShcEdge& a, const ShcEdge& b);

/// Throws StateError if the graph has no edge.
const ShcEdge& best_edge(const ShcGraph& g);

struct SynthesisResult {
  Circuit circuit;                ///< permutation level (X/CX/MCX)
  std::vector<Block> blocks;      ///< in emission order
  std::vector<int> errors_trace;  ///< total_errors before the first swap and after each swap
  int swaps = 0;
  int fallbacks = 0;  ///< livelock safeguard firings
};

/// Greedy dimension-fixing decomposition of a partial permutation into swap
/// blocks. The returned circuit maps every source to its destination; it
/// reserves an ancilla wire when some block has three or more controls.
SynthesisResult synthesize_permutation(const PermutationSpec& spec);

inline Circuit decompose_permutation(const PermutationSpec& spec) { return synthesize_permutation(spec).circuit; }

}  // namespace permweaver
