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

#include <span>
#include <vector>

#include "permweaver/core.hpp"

namespace permweaver {

struct SplitNode {
  Pattern current;  ///< region the node covers now
  Pattern home;     ///< region inside the root it is mapped back to
  int parent = -1;
  std::vector<int> children;
  std::vector<Word> covered;  ///< labels assigned to this node, ascending
  bool relocated = false;
};

/// Splitting tree over the dense root SHC. `leaves` is the final leaf list
/// in insertion order; each nonzero label is assigned to exactly one leaf.
struct SplitTree {
  std::vector<SplitNode> nodes;
  std::vector<int> leaves;
  int root = 0;
  int splits = 0;
  int relocations = 0;
};

/// Greedy dimension fixing: from all-wildcards, repeatedly fix the (dim,
/// value) keeping the most labels until `num_spanned` wildcards remain. Ties
/// go to higher average adjacency of the kept labels, then lower dimension,
/// then value 0.
Pattern greedy_dense_shc(std::span<const Word> labels, int n, int num_spanned);

/// The ceil(log2 m)-dimensional starting SHC holding the most nonzero labels.
Pattern find_initial_shc(const SparseState& state);

/// Repeatedly splits the sparsest leaf along the spanned dimension that keeps
/// the most labels in the first child; an empty second child is moved
/// (positions and values) onto the largest still-uncovered group. Stops once
/// every nonzero label is covered.
SplitTree cover_with_shcs(const SparseState& state, const Pattern& root);

/// Pairs (dense label in the root -> original nonzero label). A label l in a
/// leaf maps to the leaf's home fixed values with home wildcards filled, in
/// ascending order, from l's bits at the leaf's current wildcards. Pairs are
/// ordered like the state's entries.
PermutationSpec recover_permutation(const SplitTree& tree, const SparseState& state);

}  // namespace permweaver
