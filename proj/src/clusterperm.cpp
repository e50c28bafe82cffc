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

#include "permweaver/clusterperm.hpp"

#include <algorithm>
#include <unordered_map>

#include "permweaver/errors.hpp"

namespace permweaver {

namespace {

std::vector<Word> conforming(std::span<const Word> labels, const Pattern& p) {
  std::vector<Word> out;
  for (Word l : labels) {
    if (p.contains(l)) out.push_back(l);
  }
  return out;
}

}  // namespace

Pattern greedy_dense_shc(std::span<const Word> labels, int n, int num_spanned) {
  if (num_spanned < 0 || num_spanned > n) throw InputError("greedy_dense_shc: bad spanned dimension count");
  Pattern shc = Pattern::all_wildcards(n);
  std::vector<Word> kept(labels.begin(), labels.end());
  for (int step = 0; step < n - num_spanned; ++step) {
    Pattern best;
    std::vector<Word> best_kept;
    Rational best_adj;
    bool have = false;
    for (int dim : shc.spanned_dims()) {
      for (int v = 0; v < 2; ++v) {
        const Pattern cand = shc.with_fixed(dim, v == 1);
        std::vector<Word> cand_kept = conforming(kept, cand);
        if (have && cand_kept.size() < best_kept.size()) continue;
        const Rational adj = avg_adjacent_nonzero_words(cand_kept);
        if (have && cand_kept.size() == best_kept.size() && !(adj > best_adj)) continue;
        best = cand;
        best_kept = std::move(cand_kept);
        best_adj = adj;
        have = true;
      }
    }
    shc = best;
    kept = std::move(best_kept);
  }
  return shc;
}

Pattern find_initial_shc(const SparseState& state) {
  const int n = state.num_qubits();
  const int dense_dims = ceil_log2(state.size());
  if (dense_dims > n) throw InputError("find_initial_shc: more amplitudes than basis states");
  const auto labels = state.label_words();
  return greedy_dense_shc(labels, n, dense_dims);
}

SplitTree cover_with_shcs(const SparseState& state, const Pattern& root) {
  const int n = state.num_qubits();
  if (root.size() != n) throw InputError("cover_with_shcs: root width differs from state");
  const auto labels = state.label_words();
  const std::size_t m = labels.size();
  if (root.capacity() < m) throw InputError("cover_with_shcs: root SHC too small for the state");

  std::unordered_map<Word, int> owner;
  for (Word l : labels) owner[l] = -1;

  SplitTree tree;
  SplitNode r;
  r.current = root;
  r.home = root;
  r.covered = conforming(labels, root);
  for (Word l : r.covered) owner[l] = 0;
  tree.nodes.push_back(std::move(r));
  std::vector<int> active{0};

  auto uncovered = [&] {
    std::vector<Word> out;
    for (Word l : labels) {
      if (owner[l] < 0) out.push_back(l);
    }
    return out;
  };

  std::vector<Word> remaining = uncovered();
  while (!remaining.empty()) {
    if (tree.splits >= static_cast<int>(2 * m)) throw StateError("cover_with_shcs: split budget exceeded");

    // Sparsest leaf; `active` is in insertion order so the first maximum wins.
    std::size_t pick = 0;
    std::uint64_t pick_sparsity = 0;
    for (std::size_t i = 0; i < active.size(); ++i) {
      const auto& nd = tree.nodes[static_cast<std::size_t>(active[i])];
      const std::uint64_t sparsity = nd.current.capacity() - nd.covered.size();
      if (i == 0 || sparsity > pick_sparsity) {
        pick = i;
        pick_sparsity = sparsity;
      }
    }
    const int parent_id = active[pick];
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(pick));
    const SplitNode parent = tree.nodes[static_cast<std::size_t>(parent_id)];

    const auto cur_dims = parent.current.spanned_dims();
    const auto home_dims = parent.home.spanned_dims();
    if (cur_dims.empty()) throw StateError("cover_with_shcs: sparsest leaf cannot be split");

    std::size_t best_ordinal = 0;
    bool best_value = false;
    std::size_t best_count = 0;
    bool have = false;
    for (std::size_t ord = 0; ord < cur_dims.size(); ++ord) {
      for (int v = 0; v < 2; ++v) {
        std::size_t count = 0;
        for (Word l : parent.covered) count += ((l >> cur_dims[ord]) & 1U) == static_cast<Word>(v) ? 1 : 0;
        if (!have || count > best_count) {
          best_ordinal = ord;
          best_value = v == 1;
          best_count = count;
          have = true;
        }
      }
    }

    SplitNode first;
    first.current = parent.current.with_fixed(cur_dims[best_ordinal], best_value);
    first.home = parent.home.with_fixed(home_dims[best_ordinal], best_value);
    first.parent = parent_id;
    SplitNode second;
    second.current = parent.current.with_fixed(cur_dims[best_ordinal], !best_value);
    second.home = parent.home.with_fixed(home_dims[best_ordinal], !best_value);
    second.parent = parent_id;
    for (Word l : parent.covered) {
      (first.current.contains(l) ? first.covered : second.covered).push_back(l);
    }

    if (second.covered.empty()) {
      const auto free_labels = uncovered();
      second.current = greedy_dense_shc(free_labels, n, second.current.num_spanned());
      second.covered = conforming(free_labels, second.current);
      second.relocated = true;
      ++tree.relocations;
    }

    const int first_id = static_cast<int>(tree.nodes.size());
    for (Word l : first.covered) owner[l] = first_id;
    tree.nodes.push_back(std::move(first));
    active.push_back(first_id);
    tree.nodes[static_cast<std::size_t>(parent_id)].children.push_back(first_id);

    if (!second.covered.empty()) {
      const int second_id = static_cast<int>(tree.nodes.size());
      for (Word l : second.covered) owner[l] = second_id;
      tree.nodes.push_back(std::move(second));
      active.push_back(second_id);
      tree.nodes[static_cast<std::size_t>(parent_id)].children.push_back(second_id);
    }
    ++tree.splits;
    remaining = uncovered();
  }
  tree.leaves = active;
  return tree;
}

PermutationSpec recover_permutation(const SplitTree& tree, const SparseState& state) {
  const int n = state.num_qubits();
  std::unordered_map<Word, Word> source_of;
  for (int id : tree.leaves) {
    const auto& leaf = tree.nodes.at(static_cast<std::size_t>(id));
    const auto cur = leaf.current.spanned_dims();
    const auto home = leaf.home.spanned_dims();
    for (Word l : leaf.covered) {
      Word src = leaf.home.value();
      for (std::size_t r = 0; r < cur.size(); ++r) {
        if ((l >> cur[r]) & 1U) src |= bit_of(home[r]);
      }
      if (!source_of.emplace(l, src).second) throw StateError("recover_permutation: label covered twice");
    }
  }
  std::vector<LabelPair> pairs;
  std::vector<Word> used;
  for (const auto& e : state.entries()) {
    auto it = source_of.find(e.label.bits());
    if (it == source_of.end()) throw StateError("recover_permutation: label " + e.label.str() + " is not covered");
    pairs.push_back({BitLabel(n, it->second), e.label});
    used.push_back(it->second);
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
    throw StateError("recover_permutation: two labels share a dense slot");
  }
  return PermutationSpec(n, std::move(pairs));
}

}  // namespace permweaver
