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

#include "permweaver/synth.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "permweaver/errors.hpp"
#include "permweaver/mcx.hpp"

namespace permweaver {

namespace {

std::vector<int> positions(Word mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

Word mask_of(const std::vector<int>& dims) {
  Word m = 0;
  for (int d : dims) m |= bit_of(d);
  return m;
}

struct Node {
  Word key = 0;
  std::vector<Word> labels;
  std::vector<int> column_sums;  // aligned with fixed_dims
};

}  // namespace

std::vector<int> Block::flip_set() const { return positions(flip_mask); }
std::vector<int> ShcEdge::flip_set() const { return positions(flip_mask); }

std::pair<Block, Circuit> emit_swap_block(const Pattern& shc1, const Pattern& shc2, std::optional<int> target_dim) {
  if (shc1.size() != shc2.size()) throw InputError("emit_swap_block: pattern widths differ");
  if (shc1.fixed_mask() != shc2.fixed_mask()) throw InputError("emit_swap_block: patterns differ in wildcard positions");
  const Word flip = shc1.value() ^ shc2.value();
  if (flip == 0) throw InputError("emit_swap_block: patterns are identical");
  const int target = target_dim.value_or(std::countr_zero(flip));
  if (target < 0 || target >= shc1.size() || !(flip & bit_of(target))) {
    throw InputError("emit_swap_block: target dimension is not a flipped position");
  }

  Block b{shc1, shc2, flip, target, {}};
  const bool target_value = shc1.value() & bit_of(target);
  for (int q : shc1.fixed_dims()) {
    if (q == target) continue;
    bool pol = shc1.value() & bit_of(q);
    // Under the CX(target -> q) conjugation the first SHC's value at q reads
    // as value[q] XOR value[target].
    if (flip & bit_of(q)) pol = pol != target_value;
    b.controls.push_back({q, pol});
  }

  const int n = shc1.size();
  Circuit c(n, b.controls.size() >= 3);
  const std::vector<int> others = positions(flip & ~bit_of(target));
  for (int j : others) c.cx(target, j);
  c.mcx(b.controls, target);
  for (auto it = others.rbegin(); it != others.rend(); ++it) c.cx(target, *it);
  return {std::move(b), std::move(c)};
}

int block_cx_cost(int num_flipped, int num_fixed, int n) {
  // Wires outside the block's fixed positions are borrowable during lowering.
  return 2 * (num_flipped - 1) + mcx_cx_cost(num_fixed - 1, n - num_fixed);
}

int block_cx_cost(const Block& b) {
  return block_cx_cost(std::popcount(b.flip_mask), static_cast<int>(b.controls.size()) + 1, b.shc1.size());
}

const ShcEdge* ShcGraph::edge(const Pattern& from, const Pattern& to) const {
  for (const auto& e : edges) {
    if (e.source == from && e.destination == to) return &e;
  }
  return nullptr;
}

ShcGraph form_shc_graph(const DifferenceMatrix& dm, std::vector<int> fixed_dims) {
  std::sort(fixed_dims.begin(), fixed_dims.end());
  if (fixed_dims.empty()) throw InputError("form_shc_graph: no fixed dimensions");
  if (std::adjacent_find(fixed_dims.begin(), fixed_dims.end()) != fixed_dims.end()) {
    throw InputError("form_shc_graph: repeated fixed dimension");
  }
  const int n = dm.num_qubits();
  if (fixed_dims.front() < 0 || fixed_dims.back() >= n) throw InputError("form_shc_graph: dimension out of range");
  const Word fixed = mask_of(fixed_dims);
  const std::size_t k = fixed_dims.size();

  std::vector<std::pair<Word, std::size_t>> keyed;
  keyed.reserve(dm.num_rows());
  for (std::size_t i = 0; i < dm.num_rows(); ++i) keyed.emplace_back(dm.row(i).current & fixed, i);
  std::sort(keyed.begin(), keyed.end());

  std::vector<Node> nodes;
  for (std::size_t i = 0; i < keyed.size();) {
    Node node;
    node.key = keyed[i].first;
    node.column_sums.assign(k, 0);
    std::size_t j = i;
    for (; j < keyed.size() && keyed[j].first == node.key; ++j) {
      const DiffRow& r = dm.row(keyed[j].second);
      node.labels.push_back(r.current);
      for (std::size_t d = 0; d < k; ++d) node.column_sums[d] += (r.errors >> fixed_dims[d]) & 1U ? 1 : -1;
    }
    nodes.push_back(std::move(node));
    i = j;
  }

  auto find_node = [&](Word key) -> const Node* {
    auto it = std::lower_bound(nodes.begin(), nodes.end(), key, [](const Node& nd, Word v) { return nd.key < v; });
    return (it != nodes.end() && it->key == key) ? &*it : nullptr;
  };

  ShcGraph g;
  g.fixed_dims = fixed_dims;
  for (const auto& node : nodes) {
    const Pattern source(n, fixed, node.key);
    g.nodes.push_back(source);
    const Rational adjacency = avg_adjacent_nonzero_words(node.labels);

    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return node.column_sums[a] > node.column_sums[b]; });

    Word flip = 0;
    int cumulative = 0;
    for (std::size_t p = 0; p < k; ++p) {
      const int s = node.column_sums[order[p]];
      if (p > 0 && s <= 0) break;
      cumulative += s;
      flip |= bit_of(fixed_dims[order[p]]);

      ShcEdge e;
      e.source = source;
      e.destination = source.flipped(flip);
      e.flip_mask = flip;
      e.forward = cumulative;
      if (const Node* dest = find_node(node.key ^ flip)) {
        e.destination_empty = false;
        for (std::size_t d = 0; d < k; ++d) {
          if (flip & bit_of(fixed_dims[d])) e.backward += dest->column_sums[d];
        }
      }
      e.cx_cost = block_cx_cost(static_cast<int>(p) + 1, static_cast<int>(k), n);
      e.final_weight = Rational{e.raw_weight(), std::max(e.cx_cost, 1)};
      e.source_avg_adjacent = adjacency;
      g.edges.push_back(e);
    }
  }
  return g;
}

bool edge_better(const ShcEdge& a, const ShcEdge& b) {
  if (auto c = a.final_weight <=> b.final_weight; c != 0) return c > 0;
  if (a.forward != b.forward) return a.forward > b.forward;
  if (auto c = a.source_avg_adjacent <=> b.source_avg_adjacent; c != 0) return c > 0;
  const auto fa = positions(a.source.fixed_mask());
  const auto fb = positions(b.source.fixed_mask());
  if (fa != fb) return fa < fb;
  const auto sa = a.source.str();
  const auto sb = b.source.str();
  if (sa != sb) return sa < sb;
  return a.flip_set() < b.flip_set();
}

const ShcEdge& best_edge(const ShcGraph& g) {
  if (g.edges.empty()) throw StateError("best_edge: graph has no edges");
  const ShcEdge* best = &g.edges.front();
  for (const auto& e : g.edges) {
    if (edge_better(e, *best)) best = &e;
  }
  return *best;
}

SynthesisResult synthesize_permutation(const PermutationSpec& spec) {
  const int n = spec.num_qubits();
  const int m = static_cast<int>(spec.size());
  DifferenceMatrix dm(spec);
  SynthesisResult result;
  result.errors_trace.push_back(dm.total_errors());
  std::vector<Gate> gates;
  bool needs_ancilla = false;

  // Progress is guaranteed; this bound only turns a logic bug into an error.
  const int hard_cap = 64 * (n + m) + 64;

  auto emit = [&](const Pattern& a, const Pattern& b) {
    auto [block, circuit] = emit_swap_block(a, b);
    needs_ancilla = needs_ancilla || block.controls.size() >= 3;
    for (const auto& gate : circuit.gates()) gates.push_back(gate);
    dm.apply_block(a, b);
    result.blocks.push_back(std::move(block));
    ++result.swaps;
  };

  while (dm.total_errors() > 0) {
    if (result.swaps >= hard_cap) throw StateError("synthesize_permutation: swap budget exhausted");

    std::optional<ShcEdge> best;
    std::vector<int> fixed;
    for (int k = 1; k <= n; ++k) {
      std::optional<ShcEdge> best_k;
      std::vector<int> best_fixed;
      for (int dim = 0; dim < n; ++dim) {
        if (std::find(fixed.begin(), fixed.end(), dim) != fixed.end()) continue;
        std::vector<int> candidate = fixed;
        candidate.push_back(dim);
        const ShcGraph g = form_shc_graph(dm, candidate);
        const ShcEdge& e = best_edge(g);
        if (!best_k || edge_better(e, *best_k)) {
          best_k = e;
          best_fixed = g.fixed_dims;
        }
      }
      fixed = best_fixed;
      if (!best || edge_better(*best_k, *best)) best = best_k;
    }

    const int errors_before = dm.total_errors();
    const int unfinished_before = dm.unfinished_rows();
    const DifferenceMatrix trial = apply_block(dm, best->source, best->destination);
    const int errors_after = trial.total_errors();
    const bool progress = errors_after < errors_before ||
                          (errors_after == errors_before && trial.unfinished_rows() < unfinished_before);
    if (progress) {
      emit(best->source, best->destination);
    } else {
      // Livelock safeguard: move one unfinished row straight to its destination.
      ++result.fallbacks;
      for (const auto& r : dm.rows()) {
        if (r.errors != 0) {
          emit(Pattern(n, low_mask(n), r.current), Pattern(n, low_mask(n), r.destination));
          break;
        }
      }
    }
    if (dm.total_errors() > errors_before) throw StateError("synthesize_permutation: a swap increased the error count");
    result.errors_trace.push_back(dm.total_errors());
  }

  Circuit c(n, needs_ancilla);
  for (auto& g : gates) c.add(std::move(g));
  result.circuit = std::move(c);
  return result;
}

}  // namespace permweaver
