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

#include "permweaver/mcx.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "permweaver/core.hpp"
#include "permweaver/errors.hpp"

namespace permweaver {

namespace {

using Gates = std::vector<Gate>;

void x(Gates& out, int t) { out.push_back({GateKind::X, t, {}, 0.0}); }
void cx(Gates& out, int c, int t) { out.push_back({GateKind::X, t, {{c, true}}, 0.0}); }
void h(Gates& out, int t) { out.push_back({GateKind::H, t, {}, 0.0}); }
void t_(Gates& out, int t) { out.push_back({GateKind::T, t, {}, 0.0}); }
void tdg(Gates& out, int t) { out.push_back({GateKind::Tdg, t, {}, 0.0}); }

// Exact Toffoli, 6 CX.
void ccx(Gates& out, int a, int b, int t) {
  h(out, t);
  cx(out, b, t);
  tdg(out, t);
  cx(out, a, t);
  t_(out, t);
  cx(out, b, t);
  tdg(out, t);
  cx(out, a, t);
  t_(out, b);
  t_(out, t);
  h(out, t);
  cx(out, a, b);
  t_(out, a);
  tdg(out, b);
  cx(out, a, b);
}

// Toffoli up to a diagonal phase on (a, b, t), 3 CX. Self-inverse.
void rccx(Gates& out, int a, int b, int t) {
  h(out, t);
  t_(out, t);
  cx(out, b, t);
  tdg(out, t);
  cx(out, a, t);
  t_(out, t);
  cx(out, b, t);
  tdg(out, t);
  h(out, t);
}

void toffoli(Gates& out, int a, int b, int t, bool exact) {
  if (exact) {
    ccx(out, a, b, t);
  } else {
    rccx(out, a, b, t);
  }
}

void append_inverse(Gates& out, const Gates& seq) {
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(it->inverse());
}

// Toggle ladder: anc[j-2] ^= AND(c[0..j-1]), borrowing anc[0..j-3]; all
// Toffolis relative-phase.
void ladder(Gates& out, std::span<const int> c, std::span<const int> anc, std::size_t j) {
  if (j == 2) {
    rccx(out, c[0], c[1], anc[0]);
    return;
  }
  rccx(out, c[j - 1], anc[j - 3], anc[j - 2]);
  ladder(out, c, anc, j - 1);
  rccx(out, c[j - 1], anc[j - 3], anc[j - 2]);
}

// target ^= AND(c), borrowing c.size() - 2 dirty wires. With exact == false
// the result is correct up to a diagonal phase.
void borrowed_mcx(Gates& out, std::span<const int> c, std::span<const int> dirty, int target, bool exact) {
  const std::size_t k = c.size();
  if (k == 0) {
    x(out, target);
    return;
  }
  if (k == 1) {
    cx(out, c[0], target);
    return;
  }
  if (k == 2) {
    toffoli(out, c[0], c[1], target, exact);
    return;
  }
  if (dirty.size() < k - 2) throw InputError("mcx: not enough borrowed wires");
  Gates toggle;
  ladder(toggle, c.first(k - 1), dirty, k - 1);
  toffoli(out, c[k - 1], dirty[k - 3], target, exact);
  out.insert(out.end(), toggle.begin(), toggle.end());
  toffoli(out, c[k - 1], dirty[k - 3], target, exact);
  append_inverse(out, toggle);
}

// `pool` holds every wire that may be borrowed: the ancilla first, then idle
// main wires.
void positive_mcx(Gates& out, const std::vector<int>& c, int target, const std::vector<int>& pool) {
  const std::size_t k = c.size();
  if (k <= 2 || pool.size() + 2 >= k) {
    borrowed_mcx(out, c, pool, target, true);
    return;
  }
  const int anc = pool.front();
  const std::vector<int> rest(pool.begin() + 1, pool.end());
  const std::size_t m1 = (k + 1) / 2;
  const std::vector<int> g1(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(m1));
  const std::vector<int> g2(c.begin() + static_cast<std::ptrdiff_t>(m1), c.end());

  std::vector<int> b_controls = g2;
  b_controls.push_back(anc);
  std::vector<int> b_dirty = g1;
  b_dirty.insert(b_dirty.end(), rest.begin(), rest.end());
  std::vector<int> a_dirty = g2;
  a_dirty.push_back(target);
  a_dirty.insert(a_dirty.end(), rest.begin(), rest.end());

  Gates b;
  borrowed_mcx(b, b_controls, b_dirty, target, true);
  Gates a;
  borrowed_mcx(a, g1, a_dirty, anc, false);

  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  append_inverse(out, a);
}

}  // namespace

Circuit mcx_to_cx(std::span<const Control> controls, int target, std::optional<int> ancilla,
                  std::span<const int> spare) {
  int max_wire = target;
  std::vector<int> wires{target};
  for (const auto& ctl : controls) {
    wires.push_back(ctl.qubit);
    max_wire = std::max(max_wire, ctl.qubit);
  }
  std::vector<int> pool;
  if (controls.size() >= 3) {
    if (ancilla) pool.push_back(*ancilla);
    pool.insert(pool.end(), spare.begin(), spare.end());
    if (pool.empty()) throw InputError("mcx: three or more controls require an ancilla wire");
  }
  for (int w : pool) {
    wires.push_back(w);
    max_wire = std::max(max_wire, w);
  }
  std::sort(wires.begin(), wires.end());
  if (std::adjacent_find(wires.begin(), wires.end()) != wires.end()) throw InputError("mcx: wires are not distinct");
  if (wires.front() < 0) throw InputError("mcx: negative wire index");

  Gates gates;
  std::vector<int> positive;
  for (const auto& ctl : controls) {
    if (!ctl.polarity) x(gates, ctl.qubit);
    positive.push_back(ctl.qubit);
  }
  positive_mcx(gates, positive, target, pool);
  for (const auto& ctl : controls) {
    if (!ctl.polarity) x(gates, ctl.qubit);
  }

  Circuit out(max_wire + 1);
  for (auto& g : gates) out.add(std::move(g));
  return peephole_simplify(std::move(out));
}

int mcx_cx_cost(int num_controls, int num_spare) {
  if (num_controls < 0) throw InputError("mcx_cx_cost: negative control count");
  if (num_spare < 0) throw InputError("mcx_cx_cost: negative spare wire count");
  // Beyond c - 3 spare wires the construction no longer changes.
  num_spare = std::min(num_spare, std::max(num_controls - 3, 0));
  const auto key = std::make_pair(num_controls, num_spare);
  static std::shared_mutex mutex;
  static std::map<std::pair<int, int>, int> memo;
  {
    std::shared_lock lock(mutex);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  std::vector<Control> controls;
  for (int q = 0; q < num_controls; ++q) controls.push_back({q, true});
  std::vector<int> spare;
  for (int q = 0; q < num_spare; ++q) spare.push_back(num_controls + 2 + q);
  const int cost = cx_count(mcx_to_cx(controls, num_controls, num_controls + 1, spare));
  std::unique_lock lock(mutex);
  memo.emplace(key, cost);
  return cost;
}

Circuit lower_circuit(const Circuit& c) {
  Circuit out(c.num_main(), c.has_ancilla());
  const std::optional<int> ancilla = c.has_ancilla() ? std::optional<int>(c.ancilla()) : std::nullopt;
  std::vector<bool> busy(static_cast<std::size_t>(c.num_wires()));
  for (const auto& g : c.gates()) {
    if (g.is_lowered()) {
      out.add(g);
      continue;
    }
    if (g.controls.size() >= 3 && !ancilla) throw InputError("lower: MCX with three or more controls needs an ancilla");
    std::fill(busy.begin(), busy.end(), false);
    busy[static_cast<std::size_t>(g.target)] = true;
    for (const auto& ctl : g.controls) busy[static_cast<std::size_t>(ctl.qubit)] = true;
    std::vector<int> spare;
    for (int q = 0; q < c.num_main(); ++q) {
      if (!busy[static_cast<std::size_t>(q)]) spare.push_back(q);
    }
    out.append(mcx_to_cx(g.controls, g.target, ancilla, spare));
  }
  return out;
}

}  // namespace permweaver
