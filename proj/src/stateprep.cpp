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

#include "permweaver/stateprep.hpp"

#include <bit>
#include <cmath>
#include <unordered_map>

#include "permweaver/errors.hpp"
#include "permweaver/mcx.hpp"
#include "permweaver/sim.hpp"
#include "permweaver/synth.hpp"

namespace permweaver {

namespace {

constexpr double kNegligibleAngle = 1e-14;

std::size_t gray(std::size_t i) { return i ^ (i >> 1); }

bool all_negligible(const std::vector<double>& v) {
  for (double a : v) {
    if (std::abs(a) > kNegligibleAngle) return false;
  }
  return true;
}

void add_rotation(Circuit& c, GateKind axis, double angle, int target) {
  if (std::abs(angle) <= kNegligibleAngle) return;
  if (axis == GateKind::RY) {
    c.ry(angle, target);
  } else {
    c.rz(angle, target);
  }
}

}  // namespace

PrepMethod parse_prep_method(std::string_view name) {
  if (name == "cluster" || name == "cluster_swaps") return PrepMethod::ClusterSwaps;
  if (name == "pairwise" || name == "pairwise_swaps") return PrepMethod::PairwiseSwaps;
  if (name == "dense" || name == "dense_all") return PrepMethod::DenseAll;
  throw InputError("method: unknown preparation method '" + std::string(name) + "'");
}

std::string_view method_name(PrepMethod m) {
  switch (m) {
    case PrepMethod::ClusterSwaps: return "cluster_swaps";
    case PrepMethod::PairwiseSwaps: return "pairwise_swaps";
    case PrepMethod::DenseAll: return "dense_all";
  }
  return "?";
}

void append_multiplexed_rotation(Circuit& c, GateKind axis, std::span<const double> angles,
                                 std::span<const int> controls, int target, bool reversed) {
  if (axis != GateKind::RY && axis != GateKind::RZ) throw InputError("multiplexed rotation: axis must be RY or RZ");
  const std::size_t k = controls.size();
  const std::size_t count = std::size_t{1} << k;
  if (angles.size() != count) throw InputError("multiplexed rotation: expected 2^k angles");
  if (k == 0) {
    add_rotation(c, axis, angles[0], target);
    return;
  }

  // theta_i = 2^-k * sum_p (-1)^{popcount(p & gray(i))} alpha_p
  std::vector<double> theta(count, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t g = gray(i);
    double acc = 0.0;
    for (std::size_t p = 0; p < count; ++p) acc += (std::popcount(p & g) & 1) ? -angles[p] : angles[p];
    theta[i] = acc / static_cast<double>(count);
  }

  auto control_after = [&](std::size_t i) {
    const std::size_t changed = gray(i) ^ gray((i + 1) % count);
    const int bit = std::countr_zero(changed);
    return controls[k - 1 - static_cast<std::size_t>(bit)];
  };

  if (!reversed) {
    for (std::size_t i = 0; i < count; ++i) {
      add_rotation(c, axis, theta[i], target);
      c.cx(control_after(i), target);
    }
  } else {
    for (std::size_t step = count; step-- > 0;) {
      c.cx(control_after(step), target);
      add_rotation(c, axis, theta[step], target);
    }
  }
}

Circuit dense_prepare(std::span<const std::complex<double>> amplitudes, std::span<const int> wires, int num_wires) {
  const std::size_t k = wires.size();
  if (k > static_cast<std::size_t>(kMaxQubits) || amplitudes.size() != (std::size_t{1} << k)) {
    throw InputError("dense_prepare: vector length must be 2^(number of wires)");
  }
  for (int w : wires) {
    if (w < 0 || w >= num_wires) throw InputError("dense_prepare: wire out of range");
  }
  double norm = 0.0;
  for (const auto& a : amplitudes) norm += std::norm(a);
  if (std::abs(norm - 1.0) > kNormTolerance) throw InputError("dense_prepare: amplitudes are not normalized");

  // Disentangle from the last wire upward; level q holds 2^q angle pairs.
  std::vector<std::vector<double>> ry_angles(k);
  std::vector<std::vector<double>> rz_angles(k);
  std::vector<std::complex<double>> cur(amplitudes.begin(), amplitudes.end());
  for (std::size_t q = k; q-- > 0;) {
    const std::size_t half = std::size_t{1} << q;
    std::vector<std::complex<double>> next(half);
    ry_angles[q].resize(half);
    rz_angles[q].resize(half);
    for (std::size_t p = 0; p < half; ++p) {
      const auto a0 = cur[2 * p];
      const auto a1 = cur[2 * p + 1];
      const double m0 = std::abs(a0);
      const double m1 = std::abs(a1);
      const double r = std::hypot(m0, m1);
      const double ph0 = m0 > 0 ? std::arg(a0) : 0.0;
      const double ph1 = m1 > 0 ? std::arg(a1) : ph0;
      const double ph0_eff = m0 > 0 ? ph0 : ph1;
      ry_angles[q][p] = 2.0 * std::atan2(m1, m0);
      rz_angles[q][p] = ph1 - ph0_eff;
      next[p] = std::polar(r, 0.5 * (ph0_eff + ph1));
    }
    cur = std::move(next);
  }

  Circuit c(num_wires, false);
  for (std::size_t q = 0; q < k; ++q) {
    const std::span<const int> ctrl = wires.subspan(0, q);
    const bool ry_on = !all_negligible(ry_angles[q]);
    const bool rz_on = !all_negligible(rz_angles[q]);
    if (ry_on) append_multiplexed_rotation(c, GateKind::RY, ry_angles[q], ctrl, wires[q]);
    if (rz_on) append_multiplexed_rotation(c, GateKind::RZ, rz_angles[q], ctrl, wires[q], ry_on);
  }
  return peephole_simplify(std::move(c));
}

Circuit pairwise_decompose(const PermutationSpec& spec) {
  const int n = spec.num_qubits();
  const Word full = low_mask(n);
  std::unordered_map<Word, std::size_t> occupant;  // position -> row currently there
  std::vector<Word> position;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    position.push_back(spec.pairs()[i].source.bits());
    occupant[position.back()] = i;
  }
  std::vector<Gate> gates;
  bool needs_ancilla = false;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    const Word from = position[i];
    const Word to = spec.pairs()[i].destination.bits();
    if (from == to) continue;
    auto [block, circuit] = emit_swap_block(Pattern(n, full, from), Pattern(n, full, to));
    needs_ancilla = needs_ancilla || block.controls.size() >= 3;
    for (const auto& g : circuit.gates()) gates.push_back(g);

    occupant.erase(from);
    if (auto it = occupant.find(to); it != occupant.end()) {
      const std::size_t displaced = it->second;
      position[displaced] = from;
      occupant[from] = displaced;
    }
    position[i] = to;
    occupant[to] = i;
  }
  Circuit c(n, needs_ancilla);
  for (auto& g : gates) c.add(std::move(g));
  return c;
}

PrepPlan plan_cluster_permutation(const SparseState& state) {
  const Pattern root = find_initial_shc(state);
  SplitTree tree = cover_with_shcs(state, root);
  PermutationSpec spec = recover_permutation(tree, state);
  return {root, std::move(tree), std::move(spec)};
}

namespace {

Circuit swap_scaffold(const SparseState& state, const PrepPlan& plan, const Circuit& permutation) {
  const int n = state.num_qubits();
  const auto wires = plan.root.spanned_dims();
  const std::size_t k = wires.size();

  std::unordered_map<Word, std::complex<double>> amp_of;
  for (const auto& e : state.entries()) amp_of.emplace(e.label.bits(), e.amplitude);
  std::vector<std::complex<double>> dense(std::size_t{1} << k, 0.0);
  for (const auto& p : plan.spec.pairs()) {
    std::size_t idx = 0;
    for (std::size_t r = 0; r < k; ++r) {
      if (p.source.bit(wires[r])) idx |= std::size_t{1} << (k - 1 - r);
    }
    dense[idx] = amp_of.at(p.destination.bits());
  }

  const Circuit lowered = lower_circuit(permutation);
  Circuit c(n, lowered.has_ancilla());
  for (int q : plan.root.fixed_dims()) {
    if (plan.root.value() & bit_of(q)) c.x(q);
  }
  c.append(dense_prepare(dense, wires, n));
  c.append(lowered);
  return peephole_simplify(std::move(c));
}

}  // namespace

Circuit cluster_swaps_prepare(const SparseState& state) {
  const PrepPlan plan = plan_cluster_permutation(state);
  return swap_scaffold(state, plan, decompose_permutation(plan.spec));
}

Circuit pairwise_prepare(const SparseState& state) {
  const PrepPlan plan = plan_cluster_permutation(state);
  return swap_scaffold(state, plan, pairwise_decompose(plan.spec));
}

Circuit dense_all_prepare(const SparseState& state) {
  const int n = state.num_qubits();
  if (n > 24) throw InputError("dense_all_prepare: too many qubits for a dense vector");
  std::vector<std::complex<double>> dense(std::size_t{1} << n, 0.0);
  for (const auto& e : state.entries()) dense[sim::basis_index(e.label.bits(), n, n)] = e.amplitude;
  std::vector<int> wires(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) wires[static_cast<std::size_t>(q)] = q;
  return dense_prepare(dense, wires, n);
}

Circuit prepare(const SparseState& state, PrepMethod method) {
  switch (method) {
    case PrepMethod::ClusterSwaps: return cluster_swaps_prepare(state);
    case PrepMethod::PairwiseSwaps: return pairwise_prepare(state);
    case PrepMethod::DenseAll: return dense_all_prepare(state);
  }
  throw InputError("prepare: unknown method");
}

}  // namespace permweaver
