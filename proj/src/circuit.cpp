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

#include "permweaver/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "permweaver/errors.hpp"

namespace permweaver {

namespace {

// Rotations whose angle is below this are dropped by the peephole pass.
constexpr double kZeroAngle = 1e-13;

std::string format_angle(double a) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", a);
  return buf;
}

const char* kind_name(GateKind k) {
  switch (k) {
    case GateKind::X: return "x";
    case GateKind::H: return "h";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
  }
  return "?";
}

// How a gate uses a wire, for the commutation rule.
enum class Role { Z, X, Other };

Role target_role(const Gate& g) {
  switch (g.kind) {
    case GateKind::X: return Role::X;
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ: return Role::Z;
    default: return Role::Other;
  }
}

Role role_on(const Gate& g, int wire) {
  if (g.target == wire) return target_role(g);
  return Role::Z;  // a control wire; caller guarantees the gate touches `wire`
}

bool touches(const Gate& g, int wire) {
  if (g.target == wire) return true;
  return std::any_of(g.controls.begin(), g.controls.end(), [&](const Control& c) { return c.qubit == wire; });
}

bool commute(const Gate& a, const Gate& b) {
  auto check = [&](int wire) {
    if (!touches(a, wire)) return true;
    const Role ra = role_on(a, wire);
    const Role rb = role_on(b, wire);
    return ra == rb && ra != Role::Other;
  };
  if (!check(b.target)) return false;
  for (const auto& c : b.controls) {
    if (!check(c.qubit)) return false;
  }
  return true;
}

bool same_wires(const Gate& a, const Gate& b) { return a.target == b.target && a.controls == b.controls; }

bool cancels(const Gate& earlier, const Gate& later) {
  if (!same_wires(earlier, later)) return false;
  switch (earlier.kind) {
    case GateKind::X: return later.kind == GateKind::X;
    case GateKind::H: return later.kind == GateKind::H;
    case GateKind::T: return later.kind == GateKind::Tdg;
    case GateKind::Tdg: return later.kind == GateKind::T;
    default: return false;
  }
}

bool merges(const Gate& earlier, const Gate& later) {
  return earlier.is_rotation() && earlier.kind == later.kind && earlier.target == later.target;
}

Gate normalized(Gate g) {
  std::sort(g.controls.begin(), g.controls.end(),
            [](const Control& a, const Control& b) { return a.qubit < b.qubit; });
  return g;
}

// One left-to-right sweep; returns the reduced gate list.
std::vector<Gate> peephole_pass(const std::vector<Gate>& in, int num_wires) {
  std::vector<Gate> out;
  std::vector<bool> alive;
  std::vector<std::vector<std::size_t>> by_wire(static_cast<std::size_t>(num_wires));
  out.reserve(in.size());

  for (const auto& raw : in) {
    Gate g = normalized(raw);
    if (g.is_rotation() && std::abs(g.angle) < kZeroAngle) continue;

    std::vector<int> wires{g.target};
    for (const auto& c : g.controls) wires.push_back(c.qubit);
    // Cursors into each wire's index list, walked backwards in global order.
    std::vector<std::ptrdiff_t> cursor;
    for (int w : wires) cursor.push_back(static_cast<std::ptrdiff_t>(by_wire[static_cast<std::size_t>(w)].size()) - 1);

    bool consumed = false;
    std::size_t last_seen = static_cast<std::size_t>(-1);
    while (true) {
      std::ptrdiff_t best = -1;
      for (std::size_t k = 0; k < wires.size(); ++k) {
        auto& list = by_wire[static_cast<std::size_t>(wires[k])];
        while (cursor[k] >= 0 && (!alive[list[static_cast<std::size_t>(cursor[k])]] ||
                                  list[static_cast<std::size_t>(cursor[k])] >= last_seen)) {
          --cursor[k];
        }
        if (cursor[k] >= 0) best = std::max(best, static_cast<std::ptrdiff_t>(list[static_cast<std::size_t>(cursor[k])]));
      }
      if (best < 0) break;
      const auto idx = static_cast<std::size_t>(best);
      last_seen = idx;
      Gate& h = out[idx];
      if (cancels(h, g)) {
        alive[idx] = false;
        consumed = true;
        break;
      }
      if (merges(h, g)) {
        h.angle += g.angle;
        if (std::abs(h.angle) < kZeroAngle) alive[idx] = false;
        consumed = true;
        break;
      }
      if (!commute(h, g)) break;
    }
    if (consumed) continue;
    const std::size_t idx = out.size();
    out.push_back(std::move(g));
    alive.push_back(true);
    for (int w : wires) by_wire[static_cast<std::size_t>(w)].push_back(idx);
  }

  std::vector<Gate> result;
  result.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (alive[i]) result.push_back(std::move(out[i]));
  }
  return result;
}

}  // namespace

Gate Gate::inverse() const {
  Gate g = *this;
  switch (kind) {
    case GateKind::T: g.kind = GateKind::Tdg; break;
    case GateKind::Tdg: g.kind = GateKind::T; break;
    case GateKind::RY:
    case GateKind::RZ: g.angle = -angle; break;
    default: break;
  }
  return g;
}

Circuit::Circuit(int num_main, bool has_ancilla) : n_main_(num_main), has_ancilla_(has_ancilla) {
  if (num_main < 0) throw InputError("circuit: negative wire count");
}

void Circuit::add(Gate g) {
  const int wires = num_wires();
  auto in_range = [&](int q) { return q >= 0 && q < wires; };
  if (!in_range(g.target)) throw InputError("gate target " + std::to_string(g.target) + " out of range");
  if (!g.controls.empty() && g.kind != GateKind::X) throw InputError("only X gates may carry controls");
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    const int q = g.controls[i].qubit;
    if (!in_range(q)) throw InputError("gate control " + std::to_string(q) + " out of range");
    if (q == g.target) throw InputError("gate control coincides with target");
    for (std::size_t j = 0; j < i; ++j) {
      if (g.controls[j].qubit == q) throw InputError("duplicate control wire");
    }
  }
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other) {
  if (other.num_wires() > num_wires()) throw InputError("append: circuit is wider than the destination");
  gates_.reserve(gates_.size() + other.gates_.size());
  for (const auto& g : other.gates_) gates_.push_back(g);
}

bool Circuit::is_permutation_level() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.kind == GateKind::X; });
}

bool Circuit::is_lowered() const {
  return std::all_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.is_lowered(); });
}

Circuit Circuit::inverse() const {
  Circuit out(n_main_, has_ancilla_);
  out.gates_.reserve(gates_.size());
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.gates_.push_back(it->inverse());
  return out;
}

int cx_count(const Circuit& c) {
  int count = 0;
  for (const auto& g : c.gates()) {
    if (g.controls.size() >= 2) throw StateError("cx_count: circuit contains an unlowered MCX gate");
    if (g.is_cx()) ++count;
  }
  return count;
}

int depth(const Circuit& c) {
  std::vector<int> level(static_cast<std::size_t>(c.num_wires()), 0);
  int d = 0;
  for (const auto& g : c.gates()) {
    int l = level[static_cast<std::size_t>(g.target)];
    for (const auto& ctl : g.controls) l = std::max(l, level[static_cast<std::size_t>(ctl.qubit)]);
    ++l;
    level[static_cast<std::size_t>(g.target)] = l;
    for (const auto& ctl : g.controls) level[static_cast<std::size_t>(ctl.qubit)] = l;
    d = std::max(d, l);
  }
  return d;
}

Circuit peephole_simplify(Circuit c) {
  std::vector<Gate> gates = c.gates();
  while (true) {
    auto next = peephole_pass(gates, c.num_wires());
    const bool changed = next.size() != gates.size() || next != gates;
    gates = std::move(next);
    if (!changed) break;
  }
  Circuit out(c.num_main(), c.has_ancilla());
  for (auto& g : gates) out.add(std::move(g));
  return out;
}

namespace {

std::string qasm_header(const Circuit& c) {
  std::ostringstream os;
  os << "OPENQASM 2.0;\n"
     << "include \"qelib1.inc\";\n"
     << "qreg q[" << c.num_wires() << "];\n";
  return os.str();
}

void write_simple_gate(std::ostringstream& os, const Gate& g) {
  os << kind_name(g.kind);
  if (g.is_rotation()) os << '(' << format_angle(g.angle) << ')';
  os << " q[" << g.target << "];\n";
}

}  // namespace

std::string export_qasm(const Circuit& c) {
  std::ostringstream os;
  os << qasm_header(c);
  for (const auto& g : c.gates()) {
    if (!g.is_lowered()) throw StateError("export_qasm: circuit contains an unlowered controlled gate");
    if (g.is_cx()) {
      os << "cx q[" << g.controls.front().qubit << "],q[" << g.target << "];\n";
    } else {
      write_simple_gate(os, g);
    }
  }
  return os.str();
}

std::string export_listing(const Circuit& c) {
  std::ostringstream os;
  os << qasm_header(c);
  for (const auto& g : c.gates()) {
    if (g.controls.empty()) {
      write_simple_gate(os, g);
    } else if (g.is_lowered()) {
      os << "cx q[" << g.controls.front().qubit << "],q[" << g.target << "];\n";
    } else {
      os << "mcx(";
      for (const auto& ctl : g.controls) os << (ctl.polarity ? '1' : '0');
      os << ')';
      const char* sep = " ";
      for (const auto& ctl : g.controls) {
        os << sep << "q[" << ctl.qubit << ']';
        sep = ",";
      }
      os << ",q[" << g.target << "];\n";
    }
  }
  return os.str();
}

nlohmann::json circuit_stats(const Circuit& c) {
  return {{"cx", cx_count(c)}, {"depth", depth(c)}, {"qubits", c.num_wires()}};
}

}  // namespace permweaver
