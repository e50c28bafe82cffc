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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace permweaver {

enum class GateKind { X, H, T, Tdg, RY, RZ };

struct Control {
  int qubit = 0;
  bool polarity = true;  ///< true: fires on |1>, false: fires on |0>

  friend bool operator==(const Control&, const Control&) = default;
};

/// One gate. Only X carries controls: X with one control is CX, with two or
/// more it is MCX. Rotations use `angle` in radians.
struct Gate {
  GateKind kind = GateKind::X;
  int target = 0;
  std::vector<Control> controls;
  double angle = 0.0;

  bool is_rotation() const { return kind == GateKind::RY || kind == GateKind::RZ; }
  bool is_cx() const { return kind == GateKind::X && controls.size() == 1; }
  /// Lowered form: at most one control, and that control positive.
  bool is_lowered() const {
    return controls.empty() || (controls.size() == 1 && controls.front().polarity);
  }
  Gate inverse() const;

  friend bool operator==(const Gate&, const Gate&) = default;
};

/// Ordered gate list over `num_main()` logical wires plus an optional ancilla
/// at wire index `num_main()`.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_main, bool has_ancilla = false);

  int num_main() const { return n_main_; }
  bool has_ancilla() const { return has_ancilla_; }
  int ancilla() const { return n_main_; }
  int num_wires() const { return n_main_ + (has_ancilla_ ? 1 : 0); }
  void set_ancilla(bool on) { has_ancilla_ = on; }

  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Appends after validating wire bounds and control distinctness.
  void add(Gate g);
  void x(int target) { add({GateKind::X, target, {}, 0.0}); }
  void cx(int control, int target) { add({GateKind::X, target, {{control, true}}, 0.0}); }
  void mcx(std::vector<Control> controls, int target) { add({GateKind::X, target, std::move(controls), 0.0}); }
  void h(int target) { add({GateKind::H, target, {}, 0.0}); }
  void t(int target) { add({GateKind::T, target, {}, 0.0}); }
  void tdg(int target) { add({GateKind::Tdg, target, {}, 0.0}); }
  void ry(double angle, int target) { add({GateKind::RY, target, {}, angle}); }
  void rz(double angle, int target) { add({GateKind::RZ, target, {}, angle}); }

  /// Appends every gate of `other`, which must not be wider than this circuit.
  void append(const Circuit& other);

  /// Only X/CX/MCX gates.
  bool is_permutation_level() const;
  /// No gate with two or more controls or with a negative control.
  bool is_lowered() const;

  Circuit inverse() const;

 private:
  int n_main_ = 0;
  bool has_ancilla_ = false;
  std::vector<Gate> gates_;
};

/// Number of CX gates. Throws StateError if an MCX (>= 2 controls) is present.
int cx_count(const Circuit& c);

/// Layer count under as-soon-as-possible scheduling.
int depth(const Circuit& c);

/// Local-rule fixpoint: cancels adjacent self-inverse pairs (X, CX, MCX, H,
/// T/Tdg), merges adjacent same-axis rotations, drops zero-angle rotations.
/// Two gates are adjacent when every gate between them commutes with the
/// later one by the wire-role rule (shared wires used only as Z-type controls
/// or only as X-type targets). Never increases the CX count.
Circuit peephole_simplify(Circuit c);

/// OpenQASM 2.0 over qreg q[num_wires]. Throws StateError on unlowered gates.
std::string export_qasm(const Circuit& c);

/// QASM-like listing that additionally allows `mcx(<polarities>) q[c..],q[t];`
/// for multi-controlled or negatively controlled X; used for permutation-level
/// output.
std::string export_listing(const Circuit& c);

/// {"cx": int, "depth": int, "qubits": int}
nlohmann::json circuit_stats(const Circuit& c);

}  // namespace permweaver
