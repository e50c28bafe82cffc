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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "permweaver/bench.hpp"
#include "permweaver/circuit.hpp"
#include "permweaver/core.hpp"
#include "permweaver/errors.hpp"
#include "permweaver/mcx.hpp"
#include "permweaver/qasm.hpp"
#include "permweaver/sim.hpp"
#include "permweaver/stateprep.hpp"
#include "permweaver/synth.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace permweaver {
namespace {

using PairList = std::vector<std::pair<std::string, std::string>>;
using AmplitudeMap = std::map<std::string, std::complex<double>>;

PermutationSpec make_spec(int n, const PairList& pairs) {
  std::vector<LabelPair> out;
  for (const auto& [s, d] : pairs) out.push_back({BitLabel::parse(s), BitLabel::parse(d)});
  return PermutationSpec(n, std::move(out));
}

SparseState make_state(int n, const AmplitudeMap& amplitudes) {
  std::vector<SparseEntry> entries;
  for (const auto& [label, a] : amplitudes) entries.push_back({BitLabel::parse(label), a});
  return SparseState(n, std::move(entries));
}

AmplitudeMap to_map(const SparseState& s) {
  AmplitudeMap out;
  for (const auto& e : s.entries()) out[e.label.str()] = e.amplitude;
  return out;
}

py::dict synthesize(int n, const PairList& pairs, bool lower) {
  const auto spec = make_spec(n, pairs);
  const auto r = synthesize_permutation(spec);
  const Circuit lowered = peephole_simplify(lower_circuit(r.circuit));
  return py::dict("qasm"_a = lower ? export_qasm(lowered) : export_listing(r.circuit), "cx"_a = cx_count(lowered),
                  "depth"_a = depth(lowered), "qubits"_a = lowered.num_wires(), "swaps"_a = r.swaps,
                  "fallbacks"_a = r.fallbacks, "errors_trace"_a = r.errors_trace);
}

py::dict prepare_state(int n, const AmplitudeMap& amplitudes, const std::string& method) {
  const auto state = make_state(n, amplitudes);
  const auto m = parse_prep_method(method);
  const Circuit c = prepare(state, m);
  return py::dict("qasm"_a = export_qasm(c), "cx"_a = cx_count(c), "depth"_a = depth(c), "qubits"_a = c.num_wires(),
                  "method"_a = std::string(method_name(m)));
}

std::vector<std::complex<double>> qasm_statevector(const std::string& qasm) {
  const Circuit c = parse_qasm(qasm);
  if (c.num_wires() > sim::kMaxStatevectorWires) throw InputError("statevector: circuit too wide");
  return sim::statevector(c, c.num_wires());
}

double state_fidelity(const std::string& qasm, int n, const AmplitudeMap& amplitudes) {
  const Circuit c = parse_qasm(qasm, n);
  if (c.num_wires() > sim::kMaxStatevectorWires) throw InputError("fidelity: circuit too wide");
  return sim::fidelity(sim::statevector(c, c.num_wires()), sim::embed(make_state(n, amplitudes), c.num_wires()));
}

std::vector<std::string> permute_labels(const std::string& listing, int n, const std::vector<std::string>& labels) {
  const Circuit c = parse_qasm(listing, n);
  std::vector<std::string> out;
  for (const auto& l : labels) out.push_back(sim::simulate_permutation(c, BitLabel::parse(l)).str());
  return out;
}

double avg_adjacent(const std::vector<std::string>& labels) {
  std::vector<BitLabel> parsed;
  for (const auto& l : labels) parsed.push_back(BitLabel::parse(l));
  return avg_adjacent_nonzero(parsed).value();
}

AmplitudeMap clustered_state(int n, std::size_t m, double knob, std::uint64_t seed, std::uint64_t index) {
  DatasetConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.clustering_knob = knob;
  cfg.seed = seed;
  return to_map(gen_clustered_state(cfg, index));
}

std::string benchmark_csv(const std::string& config_json, int jobs) {
  BenchConfig cfg = bench_config_from_json(nlohmann::json::parse(config_json));
  if (jobs > 0) cfg.options.jobs = jobs;
  py::gil_scoped_release release;
  return to_csv(run_benchmark(cfg.datasets, cfg.methods, cfg.options));
}

}  // namespace
}  // namespace permweaver

PYBIND11_MODULE(_core, m) {
  namespace pw = permweaver;
  m.doc() = "Sparse permutation synthesis and sparse state preparation";

  py::register_exception<pw::InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<pw::StateError>(m, "StateError", PyExc_RuntimeError);

  m.def("synthesize", &pw::synthesize, "n"_a, "pairs"_a, "lower"_a = true,
        "Decompose a partial permutation given as (source, destination) label pairs.");
  m.def("prepare", &pw::prepare_state, "n"_a, "amplitudes"_a, "method"_a = "cluster",
        "Circuit preparing the sparse state {label: amplitude}.");
  m.def("statevector", &pw::qasm_statevector, "qasm"_a);
  m.def("fidelity", &pw::state_fidelity, "qasm"_a, "n"_a, "amplitudes"_a);
  m.def("permute_labels", &pw::permute_labels, "listing"_a, "n"_a, "labels"_a,
        "Images of basis labels under a permutation-level circuit.");
  m.def(
      "hamming", [](const std::string& a, const std::string& b) { return pw::hamming(pw::BitLabel::parse(a), pw::BitLabel::parse(b)); },
      "a"_a, "b"_a);
  m.def(
      "conforms",
      [](const std::string& label, const std::string& pattern) {
        return pw::conforms(pw::BitLabel::parse(label), pw::Pattern::parse(pattern));
      },
      "label"_a, "pattern"_a);
  m.def("avg_adjacent_nonzero", &pw::avg_adjacent, "labels"_a);
  m.def("mcx_cx_cost", &pw::mcx_cx_cost, "num_controls"_a, "num_spare"_a = 0);
  m.def("gen_clustered_state", &pw::clustered_state, "n"_a, "m"_a, "clustering_knob"_a, "seed"_a = 1, "index"_a = 0);
  m.def("run_benchmark_json", &pw::benchmark_csv, "config_json"_a, "jobs"_a = 0);
  m.attr("MCX_CX_PER_CONTROL") = pw::kMcxCxPerControl;
}
