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

#include "cli.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cstdlib>
#include <optional>
#include <string>

#include "permweaver/bench.hpp"
#include "permweaver/circuit.hpp"
#include "permweaver/errors.hpp"
#include "permweaver/io.hpp"
#include "permweaver/mcx.hpp"
#include "permweaver/qasm.hpp"
#include "permweaver/sim.hpp"
#include "permweaver/stateprep.hpp"
#include "permweaver/synth.hpp"

namespace permweaver {

namespace {

using nlohmann::json;

// Raised when a produced or supplied circuit does not do what it should.
class VerifyFailure : public std::runtime_error {
 public:
  explicit VerifyFailure(const std::string& what) : std::runtime_error(what) {}
};

std::optional<std::uint64_t> seed_from_env() {
  const char* raw = std::getenv("PERMWEAVER_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || raw[0] == '-') {
    throw InputError(std::string("PERMWEAVER_SEED: '") + raw + "' is not an unsigned integer");
  }
  return v;
}

void write_json(const std::string& path, const json& j) { io::write_text_file(path, j.dump(2) + "\n"); }

struct SynthArgs {
  std::string spec;
  std::string out;
  std::string stats;
  bool no_lower = false;
};

int do_synth(const SynthArgs& a, std::ostream& out) {
  const PermutationSpec spec = io::spec_from_json(io::read_json_file(a.spec));
  const SynthesisResult r = synthesize_permutation(spec);
  const Circuit lowered = peephole_simplify(lower_circuit(r.circuit));
  io::write_text_file(a.out, a.no_lower ? export_listing(r.circuit) : export_qasm(lowered));
  json stats = circuit_stats(lowered);
  stats["n"] = spec.num_qubits();
  stats["m"] = spec.size();
  stats["swaps"] = r.swaps;
  stats["fallbacks"] = r.fallbacks;
  stats["initial_errors"] = r.errors_trace.front();
  if (!a.stats.empty()) write_json(a.stats, stats);
  out << stats.dump() << "\n";
  return kExitOk;
}

struct PrepArgs {
  std::string state;
  std::string method = "cluster";
  std::string out;
  std::string stats;
};

int do_prep(const PrepArgs& a, std::ostream& out) {
  const PrepMethod method = parse_prep_method(a.method);
  const SparseState state = io::state_from_json(io::read_json_file(a.state));
  const Circuit c = prepare(state, method);
  io::write_text_file(a.out, export_qasm(c));
  json stats = circuit_stats(c);
  stats["method"] = std::string(method_name(method));
  stats["n"] = state.num_qubits();
  stats["m"] = state.size();
  stats["avg_neighbors"] = avg_adjacent_nonzero_words(state.label_words()).value();
  if (!a.stats.empty()) write_json(a.stats, stats);
  out << stats.dump() << "\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string qasm;
  std::string spec;
  std::string state;
};

constexpr double kVerifyTolerance = 1e-8;

json verify_against_spec(const Circuit& c, const PermutationSpec& spec) {
  json mismatches = json::array();
  double worst = 1.0;
  if (c.is_permutation_level()) {
    for (const auto& p : spec.pairs()) {
      std::string got;
      try {
        got = sim::simulate_permutation(c, p.source).str();
      } catch (const StateError&) {
        got = "ancilla not restored";
      }
      if (got != p.destination.str()) {
        mismatches.push_back({{"source", p.source.str()}, {"expected", p.destination.str()}, {"got", got}});
      }
    }
  } else {
    const int wires = c.num_wires();
    if (wires > sim::kMaxStatevectorWires) throw InputError("verify: circuit too wide for statevector simulation");
    const int n = spec.num_qubits();
    for (const auto& p : spec.pairs()) {
      sim::StateVector v(std::size_t{1} << wires);
      v[sim::basis_index(p.source.bits(), n, wires)] = 1.0;
      sim::apply(c, wires, v);
      const double overlap = std::abs(v[sim::basis_index(p.destination.bits(), n, wires)]);
      worst = std::min(worst, overlap);
      if (overlap < 1.0 - kVerifyTolerance) {
        mismatches.push_back({{"source", p.source.str()}, {"expected", p.destination.str()}, {"overlap", overlap}});
      }
    }
  }
  return {{"pass", mismatches.empty()}, {"checked", spec.size()}, {"min_overlap", worst}, {"mismatches", mismatches}};
}

int do_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.spec.empty() == a.state.empty()) throw InputError("verify: give exactly one of --spec or --state");
  const std::string text = io::read_text_file(a.qasm);
  json report;
  if (!a.spec.empty()) {
    const PermutationSpec spec = io::spec_from_json(io::read_json_file(a.spec));
    report = verify_against_spec(parse_qasm(text, spec.num_qubits()), spec);
  } else {
    const SparseState state = io::state_from_json(io::read_json_file(a.state));
    const Circuit c = parse_qasm(text, state.num_qubits());
    const int wires = c.num_wires();
    if (wires > sim::kMaxStatevectorWires) throw InputError("verify: circuit too wide for statevector simulation");
    const double f = sim::fidelity(sim::statevector(c, wires), sim::embed(state, wires));
    report = {{"pass", f >= 1.0 - kVerifyTolerance}, {"fidelity", f}};
  }
  out << report.dump() << "\n";
  return report["pass"].get<bool>() ? kExitOk : kExitVerifyFailed;
}

struct BenchArgs {
  std::string config;
  std::string out;
  int jobs = 0;
  bool no_runtime = false;
};

int do_bench(const BenchArgs& a, std::ostream& out) {
  BenchConfig cfg = bench_config_from_json(io::read_json_file(a.config), seed_from_env());
  if (a.jobs > 0) cfg.options.jobs = a.jobs;
  if (a.no_runtime) cfg.options.record_runtime = false;
  std::vector<BenchRow> rows;
  try {
    rows = run_benchmark(cfg.datasets, cfg.methods, cfg.options);
  } catch (const StateError& e) {
    throw VerifyFailure(e.what());
  }
  io::write_text_file(a.out, to_csv(rows));
  out << rows.size() << " rows written to " << a.out << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse permutation synthesis and sparse state preparation", "permweaver"};
  app.require_subcommand(1);

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Decompose a partial permutation into a circuit");
  s->add_option("--spec", synth.spec, "Permutation spec JSON")->required();
  s->add_option("--out", synth.out, "Output QASM file")->required();
  s->add_option("--stats", synth.stats, "Write circuit statistics JSON here");
  s->add_flag("--no-lower", synth.no_lower, "Write the MCX-level listing instead of lowered QASM");

  PrepArgs prep;
  auto* p = app.add_subcommand("prep", "Prepare a sparse state");
  p->add_option("--state", prep.state, "Sparse state JSON")->required();
  p->add_option("--method", prep.method, "cluster, pairwise or dense")->capture_default_str();
  p->add_option("--out", prep.out, "Output QASM file")->required();
  p->add_option("--stats", prep.stats, "Write circuit statistics JSON here");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Check a circuit against a spec or a state");
  v->add_option("--qasm", verify.qasm, "Circuit file (QASM or MCX listing)")->required();
  auto* vs = v->add_option("--spec", verify.spec, "Permutation spec JSON");
  auto* vt = v->add_option("--state", verify.state, "Sparse state JSON");
  vs->excludes(vt);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run the clustered-state benchmark");
  b->add_option("--config", bench.config, "Benchmark config JSON")->required();
  b->add_option("--out", bench.out, "Output CSV file")->required();
  b->add_option("--jobs", bench.jobs, "Worker threads (overrides the config)")->check(CLI::PositiveNumber);
  b->add_flag("--no-runtime", bench.no_runtime, "Write runtime_s = 0 for byte-stable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInputError;
  }

  try {
    if (s->parsed()) return do_synth(synth, out);
    if (p->parsed()) return do_prep(prep, out);
    if (v->parsed()) return do_verify(verify, out);
    return do_bench(bench, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const VerifyFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kExitVerifyFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}

}  // namespace permweaver
