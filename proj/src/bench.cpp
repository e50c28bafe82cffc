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

#include "permweaver/bench.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "permweaver/errors.hpp"
#include "permweaver/sim.hpp"

namespace permweaver {

void DatasetConfig::validate() const {
  if (n < 1 || n > kMaxQubits) throw InputError("n: out of range");
  if (m == 0) throw InputError("m: must be positive");
  if (n < 63 && m > (std::uint64_t{1} << n)) throw InputError("m: exceeds 2^n");
  if (!(clustering_knob >= 0.0 && clustering_knob <= 1.0)) throw InputError("clustering_knob: must lie in [0, 1]");
  if (states_per_dataset < 1) throw InputError("states_per_dataset: must be at least 1");
}

SparseState gen_clustered_state(const DatasetConfig& cfg, std::uint64_t index) {
  cfg.validate();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  const Word space_mask = low_mask(cfg.n);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  std::unordered_set<Word> occupied;
  std::vector<Word> order;
  // One entry per (occupied label, unoccupied neighbour) edge, so a free label
  // next to several occupied ones is proportionally more likely.
  std::vector<Word> frontier;

  auto uniform_unoccupied = [&] {
    std::uniform_int_distribution<Word> any(0, space_mask);
    while (true) {
      const Word w = any(rng);
      if (!occupied.count(w)) return w;
    }
  };
  auto occupy = [&](Word w) {
    occupied.insert(w);
    order.push_back(w);
    std::erase(frontier, w);
    for (int j = 0; j < cfg.n; ++j) {
      const Word nb = w ^ bit_of(j);
      if (!occupied.count(nb)) frontier.push_back(nb);
    }
  };

  // Dense requests fall back to enumeration so rejection sampling stays cheap.
  const bool near_full = cfg.n < 63 && 2 * cfg.m > (std::uint64_t{1} << cfg.n);
  auto uniform_pick = [&] {
    if (!near_full) return uniform_unoccupied();
    std::vector<Word> free;
    for (Word w = 0; w <= space_mask; ++w) {
      if (!occupied.count(w)) free.push_back(w);
    }
    std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
    return free[pick(rng)];
  };

  occupy(uniform_pick());
  while (order.size() < cfg.m) {
    const bool cluster = coin(rng) < cfg.clustering_knob;
    if (cluster && !frontier.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, frontier.size() - 1);
      occupy(frontier[pick(rng)]);
    } else {
      occupy(uniform_pick());
    }
  }

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<std::complex<double>> amps;
  double norm = 0.0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::complex<double> a;
    do {
      a = {gauss(rng), gauss(rng)};
    } while (std::abs(a) == 0.0);
    norm += std::norm(a);
    amps.push_back(a);
  }
  const double scale = 1.0 / std::sqrt(norm);
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < order.size(); ++i) entries.push_back({BitLabel(cfg.n, order[i]), amps[i] * scale});
  return SparseState(cfg.n, std::move(entries));
}

namespace {

struct StateResult {
  double avg_neighbors = 0.0;
  std::vector<int> cx;         // per method
  std::vector<double> seconds;  // per method
};

StateResult run_one(const DatasetConfig& cfg, std::uint64_t index, const std::vector<PrepMethod>& methods,
                    const BenchOptions& options) {
  const SparseState state = gen_clustered_state(cfg, index);
  StateResult r;
  r.avg_neighbors = avg_adjacent_nonzero_words(state.label_words()).value();
  for (PrepMethod method : methods) {
    const auto start = std::chrono::steady_clock::now();
    const Circuit c = prepare(state, method);
    const auto stop = std::chrono::steady_clock::now();
    if (options.verify) {
      const int wires = c.num_wires();
      const double f = sim::fidelity(sim::statevector(c, wires), sim::embed(state, wires));
      if (!(f >= kBenchFidelity)) {
        throw StateError("benchmark: " + std::string(method_name(method)) + " circuit failed verification on " +
                         cfg.id + " state " + std::to_string(index));
      }
    }
    r.cx.push_back(cx_count(c));
    r.seconds.push_back(std::chrono::duration<double>(stop - start).count());
  }
  return r;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

std::vector<BenchRow> run_benchmark(const std::vector<DatasetConfig>& configs, const std::vector<PrepMethod>& methods,
                                    const BenchOptions& options) {
  std::vector<BenchRow> rows;
  if (methods.empty()) return rows;
  for (const auto& cfg : configs) {
    cfg.validate();
    const auto count = static_cast<std::size_t>(cfg.states_per_dataset);
    std::vector<StateResult> results(count);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          results[i] = run_one(cfg, i, methods, options);
        } catch (...) {
          std::lock_guard lock(failure_mu);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    };
    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(count)));
    if (jobs == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
      for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    double neighbors = 0.0;
    for (const auto& r : results) neighbors += r.avg_neighbors;
    neighbors /= static_cast<double>(count);

    for (std::size_t k = 0; k < methods.size(); ++k) {
      BenchRow row;
      row.dataset_id = cfg.id;
      row.n = cfg.n;
      row.m = cfg.m;
      row.clustering_knob = cfg.clustering_knob;
      row.avg_neighbors = neighbors;
      row.method = methods[k];
      double sum = 0.0;
      double seconds = 0.0;
      for (const auto& r : results) {
        row.cx_counts.push_back(r.cx[k]);
        sum += r.cx[k];
        seconds += r.seconds[k];
      }
      row.mean_cx = sum / static_cast<double>(count);
      if (count > 1) {
        double ss = 0.0;
        for (int v : row.cx_counts) ss += (v - row.mean_cx) * (v - row.mean_cx);
        row.ci95 = 1.96 * std::sqrt(ss / static_cast<double>(count - 1)) / std::sqrt(static_cast<double>(count));
      }
      row.runtime_s = options.record_runtime ? seconds : 0.0;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string bench_csv_header() { return "dataset_id,n,m,clustering_knob,avg_neighbors,method,mean_cx,ci95,runtime_s\n"; }

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << bench_csv_header();
  for (const auto& r : rows) {
    os << r.dataset_id << ',' << r.n << ',' << r.m << ',' << format_double(r.clustering_knob) << ','
       << format_double(r.avg_neighbors) << ',' << method_name(r.method) << ',' << format_double(r.mean_cx) << ','
       << format_double(r.ci95) << ',' << format_double(r.runtime_s) << '\n';
  }
  return os.str();
}

namespace {

template <typename T>
T field_or(const nlohmann::json& j, const char* key, T fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(where + key + ": wrong type");
  }
}

}  // namespace

BenchConfig bench_config_from_json(const nlohmann::json& j, std::optional<std::uint64_t> seed_override) {
  if (!j.is_object()) throw InputError("config: expected a JSON object");
  BenchConfig cfg;
  const auto seed = field_or<std::uint64_t>(j, "seed", 1, "");
  const int states = field_or<int>(j, "states_per_dataset", 100, "");
  cfg.options.jobs = field_or<int>(j, "jobs", 1, "");
  cfg.options.record_runtime = field_or<bool>(j, "record_runtime", true, "");

  if (j.contains("methods")) {
    if (!j["methods"].is_array()) throw InputError("methods: expected an array");
    for (std::size_t i = 0; i < j["methods"].size(); ++i) {
      const auto& v = j["methods"][i];
      if (!v.is_string()) throw InputError("methods[" + std::to_string(i) + "]: expected a string");
      try {
        cfg.methods.push_back(parse_prep_method(v.get<std::string>()));
      } catch (const InputError& e) {
        throw InputError("methods[" + std::to_string(i) + "]: " + e.what());
      }
    }
  } else {
    cfg.methods = {PrepMethod::ClusterSwaps, PrepMethod::PairwiseSwaps, PrepMethod::DenseAll};
  }

  if (!j.contains("datasets") || !j["datasets"].is_array()) throw InputError("datasets: missing array");
  for (std::size_t i = 0; i < j["datasets"].size(); ++i) {
    const auto& d = j["datasets"][i];
    const std::string where = "datasets[" + std::to_string(i) + "].";
    if (!d.is_object()) throw InputError(where.substr(0, where.size() - 1) + ": expected an object");
    for (const char* key : {"n", "m", "clustering_knob"}) {
      if (!d.contains(key)) throw InputError(where + key + ": missing field");
    }
    DatasetConfig ds;
    ds.id = field_or<std::string>(d, "id", "d" + std::to_string(i), where);
    ds.n = field_or<int>(d, "n", 0, where);
    ds.m = field_or<std::size_t>(d, "m", 0, where);
    ds.clustering_knob = field_or<double>(d, "clustering_knob", 0.0, where);
    ds.states_per_dataset = field_or<int>(d, "states_per_dataset", states, where);
    ds.seed = seed_override.value_or(field_or<std::uint64_t>(d, "seed", seed, where));
    try {
      ds.validate();
    } catch (const InputError& e) {
      throw InputError(where + e.what());
    }
    cfg.datasets.push_back(std::move(ds));
  }
  return cfg;
}

}  // namespace permweaver
