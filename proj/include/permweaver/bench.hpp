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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "permweaver/core.hpp"
#include "permweaver/stateprep.hpp"

namespace permweaver {

struct DatasetConfig {
  std::string id;
  int n = 10;
  std::size_t m = 32;
  double clustering_knob = 0.0;
  int states_per_dataset = 100;
  std::uint64_t seed = 1;

  /// Throws InputError on m = 0, m > 2^n, knob outside [0, 1] or no states.
  void validate() const;
};

/// Random state with m nonzero labels. The first label is uniform; each
/// further label is, with probability clustering_knob, an unoccupied
/// Hamming-1 neighbour of the labels so far, drawn uniformly over
/// (occupied, unoccupied neighbour) edges so labels touching more of the
/// cluster are likelier (uniform over all unoccupied labels if there is no
/// such edge); otherwise uniform over all unoccupied labels. Amplitudes are
/// i.i.d. complex Gaussian, normalized. Deterministic in (seed, index).
SparseState gen_clustered_state(const DatasetConfig& cfg, std::uint64_t index);

struct BenchOptions {
  int jobs = 1;
  bool record_runtime = true;  ///< false writes runtime_s = 0 for byte-stable output
  bool verify = true;          ///< fidelity-check every circuit before counting
};

struct BenchRow {
  std::string dataset_id;
  int n = 0;
  std::size_t m = 0;
  double clustering_knob = 0.0;
  double avg_neighbors = 0.0;
  PrepMethod method = PrepMethod::ClusterSwaps;
  double mean_cx = 0.0;
  double ci95 = 0.0;
  double runtime_s = 0.0;
  std::vector<int> cx_counts;  ///< one per state, in index order
};

/// Minimum fidelity accepted by the benchmark's per-circuit check.
inline constexpr double kBenchFidelity = 1.0 - 1e-8;

/// One row per (dataset, method), datasets outer. ci95 is 1.96 times the
/// sample standard deviation over sqrt(states). Throws StateError if a
/// circuit fails verification.
std::vector<BenchRow> run_benchmark(const std::vector<DatasetConfig>& configs, const std::vector<PrepMethod>& methods,
                                    const BenchOptions& options = {});

std::string bench_csv_header();
std::string to_csv(const std::vector<BenchRow>& rows);

struct BenchConfig {
  std::vector<DatasetConfig> datasets;
  std::vector<PrepMethod> methods;
  BenchOptions options;
};

/// {"seed": int, "states_per_dataset": int, "methods": [...], "jobs": int,
///  "record_runtime": bool, "datasets": [{"id", "n", "m", "clustering_knob",
///  optional "seed", optional "states_per_dataset"}]}. Top-level values are
/// defaults for the datasets; `seed_override` (if set) replaces every seed.
BenchConfig bench_config_from_json(const nlohmann::json& j, std::optional<std::uint64_t> seed_override = std::nullopt);

}  // namespace permweaver
