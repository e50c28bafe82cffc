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

#include <gtest/gtest.h>

#include <queue>
#include <set>

#include "permweaver/bench.hpp"
#include "permweaver/errors.hpp"

namespace permweaver {
namespace {

DatasetConfig small(double knob, int states = 4) {
  DatasetConfig c;
  c.id = "d";
  c.n = 6;
  c.m = 8;
  c.clustering_knob = knob;
  c.states_per_dataset = states;
  c.seed = 5;
  return c;
}

bool connected(const std::vector<Word>& labels) {
  std::set<Word> all(labels.begin(), labels.end());
  std::set<Word> seen{labels.front()};
  std::queue<Word> q;
  q.push(labels.front());
  while (!q.empty()) {
    const Word w = q.front();
    q.pop();
    for (int j = 0; j < 64; ++j) {
      const Word v = w ^ bit_of(j);
      if (all.count(v) && seen.insert(v).second) q.push(v);
    }
  }
  return seen.size() == all.size();
}

TEST(DatasetConfig, Validation) {
  auto c = small(0.5);
  EXPECT_NO_THROW(c.validate());
  c.m = 65;
  EXPECT_THROW(c.validate(), InputError);
  c = small(1.5);
  EXPECT_THROW(c.validate(), InputError);
  c = small(0.5, 0);
  EXPECT_THROW(c.validate(), InputError);
}

TEST(Generator, DeterministicPerSeedAndIndex) {
  DatasetConfig c = small(0.5);
  c.n = 10;
  c.m = 32;
  const auto a = gen_clustered_state(c, 3);
  const auto b = gen_clustered_state(c, 3);
  ASSERT_EQ(a.size(), 32U);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a.entries()[i].label, b.entries()[i].label);
    EXPECT_EQ(a.entries()[i].amplitude, b.entries()[i].amplitude);
  }
  EXPECT_NE(gen_clustered_state(c, 4).label_words(), a.label_words());
}

TEST(Generator, FullKnobGivesOneConnectedCluster) {
  DatasetConfig c = small(1.0);
  c.n = 10;
  c.m = 32;
  for (std::uint64_t i = 0; i < 20; ++i) EXPECT_TRUE(connected(gen_clustered_state(c, i).label_words()));
}

TEST(Generator, ZeroKnobIsSparse) {
  DatasetConfig c = small(0.0);
  c.n = 10;
  c.m = 32;
  double total = 0.0;
  for (std::uint64_t i = 0; i < 1000; ++i) total += avg_adjacent_nonzero_words(gen_clustered_state(c, i).label_words()).value();
  EXPECT_LT(total / 1000.0, 0.5);
}

TEST(Generator, DenseRequestFillsTheSpace) {
  DatasetConfig c = small(0.7);
  c.n = 3;
  c.m = 8;
  EXPECT_EQ(gen_clustered_state(c, 0).size(), 8U);
}

TEST(Benchmark, EmptyMethodListIsHeaderOnly) {
  const auto rows = run_benchmark({small(0.5)}, {});
  EXPECT_TRUE(rows.empty());
  EXPECT_EQ(to_csv(rows), bench_csv_header());
  EXPECT_EQ(bench_csv_header(), "dataset_id,n,m,clustering_knob,avg_neighbors,method,mean_cx,ci95,runtime_s\n");
}

TEST(Benchmark, RowsAndStatistics) {
  BenchOptions opt;
  opt.record_runtime = false;
  const std::vector<PrepMethod> methods{PrepMethod::ClusterSwaps, PrepMethod::DenseAll};
  auto second = small(1.0);
  second.id = "e";
  const auto rows = run_benchmark({small(0.0), second}, methods, opt);
  ASSERT_EQ(rows.size(), 4U);
  EXPECT_EQ(rows[0].dataset_id, "d");
  EXPECT_EQ(rows[1].method, PrepMethod::DenseAll);
  EXPECT_EQ(rows[2].dataset_id, "e");
  for (const auto& r : rows) {
    ASSERT_EQ(r.cx_counts.size(), 4U);
    double mean = 0.0;
    for (int x : r.cx_counts) mean += x;
    mean /= 4.0;
    double var = 0.0;
    for (int x : r.cx_counts) var += (x - mean) * (x - mean);
    var /= 3.0;
    EXPECT_DOUBLE_EQ(r.mean_cx, mean);
    EXPECT_NEAR(r.ci95, 1.96 * std::sqrt(var) / 2.0, 1e-12);
    EXPECT_EQ(r.runtime_s, 0.0);
  }
  // Mean neighbour metric over the dataset's states.
  double nb = 0.0;
  for (std::uint64_t i = 0; i < 4; ++i) nb += avg_adjacent_nonzero_words(gen_clustered_state(second, i).label_words()).value();
  EXPECT_DOUBLE_EQ(rows[2].avg_neighbors, nb / 4.0);
}

TEST(Benchmark, ParallelRunIsIdentical) {
  BenchOptions one;
  one.record_runtime = false;
  BenchOptions many = one;
  many.jobs = 3;
  const std::vector<DatasetConfig> cfg{small(0.3, 6), small(0.9, 6)};
  const std::vector<PrepMethod> methods{PrepMethod::ClusterSwaps, PrepMethod::PairwiseSwaps};
  EXPECT_EQ(to_csv(run_benchmark(cfg, methods, one)), to_csv(run_benchmark(cfg, methods, many)));
}

TEST(BenchConfig, ParsesDefaultsAndOverrides) {
  const auto j = nlohmann::json::parse(R"({
    "seed": 7, "states_per_dataset": 3, "methods": ["cluster_swaps", "dense_all"],
    "datasets": [{"id": "a", "n": 6, "m": 8, "clustering_knob": 0.5},
                 {"id": "b", "n": 5, "m": 4, "clustering_knob": 1.0, "seed": 9, "states_per_dataset": 2}]})");
  const auto c = bench_config_from_json(j);
  ASSERT_EQ(c.datasets.size(), 2U);
  EXPECT_EQ(c.datasets[0].seed, 7U);
  EXPECT_EQ(c.datasets[0].states_per_dataset, 3);
  EXPECT_EQ(c.datasets[1].seed, 9U);
  EXPECT_EQ(c.datasets[1].states_per_dataset, 2);
  EXPECT_EQ(c.methods, (std::vector<PrepMethod>{PrepMethod::ClusterSwaps, PrepMethod::DenseAll}));
  const auto o = bench_config_from_json(j, 11);
  EXPECT_EQ(o.datasets[0].seed, 11U);
  EXPECT_EQ(o.datasets[1].seed, 11U);
}

TEST(BenchConfig, ErrorsNameTheField) {
  try {
    bench_config_from_json(nlohmann::json::parse(R"({"datasets": [{"id": "a", "m": 8, "clustering_knob": 0.5}]})"));
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("datasets[0].n"), std::string::npos) << e.what();
  }
  EXPECT_THROW(bench_config_from_json(nlohmann::json::parse(R"({"methods": ["merge"], "datasets": []})")), InputError);
}

}  // namespace
}  // namespace permweaver
