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

#include <random>

#include "permweaver/errors.hpp"
#include "permweaver/sim.hpp"
#include "permweaver/stateprep.hpp"
#include "permweaver/synth.hpp"
#include "test_util.hpp"

namespace permweaver {
namespace {

using cd = std::complex<double>;

constexpr double kFidelity = 1.0 - 1e-8;

std::vector<cd> random_vector(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  std::vector<cd> v(dim);
  double norm = 0.0;
  for (auto& a : v) {
    a = cd(g(rng), g(rng));
    norm += std::norm(a);
  }
  for (auto& a : v) a /= std::sqrt(norm);
  return v;
}

double prep_fidelity(const Circuit& c, const SparseState& s) {
  const int wires = std::max(c.num_wires(), s.num_qubits());
  return sim::fidelity(sim::statevector(c, wires), sim::embed(s, wires));
}

int count_controls(const Circuit& c, std::size_t k) {
  return static_cast<int>(
      std::count_if(c.gates().begin(), c.gates().end(), [&](const Gate& g) { return g.controls.size() == k; }));
}

TEST(ParseMethod, Spellings) {
  EXPECT_EQ(parse_prep_method("cluster"), PrepMethod::ClusterSwaps);
  EXPECT_EQ(parse_prep_method("pairwise_swaps"), PrepMethod::PairwiseSwaps);
  EXPECT_EQ(parse_prep_method("dense"), PrepMethod::DenseAll);
  EXPECT_EQ(method_name(PrepMethod::DenseAll), "dense_all");
  EXPECT_THROW(parse_prep_method("merge"), InputError);
}

TEST(DensePrepare, BasisVectorNeedsNoGates) {
  const std::vector<cd> v{1.0, 0.0};
  const std::vector<int> wires{0};
  EXPECT_TRUE(dense_prepare(v, wires, 1).empty());
}

TEST(DensePrepare, EqualSuperpositionIsOneRotation) {
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<cd> v{h, h};
  const std::vector<int> wires{0};
  const auto c = dense_prepare(v, wires, 1);
  ASSERT_EQ(c.size(), 1U);
  EXPECT_EQ(c.gates()[0].kind, GateKind::RY);
  EXPECT_NEAR(c.gates()[0].angle, M_PI / 2, 1e-12);
}

TEST(DensePrepare, RejectsBadInput) {
  const std::vector<int> wires{0};
  EXPECT_THROW(dense_prepare(std::vector<cd>{1.0, 1.0}, wires, 1), InputError);
  EXPECT_THROW(dense_prepare(std::vector<cd>{1.0, 0.0, 0.0}, wires, 1), InputError);
}

TEST(DensePrepare, RandomVectorsOnArbitraryWires) {
  std::mt19937_64 rng(53);
  for (int k = 1; k <= 6; ++k) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto v = random_vector(rng, std::size_t{1} << k);
      std::vector<int> all{0, 1, 2, 3, 4, 5, 6};
      std::shuffle(all.begin(), all.end(), rng);
      const std::vector<int> wires(all.begin(), all.begin() + k);
      const auto c = dense_prepare(v, wires, 7);
      ASSERT_TRUE(c.is_lowered());
      EXPECT_LE(cx_count(c), (1 << (k + 1)));
      const auto out = sim::statevector(c, 7);
      sim::StateVector expected(128);
      for (std::size_t p = 0; p < v.size(); ++p) {
        Word bits = 0;
        for (int i = 0; i < k; ++i) {
          if ((p >> (k - 1 - i)) & 1U) bits |= bit_of(wires[static_cast<std::size_t>(i)]);
        }
        expected[sim::basis_index(bits, 7, 7)] = v[p];
      }
      EXPECT_GE(sim::fidelity(out, expected), kFidelity) << k;
    }
  }
}

TEST(MultiplexedRotation, ReversedOrderIsEquivalent) {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> a(-3, 3);
  std::vector<double> angles(8);
  for (auto& x : angles) x = a(rng);
  const std::vector<int> controls{0, 2, 3};
  Circuit f(4);
  Circuit r(4);
  append_multiplexed_rotation(f, GateKind::RY, angles, controls, 1);
  append_multiplexed_rotation(r, GateKind::RY, angles, controls, 1, true);
  const auto uf = sim::unitary(f, 4);
  const auto ur = sim::unitary(r, 4);
  for (std::size_t i = 0; i < uf.data.size(); ++i) EXPECT_NEAR(std::abs(uf.data[i] - ur.data[i]), 0.0, 1e-12);
  // Block diagonal: control assignment p applies RY(angles[p]) on the target.
  for (Word p = 0; p < 8; ++p) {
    const Word bits = ((p >> 2) & 1U ? bit_of(0) : 0) | ((p >> 1) & 1U ? bit_of(2) : 0) | (p & 1U ? bit_of(3) : 0);
    const std::size_t i0 = sim::basis_index(bits, 4, 4);
    const std::size_t i1 = sim::basis_index(bits | bit_of(1), 4, 4);
    EXPECT_NEAR(uf(i0, i0).real(), std::cos(angles[p] / 2), 1e-12);
    EXPECT_NEAR(uf(i1, i0).real(), std::sin(angles[p] / 2), 1e-12);
  }
}

TEST(PairwiseDecompose, IdentityIsEmpty) {
  EXPECT_TRUE(pairwise_decompose(testing::spec_of({{"01", "01"}})).empty());
}

TEST(PairwiseDecompose, SingleTranspositionIsThePointBlock) {
  const auto c = pairwise_decompose(testing::spec_of({{"000", "111"}}));
  const auto expected = emit_swap_block(Pattern::parse("000"), Pattern::parse("111")).second;
  EXPECT_EQ(c.gates(), expected.gates());
}

TEST(PairwiseDecompose, ThreeCycleTakesTwoTranspositions) {
  const auto spec = testing::spec_of({{"001", "010"}, {"010", "100"}, {"100", "001"}});
  const auto c = pairwise_decompose(spec);
  EXPECT_EQ(count_controls(c, 2), 2);
  for (const auto& p : spec.pairs()) EXPECT_EQ(sim::simulate_permutation(c, p.source), p.destination);
}

TEST(PairwiseDecompose, FuzzedSpecs) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const std::size_t m = 1 + rng() % std::min<std::uint64_t>(20, std::uint64_t{1} << n);
    const auto spec = testing::random_spec(rng, n, m);
    const auto c = pairwise_decompose(spec);
    for (const auto& p : spec.pairs()) ASSERT_EQ(sim::simulate_permutation(c, p.source), p.destination);
    // At most one transposition per specified row.
    if (n >= 3) EXPECT_LE(count_controls(c, static_cast<std::size_t>(n - 1)), static_cast<int>(m));
  }
}

TEST(ClusterSwaps, SingleAmplitudeIsXGates) {
  const SparseState s(4, {{BitLabel::parse("1011"), 1.0}});
  const auto c = cluster_swaps_prepare(s);
  std::vector<int> targets;
  for (const auto& g : c.gates()) {
    EXPECT_EQ(g.kind, GateKind::X);
    EXPECT_TRUE(g.controls.empty());
    targets.push_back(g.target);
  }
  std::sort(targets.begin(), targets.end());
  EXPECT_EQ(targets, (std::vector<int>{0, 2, 3}));
  EXPECT_GE(prep_fidelity(c, s), kFidelity);
}

TEST(ClusterSwaps, DenseWithinShcNeedsNoPermutation) {
  std::mt19937_64 rng(67);
  const auto amps = random_vector(rng, 4);
  // Labels filling 1**0; spanned wires 1 (most significant) and 2.
  std::vector<SparseEntry> e;
  for (std::size_t p = 0; p < 4; ++p) {
    Word bits = bit_of(0) | ((p >> 1) & 1U ? bit_of(1) : 0) | (p & 1U ? bit_of(2) : 0);
    e.push_back({BitLabel(4, bits), amps[p]});
  }
  const SparseState s(4, std::move(e));
  const auto plan = plan_cluster_permutation(s);
  EXPECT_EQ(plan.root.str(), "1**0");
  for (const auto& p : plan.spec.pairs()) EXPECT_EQ(p.source, p.destination);
  const auto c = cluster_swaps_prepare(s);
  const std::vector<int> wires{1, 2};
  EXPECT_EQ(cx_count(c), cx_count(dense_prepare(amps, wires, 4)));
  EXPECT_GE(prep_fidelity(c, s), kFidelity);
}

TEST(Prepare, FuzzedStatesAllMethods) {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 24; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const std::size_t m = 1 + rng() % std::min<std::uint64_t>(64, std::uint64_t{1} << n);
    const auto s = testing::random_state(rng, n, m);
    for (auto method : {PrepMethod::ClusterSwaps, PrepMethod::PairwiseSwaps, PrepMethod::DenseAll}) {
      if (method == PrepMethod::DenseAll && n > 10) continue;
      const auto c = prepare(s, method);
      ASSERT_TRUE(c.is_lowered());
      EXPECT_LE(c.num_wires(), n + 1);
      EXPECT_GE(prep_fidelity(c, s), kFidelity) << method_name(method) << " n=" << n << " m=" << m;
    }
  }
}

TEST(Prepare, PairwiseAndClusterRealizeTheSameMapping) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const std::size_t m = 2 + rng() % 14;
    const auto plan = plan_cluster_permutation(testing::random_state(rng, n, std::min<std::size_t>(m, 1U << n)));
    const auto a = decompose_permutation(plan.spec);
    const auto b = pairwise_decompose(plan.spec);
    for (const auto& p : plan.spec.pairs()) {
      EXPECT_EQ(sim::simulate_permutation(a, p.source), sim::simulate_permutation(b, p.source));
    }
  }
}

}  // namespace
}  // namespace permweaver
