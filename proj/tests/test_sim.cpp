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

#include <cmath>
#include <random>

#include "permweaver/errors.hpp"
#include "permweaver/sim.hpp"
#include "test_util.hpp"

namespace permweaver {
namespace {

using cd = std::complex<double>;

TEST(Sim, SingleQubitGates) {
  Circuit c(1);
  c.h(0);
  auto v = sim::statevector(c, 1);
  EXPECT_NEAR(v[0].real(), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(v[1].real(), 1 / std::sqrt(2.0), 1e-12);

  Circuit t(1);
  t.x(0);
  t.t(0);
  v = sim::statevector(t, 1);
  EXPECT_NEAR(std::abs(v[1] - std::polar(1.0, M_PI / 4)), 0.0, 1e-12);

  Circuit r(1);
  r.ry(0.8, 0);
  v = sim::statevector(r, 1);
  EXPECT_NEAR(v[0].real(), std::cos(0.4), 1e-12);
  EXPECT_NEAR(v[1].real(), std::sin(0.4), 1e-12);

  // RZ(a) = diag(e^{-ia/2}, e^{ia/2}).
  Circuit z(1);
  z.h(0);
  z.rz(0.6, 0);
  v = sim::statevector(z, 1);
  EXPECT_NEAR(std::arg(v[1] / v[0]), 0.6, 1e-12);
}

TEST(Sim, WireZeroIsMostSignificant) {
  Circuit c(2);
  c.x(0);
  const auto v = sim::statevector(c, 2);
  EXPECT_EQ(v[2], cd(1.0, 0.0));
  EXPECT_EQ(sim::basis_index(0b01, 2, 2), 2U);
  EXPECT_EQ(sim::basis_index(0b01, 2, 3), 4U);
}

TEST(Sim, PermutationTruthTable) {
  Circuit c(3);
  c.mcx({{0, true}, {1, false}}, 2);
  for (Word w = 0; w < 8; ++w) {
    const bool fire = (w & 1U) && !(w & 2U);
    EXPECT_EQ(sim::simulate_permutation_word(c, w), fire ? (w ^ 4U) : w);
  }
  Circuit h(1);
  h.h(0);
  EXPECT_THROW(sim::simulate_permutation_word(h, 0), InputError);
}

TEST(Sim, PermutationRejectsDirtyAncillaOnExit) {
  Circuit c(1, true);
  c.cx(0, 1);
  EXPECT_EQ(sim::simulate_permutation(c, BitLabel::parse("0")).str(), "0");
  EXPECT_THROW(sim::simulate_permutation(c, BitLabel::parse("1")), StateError);
}

TEST(Sim, UnitaryIsUnitaryAndMatchesStatevector) {
  std::mt19937_64 rng(2);
  const auto c = testing::random_lowered_circuit(rng, 3, 25);
  const auto u = sim::unitary(c, 3);
  const auto v = sim::statevector(c, 3);
  for (std::size_t r = 0; r < 8; ++r) EXPECT_NEAR(std::abs(u(r, 0) - v[r]), 0.0, 1e-12);
  for (std::size_t a = 0; a < 8; ++a) {
    for (std::size_t b = 0; b < 8; ++b) {
      cd dot = 0;
      for (std::size_t r = 0; r < 8; ++r) dot += std::conj(u(r, a)) * u(r, b);
      EXPECT_NEAR(std::abs(dot - (a == b ? 1.0 : 0.0)), 0.0, 1e-10);
    }
  }
  EXPECT_THROW(sim::unitary(Circuit(9), 9), InputError);
}

TEST(Sim, FidelityIgnoresGlobalPhase) {
  sim::StateVector a{cd(0.6, 0), cd(0, 0.8)};
  sim::StateVector b{a[0] * std::polar(1.0, 1.3), a[1] * std::polar(1.0, 1.3)};
  EXPECT_NEAR(sim::fidelity(a, b), 1.0, 1e-12);
  sim::StateVector c{cd(1, 0), cd(0, 0)};
  EXPECT_NEAR(sim::fidelity(a, c), 0.6, 1e-12);
}

TEST(Sim, EmbedPlacesAmplitudes) {
  const SparseState s(2, {{BitLabel::parse("10"), cd(0.6, 0)}, {BitLabel::parse("01"), cd(0, 0.8)}});
  const auto v = sim::embed(s, 3);
  ASSERT_EQ(v.size(), 8U);
  EXPECT_EQ(v[4], cd(0.6, 0));
  EXPECT_EQ(v[2], cd(0, 0.8));
}

}  // namespace
}  // namespace permweaver
