// Copyright 2026 The qsearch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <bit>
#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qsearch/algorithms.hpp"
#include "qsearch/dense_oracle.hpp"
#include "qsearch/executor.hpp"

namespace qsearch {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Complex> Amps(const StateVector& s) { return {s.amplitudes().begin(), s.amplitudes().end()}; }

double MaxDiff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  EXPECT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

std::vector<Complex> Uniform(int n) {
  const std::size_t dim = std::size_t{1} << n;
  return std::vector<Complex>(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
}

// Two-amplitude recurrence: a = key amplitude, b = every other amplitude.
double GroverByRecurrence(int n, int k) {
  const double N = std::ldexp(1.0, n);
  double a = 1.0 / std::sqrt(N), b = a;
  for (int i = 0; i < k; ++i) {
    a = -a;
    const double mean = (a + (N - 1) * b) / N;
    a = 2 * mean - a;
    b = 2 * mean - b;
  }
  return a * a;
}

TEST(HadamardTransformTest, WorkedExpansions) {
  EXPECT_LE(MaxDiff(Amps(hadamard_transform_reference("11", 2)), {0.5, -0.5, -0.5, 0.5}), 1e-15);
  EXPECT_LE(MaxDiff(Amps(hadamard_transform_reference("00", 2)), {0.5, 0.5, 0.5, 0.5}), 1e-15);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_LE(MaxDiff(Amps(hadamard_transform_reference("0", 1)), {r, r}), 1e-15);
  EXPECT_THROW(hadamard_transform_reference("0", 2), DomainError);
}

TEST(HadamardTransformTest, PerQubitHMatchesClosedForm) {
  for (int n = 1; n <= 4; ++n)
    for (std::uint64_t x = 0; x < (1U << n); ++x) {
      StateVector s = init_basis(n, x);
      for (int q = 0; q < n; ++q) s.apply(GateKind::H, {q});
      EXPECT_LE(MaxDiff(Amps(s), Amps(hadamard_transform_reference(format_bitstring(x, n), n))), 1e-12);
    }
}

TEST(OracleTest, GroverPhaseOracle) {
  EXPECT_EQ(grover_phase_oracle(1, "1"), matrix_of("Z"));
  EXPECT_EQ(grover_phase_oracle(2, "01"), DenseMatrix::diagonal({1, -1, 1, 1}));
  const auto out = grover_phase_oracle(3, "110") * Uniform(3);
  const auto in = Uniform(3);
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(out[i], i == 6 ? -in[i] : in[i]);
  EXPECT_THROW(grover_phase_oracle(2, "1"), DomainError);
}

TEST(OracleTest, PhaseOracle) {
  EXPECT_LE(max_abs_diff(phase_oracle(2, "01", kPi), grover_phase_oracle(2, "01")), 1e-15);
  EXPECT_EQ(phase_oracle(3, "101", 0.0), DenseMatrix::identity(8));
  EXPECT_LE(max_abs_diff(phase_oracle(1, "1", kPi / 2), matrix_of("S")), 1e-15);
}

TEST(OracleTest, EntanglingOracleFlipsAncillaOnKey) {
  const int n = 3;
  const DenseUnitary u = entangling_oracle(n, "101");
  EXPECT_LE(unitarity_error(u), 1e-15);
  for (std::uint64_t x = 0; x < 8; ++x)
    for (std::uint64_t y = 0; y < 2; ++y) {
      std::vector<Complex> e(16);
      e[x + 8 * y] = 1.0;
      const auto out = u * e;
      const std::uint64_t fy = y ^ static_cast<std::uint64_t>(x == 5);
      EXPECT_EQ(out[x + 8 * fy], Complex(1.0)) << x << "," << y;
    }
  EXPECT_THROW(entangling_oracle(10, std::string(10, '0')), CapacityError);
}

TEST(OracleTest, PhaseKickbackFromMinusAncilla) {
  // Data uniform, ancilla |->: result equals phase oracle on the data.
  const int n = 2;
  const auto data = Uniform(n);
  const double r = 1 / std::sqrt(2.0);
  std::vector<Complex> in(8);
  for (std::size_t x = 0; x < 4; ++x) {
    in[x] = data[x] * r;
    in[x + 4] = -data[x] * r;
  }
  const auto out = entangling_oracle(n, "10") * in;
  const auto marked = grover_phase_oracle(n, "10") * data;
  for (std::size_t x = 0; x < 4; ++x) {
    EXPECT_NEAR(std::abs(out[x] - marked[x] * r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(out[x + 4] + marked[x] * r), 0.0, 1e-15);
  }
}

TEST(DiffusionTest, Properties) {
  const DenseUnitary d2 = grover_diffusion(2);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) EXPECT_DOUBLE_EQ(d2(r, c).real(), r == c ? -0.5 : 0.5);
  EXPECT_LE(MaxDiff(grover_diffusion(3) * Uniform(3), Uniform(3)), 1e-15);
  // (1,-1,0,...) is orthogonal to the uniform state.
  std::vector<Complex> orth(8);
  orth[0] = 1 / std::sqrt(2.0);
  orth[5] = -1 / std::sqrt(2.0);
  auto neg = orth;
  for (auto& v : neg) v = -v;
  EXPECT_LE(MaxDiff(grover_diffusion(3) * orth, neg), 1e-15);
  // H^n (2|0><0| - I) H^n.
  Circuit h(3, 0);
  for (int q = 0; q < 3; ++q) h.h(q);
  const DenseUnitary hn = dense_unitary_of(h);
  std::vector<Complex> diag(8, -1.0);
  diag[0] = 1.0;
  EXPECT_LE(max_abs_diff(hn * DenseMatrix::diagonal(diag) * hn, grover_diffusion(3)), 1e-12);
  EXPECT_THROW(grover_diffusion(11), CapacityError);
}

TEST(GroverTest, IterationsAndProbabilities) {
  EXPECT_EQ(GroverSpec({2, "11", std::nullopt}).resolved_iterations(), 1);
  EXPECT_EQ(GroverSpec({3, "000", std::nullopt}).resolved_iterations(), 2);
  EXPECT_EQ(GroverSpec({4, "0000", std::nullopt}).resolved_iterations(), 3);
  EXPECT_NEAR(exact_distribution(build_grover({2, "11", 1})).at(3), 1.0, 1e-10);
  for (std::uint64_t k = 0; k < 8; ++k)
    EXPECT_NEAR(exact_distribution(build_grover({3, format_bitstring(k, 3), 2})).at(k), 0.9453125, 1e-6);
  EXPECT_NEAR(exact_distribution(build_grover({4, "0110", 0})).at(6), 1.0 / 16, 1e-12);
}

TEST(GroverTest, RecurrenceOracleAgreesWithClosedForm) {
  EXPECT_NEAR(GroverByRecurrence(3, 2), 121.0 / 128.0, 1e-14);
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k <= 10; ++k) {
      const std::string key = format_bitstring((1U << n) - 1, n);
      EXPECT_NEAR(grover_success_probability(n, k), GroverByRecurrence(n, k), 1e-12);
      EXPECT_NEAR(exact_distribution(build_grover({n, key, k})).at((1U << n) - 1), GroverByRecurrence(n, k),
                  1e-9)
          << n << "," << k;
    }
}

TEST(GroverTest, CircuitShape) {
  const Circuit c = build_grover({2, "10", 1});
  EXPECT_EQ(c.instructions().size(), 2U + 2U + 2U);
  const auto& oracle = std::get<UnitaryOp>(c.instructions()[2]);
  EXPECT_EQ(oracle.label, "oracle_10");
  EXPECT_THROW(build_grover({2, "10", -1}), DomainError);
  EXPECT_THROW(build_grover({11, std::string(11, '0'), 1}), CapacityError);
}

TEST(ConstantSearchTest, AlgorithmReadsEveryKey) {
  for (int n = 1; n <= 5; ++n)
    for (std::uint64_t k = 0; k < (1U << n); ++k) {
      const auto dist = exact_distribution(build_constant_search({n, format_bitstring(k, n)}));
      ASSERT_EQ(dist.size(), 1U);
      EXPECT_NEAR(dist.at(k), 1.0, 1e-10);
    }
}

// Independent route: dense unitary of the gate part, then the marginal of
// the ancilla register.
TEST(ConstantSearchTest, DenseOracleAgrees) {
  for (int n = 1; n <= 3; ++n)
    for (std::uint64_t k = 0; k < (1U << n); ++k) {
      const Circuit full = build_constant_search({n, format_bitstring(k, n)});
      Circuit gates(full.qregs(), {});
      for (const auto& inst : full.instructions())
        if (std::holds_alternative<GateOp>(inst)) gates.append(inst);
      std::vector<Complex> e0(std::size_t{1} << (2 * n));
      e0[0] = 1.0;
      const auto amps = dense_unitary_of(gates) * e0;
      double p = 0.0;
      for (std::size_t i = 0; i < amps.size(); ++i)
        if ((i >> n) == k) p += std::norm(amps[i]);
      EXPECT_NEAR(p, 1.0, 1e-10);
    }
}

TEST(ConstantSearchTest, LiteralVariantIsUniform) {
  for (int n = 1; n <= 3; ++n) {
    const auto dist = exact_distribution(build_constant_search({n, std::string(n, '1'), SearchVariant::kQasmLiteral}));
    ASSERT_EQ(dist.size(), std::size_t{1} << n);
    for (const auto& [v, p] : dist) EXPECT_NEAR(p, std::ldexp(1.0, -n), 1e-10);
  }
  const auto r = execute(build_constant_search({2, "01", SearchVariant::kQasmLiteral}), 100, 0);
  EXPECT_FALSE(key_certainty(r, "01").certain);
  EXPECT_NEAR(key_certainty(r, "01").exact_probability, 0.25, 1e-10);
}

TEST(ConstantSearchTest, StructureAndLayers) {
  for (int n = 1; n <= 8; ++n) {
    const std::string key = std::string(static_cast<std::size_t>(n), '1');
    const Circuit c = build_constant_search({n, key});
    EXPECT_EQ(c.num_qubits(), 2 * n);
    EXPECT_EQ(c.num_clbits(), n);
    // X per key one, H/Z/H over 2n qubits, n CNOTs, n measures.
    EXPECT_EQ(c.instructions().size(), static_cast<std::size_t>(n + 3 * (2 * n) + n + n));
    const LayerProfile p = layer_profile(c);
    EXPECT_EQ(p.single_qubit_layers, 4) << n;
    EXPECT_EQ(p.multi_qubit_layers, 1) << n;
  }
  EXPECT_EQ(layer_profile(build_constant_search({3, "000"})).single_qubit_layers, 3);
}

TEST(ConstantSearchTest, Variants) {
  EXPECT_EQ(search_variant_from_string("algorithm"), SearchVariant::kAlgorithm);
  EXPECT_EQ(search_variant_from_string("qasm-literal"), SearchVariant::kQasmLiteral);
  EXPECT_EQ(to_string(SearchVariant::kQasmLiteral), "qasm-literal");
  EXPECT_THROW(search_variant_from_string("fast"), DomainError);
  EXPECT_THROW(build_constant_search({2, "012"}), DomainError);
}

TEST(KeyCertaintyTest, NeedsExactProbabilities) {
  const Circuit c = build_constant_search({2, "10"});
  EXPECT_TRUE(key_certainty(execute(c, 10, 0), "10").certain);
  EXPECT_THROW(key_certainty(execute(c, 10, 0, NoiseModel{0.0, 0.1, 0.1}), "10"), DomainError);
}

}  // namespace
}  // namespace qsearch
