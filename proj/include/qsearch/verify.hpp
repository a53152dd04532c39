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

/**
 * @file verify.hpp
 * @brief Self-check suites behind `qsearch verify`.
 *
 * Each suite reports the largest deviation it observed; it passes when that
 * deviation is within the requested tolerance. Suites that compare exactly
 * (round trip, determinism) report the number of mismatches instead.
 */
#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qsearch/algorithms.hpp"
#include "qsearch/dense_oracle.hpp"
#include "qsearch/executor.hpp"
#include "qsearch/gates.hpp"
#include "qsearch/qasm.hpp"
#include "qsearch/random_circuit.hpp"
#include "qsearch/statevec.hpp"

namespace qsearch {

struct SuiteResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double millis = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const {
    return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
  }
};

namespace verify_detail {

inline std::vector<Complex> amplitudes_of(const StateVector& s) {
  return {s.amplitudes().begin(), s.amplitudes().end()};
}

inline double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

inline double gate_identities() {
  double worst = 0.0;
  for (GateKind k : kAllGateKinds) {
    const GateDef g = k == GateKind::P ? GateDef(k, 0.7) : GateDef(k);
    worst = std::max(worst, unitarity_error(g.matrix()));
  }
  using K = GateKind;
  auto seq = [](std::initializer_list<GateDef> gs) {
    return sequence_product(std::span<const GateDef>(gs.begin(), gs.size()));
  };
  const double pi = std::numbers::pi;
  const std::pair<DenseMatrix, DenseMatrix> identities[] = {
      {seq({K::H, K::Z, K::H}), seq({K::X})},
      {seq({K::H, K::X, K::H}), seq({K::Z})},
      {seq({K::S, K::S}), seq({K::Z})},
      {seq({K::T, K::T}), seq({K::S})},
      {seq({K::T, K::T, K::T, K::T}), seq({K::Z})},
      {seq({K::H, K::H}), seq({K::I})},
      {seq({GateDef(K::P, pi)}), seq({K::Z})},
      {seq({GateDef(K::P, pi / 2)}), seq({K::S})},
      {seq({GateDef(K::P, pi / 4)}), seq({K::T})},
  };
  for (const auto& [lhs, rhs] : identities) worst = std::max(worst, phase_insensitive_diff(lhs, rhs));
  return worst;
}

inline double oracle_equivalence(int max_qubits, std::uint64_t seed, int circuits) {
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int i = 0; i < circuits; ++i) {
    RandomCircuitOptions opt;
    opt.num_qubits = std::uniform_int_distribution<int>(1, max_qubits)(rng);
    opt.depth = std::uniform_int_distribution<int>(0, 20)(rng);
    const Circuit c = random_circuit(rng, opt);
    StateVector s(opt.num_qubits);
    for (const auto& inst : c.instructions()) {
      const auto& g = std::get<GateOp>(inst);
      s.apply(g.gate, g.qubits);
    }
    const DenseUnitary u = dense_unitary_of(c);
    std::vector<Complex> e0(u.dim());
    e0[0] = 1.0;
    worst = std::max(worst, max_diff(amplitudes_of(s), u * e0));
  }
  return worst;
}

inline double hadamard_transform(int max_n) {
  double worst = 0.0;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      StateVector s(n, x);
      for (int q = 0; q < n; ++q) s.apply(GateKind::H, {q});
      const auto ref = hadamard_transform_reference(format_bitstring(x, n), n);
      worst = std::max(worst, max_diff(amplitudes_of(s), amplitudes_of(ref)));
    }
  return worst;
}

inline double grover_angle(int max_n) {
  double worst = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const std::string key = format_bitstring((std::uint64_t{1} << n) - 1 - (n > 1 ? 1 : 0), n);
    for (int k = 0; k <= 10; ++k) {
      const auto dist = exact_distribution(build_grover({n, key, k}));
      const auto it = dist.find(parse_bitstring(key));
      const double p = it == dist.end() ? 0.0 : it->second;
      worst = std::max(worst, std::abs(p - grover_success_probability(n, k)));
    }
  }
  return worst;
}

inline double constant_search(int max_n) {
  double worst = 0.0;
  for (int n = 1; n <= max_n; ++n)
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) {
      const auto dist = exact_distribution(build_constant_search({n, format_bitstring(k, n)}));
      const auto it = dist.find(k);
      worst = std::max(worst, std::abs(1.0 - (it == dist.end() ? 0.0 : it->second)));
    }
  return worst;
}

inline double round_trip(int max_qubits, std::uint64_t seed, int circuits) {
  std::mt19937_64 rng(seed);
  int mismatches = 0;
  for (int i = 0; i < circuits; ++i) {
    RandomCircuitOptions opt;
    opt.num_qubits = std::uniform_int_distribution<int>(1, max_qubits)(rng);
    opt.depth = std::uniform_int_distribution<int>(0, 20)(rng);
    opt.measure = true;
    opt.barriers = true;
    opt.split_registers = (i % 2) == 1;
    const Circuit c = random_circuit(rng, opt);
    if (!(parse_qasm(print_qasm(c)) == c)) ++mismatches;
  }
  return mismatches;
}

inline double determinism(int max_qubits, std::uint64_t seed) {
  const int n = std::min(max_qubits, 3);
  int mismatches = 0;
  const Circuit c = build_constant_search({n, std::string(static_cast<std::size_t>(n), '1'),
                                           SearchVariant::kQasmLiteral});
  if (to_json(execute(c, 2048, seed)) != to_json(execute(c, 2048, seed))) ++mismatches;
  const NoiseModel noisy{0.01, 0.02, 0.03};
  if (to_json(execute(c, 512, seed, noisy)) != to_json(execute(c, 512, seed, noisy))) ++mismatches;
  return mismatches;
}

}  // namespace verify_detail

/// Runs every suite at up to `max_qubits` qubits per register.
inline VerifyReport run_verification(int max_qubits = 5, double tolerance = 1e-10,
                                     std::uint64_t seed = 0) {
  if (max_qubits < 1) throw DomainError("max_qubits must be >= 1");
  const int capped = std::min(max_qubits, kDenseOracleMaxQubits);
  struct Suite {
    const char* name;
    std::function<double()> run;
    std::string detail;
  };
  const std::vector<Suite> suites = {
      {"gate-identity", [] { return verify_detail::gate_identities(); },
       "unitarity, HZH=X, HXH=Z, S^2=Z, T^2=S, T^4=Z, P(pi)=Z"},
      {"oracle-equivalence", [&] { return verify_detail::oracle_equivalence(capped, seed, 200); },
       "200 random circuits vs dense Kronecker-product unitary"},
      {"hadamard-transform", [&] { return verify_detail::hadamard_transform(std::min(capped, 4)); },
       "per-qubit H vs closed-form transform, all basis inputs"},
      {"grover-angle", [&] { return verify_detail::grover_angle(capped); },
       "P(key) vs sin^2((2k+1) theta), k <= 10"},
      {"constant-search", [&] { return verify_detail::constant_search(std::min(capped, 5)); },
       "algorithm variant reads every key with certainty"},
      {"qasm-round-trip", [&] { return verify_detail::round_trip(capped, seed, 100); },
       "parse(print(c)) == c, mismatch count"},
      {"determinism", [&] { return verify_detail::determinism(capped, seed); },
       "byte-identical JSON for repeated seeded runs, mismatch count"},
  };
  VerifyReport report;
  for (const auto& suite : suites) {
    const auto start = std::chrono::steady_clock::now();
    SuiteResult r;
    r.name = suite.name;
    r.detail = suite.detail;
    r.max_error = suite.run();
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.passed = r.max_error <= tolerance;
    report.suites.push_back(std::move(r));
  }
  return report;
}

}  // namespace qsearch
