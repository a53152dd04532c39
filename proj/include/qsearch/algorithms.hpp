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
 * @file algorithms.hpp
 * @brief Circuit builders: Hadamard-transform reference, Grover search with
 *        dense oracle/diffusion, phase and entangling oracles, and the
 *        constant-depth register-comparison search.
 *
 * Bitstring keys are written MSB first and bit i addresses qubit i, so key
 * "01" sets qubit 0.
 *
 * Constant-depth search layout for n-bit keys (2n qubits, n clbits):
 *   qubits 0..n-1   key register, prepared as |key>
 *   qubits n..2n-1  data register, starts in |0...0>
 *
 *   kAlgorithm:   X^key, H all, Z all, H all, CNOT(i -> n+i), measure n+i -> i
 *                 Since HZH = X the key register ends in |~key>, the data
 *                 register in |1...1>, and the CNOT layer leaves |key> in
 *                 the data register with certainty.
 *   kQasmLiteral: X^key, H all, CNOT(i -> n+i), measure n+i -> i, Z on data.
 *                 The CNOT targets sit in |+>, an X eigenstate, so nothing is
 *                 copied and every outcome has probability 2^-n.
 */
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/dense_matrix.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/report.hpp"
#include "qsearch/statevec.hpp"

namespace qsearch {

inline constexpr int kMaxOracleQubits = 10;

namespace algo_detail {

inline std::uint64_t checked_key(int n, const std::string& key, int max_n = kMaxOracleQubits) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > max_n) {
    throw CapacityError("n = " + std::to_string(n) + " exceeds the limit of " + std::to_string(max_n));
  }
  if (static_cast<int>(key.size()) != n) {
    throw DomainError("key '" + key + "' has length " + std::to_string(key.size()) +
                      ", expected " + std::to_string(n));
  }
  return parse_bitstring(key);
}

inline std::vector<int> range(int first, int count) {
  std::vector<int> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[static_cast<std::size_t>(i)] = first + i;
  return out;
}

}  // namespace algo_detail

/// H on every qubit of |x>, evaluated from the closed form
/// amplitude(y) = (-1)^{popcount(x & y)} / sqrt(2^n).
inline StateVector hadamard_transform_reference(const std::string& x, int n) {
  const std::uint64_t xv = algo_detail::checked_key(n, x);
  const std::uint64_t dim = std::uint64_t{1} << n;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  std::vector<Complex> amps(dim);
  for (std::uint64_t y = 0; y < dim; ++y) {
    const bool odd = (std::popcount(xv & y) & 1) != 0;
    amps[y] = odd ? -scale : scale;
  }
  return StateVector::from_amplitudes(std::move(amps));
}

/// diag(e^{i alpha f(x)}), f(x) = [x == key].
inline DenseUnitary phase_oracle(int n, const std::string& key, double alpha) {
  const std::uint64_t k = algo_detail::checked_key(n, key);
  std::vector<Complex> diag(std::size_t{1} << n, Complex{1.0, 0.0});
  diag[k] = std::polar(1.0, alpha);
  return DenseUnitary::diagonal(diag);
}

/// diag((-1)^{f(x)}).
inline DenseUnitary grover_phase_oracle(int n, const std::string& key) {
  const std::uint64_t k = algo_detail::checked_key(n, key);
  std::vector<Complex> diag(std::size_t{1} << n, Complex{1.0, 0.0});
  diag[k] = -1.0;
  return DenseUnitary::diagonal(diag);
}

/// |x, y> -> |x, y XOR f(x)> over n+1 qubits; the ancilla y is qubit n
/// (index x + y * 2^n).
inline DenseUnitary entangling_oracle(int n, const std::string& key) {
  const std::uint64_t k = algo_detail::checked_key(n, key, kMaxOracleQubits - 1);
  const std::uint64_t half = std::uint64_t{1} << n;
  DenseUnitary u(2 * half);
  for (std::uint64_t y = 0; y < 2; ++y)
    for (std::uint64_t x = 0; x < half; ++x) {
      const std::uint64_t out_y = y ^ static_cast<std::uint64_t>(x == k);
      u(x + out_y * half, x + y * half) = 1.0;
    }
  return u;
}

/// 2|psi><psi| - I with |psi> the uniform superposition: 2/N - delta_ij.
inline DenseUnitary grover_diffusion(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  if (n > kMaxOracleQubits) throw CapacityError("diffusion limited to 10 qubits");
  const std::size_t dim = std::size_t{1} << n;
  const double off = 2.0 / static_cast<double>(dim);
  DenseUnitary d(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) d(r, c) = r == c ? off - 1.0 : off;
  return d;
}

struct GroverSpec {
  int n = 1;
  std::string key;
  std::optional<int> iterations;  ///< nullopt = floor(pi/4 * sqrt(2^n))

  int resolved_iterations() const {
    if (iterations) {
      if (*iterations < 0) throw DomainError("iterations must be >= 0");
      return *iterations;
    }
    return static_cast<int>(std::floor(std::numbers::pi / 4.0 *
                                       std::sqrt(std::ldexp(1.0, n))));
  }
};

/// H on all qubits, `iterations` x (oracle, diffusion) as dense operators,
/// then measure qubit i into clbit i.
inline Circuit build_grover(const GroverSpec& spec) {
  algo_detail::checked_key(spec.n, spec.key);
  const int iterations = spec.resolved_iterations();
  const auto all = algo_detail::range(0, spec.n);
  Circuit c(spec.n, spec.n, "grover");
  for (int q : all) c.h(q);
  const DenseUnitary oracle = grover_phase_oracle(spec.n, spec.key);
  const DenseUnitary diffusion = grover_diffusion(spec.n);
  for (int it = 0; it < iterations; ++it) {
    c.unitary("oracle_" + spec.key, oracle, all);
    c.unitary("diffusion", diffusion, all);
  }
  for (int q : all) c.measure(q, q);
  return c;
}

/// sin^2((2k+1) asin(2^{-n/2})): success probability after k iterations.
inline double grover_success_probability(int n, int k) {
  const double theta = std::asin(std::sqrt(std::ldexp(1.0, -n)));
  const double s = std::sin((2.0 * k + 1.0) * theta);
  return s * s;
}

enum class SearchVariant { kAlgorithm, kQasmLiteral };

inline std::string to_string(SearchVariant v) {
  return v == SearchVariant::kAlgorithm ? "algorithm" : "qasm-literal";
}

inline SearchVariant search_variant_from_string(const std::string& s) {
  if (s == "algorithm" || s == "algorithm-faithful") return SearchVariant::kAlgorithm;
  if (s == "qasm-literal" || s == "literal") return SearchVariant::kQasmLiteral;
  throw DomainError("unknown search variant '" + s + "'");
}

struct SearchSpec {
  int n = 1;
  std::string key;
  SearchVariant variant = SearchVariant::kAlgorithm;
};

inline Circuit build_constant_search(const SearchSpec& spec) {
  const std::uint64_t k = algo_detail::checked_key(spec.n, spec.key);
  const int n = spec.n;
  Circuit c({{"q", 2 * n}}, {{"res", n}},
            spec.variant == SearchVariant::kAlgorithm ? "constant_search" : "constant_search_literal");
  for (int i = 0; i < n; ++i)
    if ((k >> i) & 1U) c.x(i);
  for (int q = 0; q < 2 * n; ++q) c.h(q);
  if (spec.variant == SearchVariant::kAlgorithm) {
    for (int q = 0; q < 2 * n; ++q) c.z(q);
    for (int q = 0; q < 2 * n; ++q) c.h(q);
  }
  for (int i = 0; i < n; ++i) c.cx(i, n + i);
  for (int i = 0; i < n; ++i) c.measure(n + i, i);
  if (spec.variant == SearchVariant::kQasmLiteral) {
    for (int i = 0; i < n; ++i) c.z(n + i);
  }
  return c;
}

/// Gate layers under as-late-as-possible scheduling (measures and barriers
/// are not scheduled). A layer holding any multi-qubit gate counts as a
/// multi-qubit layer.
struct LayerProfile {
  int single_qubit_layers = 0;
  int multi_qubit_layers = 0;
  int depth() const { return single_qubit_layers + multi_qubit_layers; }
};

inline LayerProfile layer_profile(const Circuit& c) {
  std::vector<int> from_end(static_cast<std::size_t>(c.num_qubits()), 0);
  std::map<int, bool> layer_has_multi;
  const auto& insts = c.instructions();
  for (auto it = insts.rbegin(); it != insts.rend(); ++it) {
    if (std::holds_alternative<MeasureOp>(*it) || std::holds_alternative<BarrierOp>(*it)) continue;
    const auto qs = touched_qubits(*it);
    int layer = 0;
    for (int q : qs) layer = std::max(layer, from_end[static_cast<std::size_t>(q)] + 1);
    for (int q : qs) from_end[static_cast<std::size_t>(q)] = layer;
    layer_has_multi[layer] = layer_has_multi[layer] || qs.size() > 1;
  }
  LayerProfile p;
  for (const auto& [layer, multi] : layer_has_multi) (multi ? p.multi_qubit_layers : p.single_qubit_layers)++;
  return p;
}

/// Whether a noiseless report reads the key with certainty.
struct KeyCertainty {
  double exact_probability = 0.0;
  bool certain = false;
};

inline KeyCertainty key_certainty(const CountsReport& report, const std::string& key,
                                  double tol = 1e-10) {
  const auto p = report.exact(key);
  if (!p) throw DomainError("key certainty needs exact probabilities (noiseless run)");
  return {*p, std::abs(*p - 1.0) <= tol};
}

}  // namespace qsearch
