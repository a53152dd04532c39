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
 * @file statevec.hpp
 * @brief Dense state-vector engine.
 *
 * Amplitude i describes the basis state whose qubit j equals bit j of i
 * (little-endian: qubit 0 is the least-significant bit). Gates are applied
 * in place by visiting every amplitude group addressed by the target bit
 * masks exactly once, so the result does not depend on visiting order.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "qsearch/dense_matrix.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/gates.hpp"
#include "qsearch/report.hpp"
#include "qsearch/rng.hpp"

namespace qsearch {

/// Distinct, in-range qubit indices; throws DomainError otherwise.
inline void check_qubits(std::span<const int> qubits, int num_qubits) {
  for (std::size_t a = 0; a < qubits.size(); ++a) {
    if (qubits[a] < 0 || qubits[a] >= num_qubits) {
      throw DomainError("qubit index " + std::to_string(qubits[a]) + " out of range for " +
                        std::to_string(num_qubits) + " qubits");
    }
    for (std::size_t b = 0; b < a; ++b)
      if (qubits[a] == qubits[b]) {
        throw DomainError("duplicate qubit index " + std::to_string(qubits[a]));
      }
  }
}

class StateVector {
 public:
  static constexpr int kMaxQubits = 24;

  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits) : StateVector(num_qubits, 0) {}

  StateVector(int num_qubits, std::uint64_t basis_index) : num_qubits_(num_qubits) {
    if (num_qubits < 1) throw DomainError("state needs at least one qubit");
    if (num_qubits > kMaxQubits) {
      throw CapacityError(std::to_string(num_qubits) + " qubits exceeds the engine cap of " +
                          std::to_string(kMaxQubits));
    }
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (basis_index >= dim) {
      throw DomainError("basis index " + std::to_string(basis_index) + " out of range for " +
                        std::to_string(num_qubits) + " qubits");
    }
    amps_.assign(dim, Complex{});
    amps_[basis_index] = 1.0;
  }

  /// Adopts raw amplitudes; length must be a power of two. No normalization.
  static StateVector from_amplitudes(std::vector<Complex> amps) {
    const std::size_t dim = amps.size();
    if (dim < 2 || (dim & (dim - 1)) != 0) {
      throw DomainError("amplitude count must be a power of two >= 2");
    }
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    StateVector s(n);
    s.amps_ = std::move(amps);
    return s;
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::size_t size() const noexcept { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  void apply(const GateDef& gate, std::span<const int> qubits) {
    if (static_cast<int>(qubits.size()) != gate.arity()) {
      throw DomainError("gate " + std::string(gate.symbol()) + " expects " +
                        std::to_string(gate.arity()) + " qubit(s), got " +
                        std::to_string(qubits.size()));
    }
    check_qubits(qubits, num_qubits_);
    switch (gate.kind()) {
      case GateKind::I: return;
      case GateKind::X: return apply_x(qubits[0]);
      case GateKind::CX: return apply_cx(qubits[0], qubits[1]);
      case GateKind::Z:
      case GateKind::S:
      case GateKind::Sdg:
      case GateKind::T:
      case GateKind::Tdg:
      case GateKind::P: {
        const DenseMatrix m = gate.matrix();
        return apply_phase(qubits[0], m(1, 1));
      }
      default: return apply_single(gate.matrix(), qubits[0]);
    }
  }

  void apply(const GateDef& gate, std::initializer_list<int> qubits) {
    apply(gate, std::span<const int>(qubits.begin(), qubits.size()));
  }

  /// Applies an arbitrary 2^k x 2^k matrix whose local index bit j is
  /// qubit `qubits[j]` (little-endian, like the register).
  void apply_matrix(const DenseMatrix& m, std::span<const int> qubits) {
    check_qubits(qubits, num_qubits_);
    const std::size_t k = qubits.size();
    if (m.dim() != (std::size_t{1} << k)) {
      throw DomainError("matrix dimension " + std::to_string(m.dim()) + " does not match " +
                        std::to_string(k) + " qubit(s)");
    }
    std::uint64_t target_mask = 0;
    for (int q : qubits) target_mask |= std::uint64_t{1} << q;
    const std::size_t local_dim = m.dim();
    std::vector<std::uint64_t> offsets(local_dim, 0);
    for (std::size_t l = 0; l < local_dim; ++l)
      for (std::size_t j = 0; j < k; ++j)
        if ((l >> j) & 1U) offsets[l] |= std::uint64_t{1} << qubits[j];
    std::vector<Complex> in(local_dim), out(local_dim);
    for (std::uint64_t base = 0; base < amps_.size(); ++base) {
      if (base & target_mask) continue;
      for (std::size_t l = 0; l < local_dim; ++l) in[l] = amps_[base | offsets[l]];
      for (std::size_t r = 0; r < local_dim; ++r) {
        Complex acc{};
        for (std::size_t c = 0; c < local_dim; ++c) acc += m(r, c) * in[c];
        out[r] = acc;
      }
      for (std::size_t l = 0; l < local_dim; ++l) amps_[base | offsets[l]] = out[l];
    }
  }

  /// Probability that `qubit` reads 1.
  double probability_one(int qubit) const {
    const int q[1] = {qubit};
    check_qubits(q, num_qubits_);
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    double p = 0.0;
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if (i & mask) p += std::norm(amps_[i]);
    return p;
  }

  /// Projects `qubit` onto `outcome` and renormalizes. The outcome must have
  /// nonzero probability.
  void collapse(int qubit, int outcome) {
    const double p1 = probability_one(qubit);
    const double p = outcome ? p1 : 1.0 - p1;
    if (p <= 0.0) throw DomainError("cannot collapse onto a zero-probability outcome");
    const double scale = 1.0 / std::sqrt(p);
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      const bool bit = (i & mask) != 0;
      amps_[i] = bit == (outcome != 0) ? amps_[i] * scale : Complex{};
    }
  }

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  void apply_x(int q) {
    const std::uint64_t m = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if (!(i & m)) std::swap(amps_[i], amps_[i | m]);
  }

  void apply_cx(int control, int target) {
    const std::uint64_t mc = std::uint64_t{1} << control;
    const std::uint64_t mt = std::uint64_t{1} << target;
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if ((i & mc) && !(i & mt)) std::swap(amps_[i], amps_[i | mt]);
  }

  void apply_phase(int q, Complex phase) {
    const std::uint64_t m = std::uint64_t{1} << q;
    for (std::uint64_t i = 0; i < amps_.size(); ++i)
      if (i & m) amps_[i] *= phase;
  }

  void apply_single(const DenseMatrix& g, int q) {
    const std::uint64_t m = std::uint64_t{1} << q;
    const Complex g00 = g(0, 0), g01 = g(0, 1), g10 = g(1, 0), g11 = g(1, 1);
    for (std::uint64_t i = 0; i < amps_.size(); ++i) {
      if (i & m) continue;
      const Complex a0 = amps_[i], a1 = amps_[i | m];
      amps_[i] = g00 * a0 + g01 * a1;
      amps_[i | m] = g10 * a0 + g11 * a1;
    }
  }

  int num_qubits_;
  std::vector<Complex> amps_;
};

inline StateVector init_basis(int num_qubits, std::uint64_t basis_index) {
  return StateVector(num_qubits, basis_index);
}

/// Value-semantics wrapper around StateVector::apply.
inline StateVector apply_gate(StateVector state, const GateDef& gate, std::span<const int> qubits) {
  state.apply(gate, qubits);
  return state;
}

inline StateVector apply_gate(StateVector state, const GateDef& gate,
                              std::initializer_list<int> qubits) {
  state.apply(gate, qubits);
  return state;
}

/// Marginal distribution over `qubits`; entry l has bit j equal to the
/// value of qubits[j].
inline std::vector<double> probabilities(const StateVector& state, std::span<const int> qubits) {
  if (qubits.empty()) throw DomainError("probabilities: empty qubit subset");
  check_qubits(qubits, state.num_qubits());
  std::vector<double> table(std::size_t{1} << qubits.size(), 0.0);
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    std::size_t l = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j)
      l |= static_cast<std::size_t>((i >> qubits[j]) & 1U) << j;
    table[l] += std::norm(state[i]);
  }
  return table;
}

inline std::vector<double> probabilities(const StateVector& state,
                                         std::initializer_list<int> qubits) {
  return probabilities(state, std::span<const int>(qubits.begin(), qubits.size()));
}

struct Measurement {
  int qubit = 0;
  int clbit = 0;
  friend bool operator==(const Measurement&, const Measurement&) = default;
};

/// Discrete distribution over classical register values, sampled by
/// inverse CDF in ascending value order.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(const std::map<std::uint64_t, double>& dist) {
    double acc = 0.0;
    for (const auto& [value, p] : dist) {
      if (p <= 0.0) continue;
      acc += p;
      values_.push_back(value);
      cumulative_.push_back(acc);
    }
    if (values_.empty()) throw DomainError("distribution has no mass");
  }

  template <class Engine>
  std::uint64_t operator()(Engine& engine) const {
    const double u = uniform01(engine) * cumulative_.back();
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                                           values_.size() - 1);
    return values_[idx];
  }

 private:
  std::vector<std::uint64_t> values_;
  std::vector<double> cumulative_;
};

/// Probabilities below this are reported as absent.
inline constexpr double kReportFloor = 1e-14;

inline std::map<std::string, double> render_distribution(
    const std::map<std::uint64_t, double>& dist, int num_clbits) {
  std::map<std::string, double> out;
  for (const auto& [value, p] : dist)
    if (p > kReportFloor) out[format_bitstring(value, num_clbits)] += p;
  return out;
}

/// Draws `shots` samples from one mt19937_64 stream seeded with `seed`.
inline std::map<std::string, std::uint64_t> sample_counts(
    const std::map<std::uint64_t, double>& dist, int num_clbits, std::uint64_t shots,
    std::uint64_t seed) {
  const DiscreteSampler sampler(dist);
  RunEngine engine(seed);
  std::map<std::uint64_t, std::uint64_t> raw;
  for (std::uint64_t s = 0; s < shots; ++s) ++raw[sampler(engine)];
  std::map<std::string, std::uint64_t> counts;
  for (const auto& [value, n] : raw) counts[format_bitstring(value, num_clbits)] = n;
  return counts;
}

/// Joint distribution of the classical register when each listed qubit is
/// read into its clbit. Clbits never written stay 0.
inline std::map<std::uint64_t, double> clbit_distribution(const StateVector& state,
                                                          std::span<const Measurement> measured) {
  std::map<std::uint64_t, double> dist;
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    const double p = std::norm(state[i]);
    if (p == 0.0) continue;
    std::uint64_t value = 0;
    for (const auto& m : measured) value |= ((i >> m.qubit) & 1U) << m.clbit;
    dist[value] += p;
  }
  return dist;
}

/// Samples the measured qubits of `state` (without disturbing it).
/// The classical register width defaults to max clbit + 1.
inline CountsReport sample_measurements(const StateVector& state,
                                        std::span<const Measurement> measured,
                                        std::uint64_t shots, std::uint64_t seed,
                                        int num_clbits = -1) {
  if (shots < 1) throw DomainError("shots must be >= 1");
  if (measured.empty()) throw DomainError("no measured qubits");
  int width = 0;
  for (std::size_t a = 0; a < measured.size(); ++a) {
    const int q[1] = {measured[a].qubit};
    check_qubits(q, state.num_qubits());
    if (measured[a].clbit < 0 || measured[a].clbit >= 63) throw DomainError("clbit index out of range");
    for (std::size_t b = 0; b < a; ++b)
      if (measured[a].clbit == measured[b].clbit) {
        throw DomainError("clbit " + std::to_string(measured[a].clbit) + " measured twice");
      }
    width = std::max(width, measured[a].clbit + 1);
  }
  if (num_clbits >= 0) {
    if (num_clbits < width) throw DomainError("num_clbits smaller than largest clbit index");
    width = num_clbits;
  }
  const auto dist = clbit_distribution(state, measured);
  CountsReport report;
  report.shots = shots;
  report.seed = seed;
  report.num_clbits = width;
  report.counts = sample_counts(dist, width, shots, seed);
  report.exact_probabilities = render_distribution(dist, width);
  return report;
}

inline CountsReport sample_measurements(const StateVector& state,
                                        std::initializer_list<Measurement> measured,
                                        std::uint64_t shots, std::uint64_t seed,
                                        int num_clbits = -1) {
  return sample_measurements(state, std::span<const Measurement>(measured.begin(), measured.size()),
                             shots, seed, num_clbits);
}

}  // namespace qsearch
