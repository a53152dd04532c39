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
 * @file executor.hpp
 * @brief Runs a Circuit on the state-vector engine.
 *
 * Measurement collapses the state. Noiseless runs compute the exact
 * distribution of the classical register once and sample it from a single
 * mt19937_64 stream:
 *
 *  - if no operation touches a qubit after it has been measured, the final
 *    state is evolved once and the measured qubits are marginalized;
 *  - otherwise every measurement splits the state into weighted branches
 *    (exhaustive trajectory enumeration) so later gates act on the
 *    post-measurement state.
 *
 * Noisy runs are per-shot trajectories with a SplitMix64 stream derived
 * from (seed, shot), so each shot is reproducible on its own and shots may
 * be simulated on several threads without changing the result.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <thread>
#include <type_traits>
#include <variant>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/gates.hpp"
#include "qsearch/noise_model.hpp"
#include "qsearch/qasm.hpp"
#include "qsearch/report.hpp"
#include "qsearch/rng.hpp"
#include "qsearch/statevec.hpp"

namespace qsearch {

/// Upper bound on (live branches) x (amplitudes per branch).
inline constexpr std::uint64_t kMaxBranchAmplitudes = std::uint64_t{1} << 26;

/// Branches below this weight are dropped.
inline constexpr double kBranchFloor = 1e-15;

/// True when a gate, dense operator or measurement acts on a qubit that an
/// earlier measurement already read.
inline bool acts_after_measure(const Circuit& c) {
  std::set<int> measured;
  for (const auto& inst : c.instructions()) {
    if (std::holds_alternative<BarrierOp>(inst)) continue;
    for (int q : touched_qubits(inst))
      if (measured.count(q)) return true;
    if (const auto* m = std::get_if<MeasureOp>(&inst)) measured.insert(m->qubit);
  }
  return false;
}

namespace exec_detail {

template <class Fn>
void apply_unitary_part(StateVector& s, const Instruction& inst, Fn&& on_gate_done) {
  if (const auto* g = std::get_if<GateOp>(&inst)) {
    s.apply(g->gate, g->qubits);
    on_gate_done(g->qubits);
  } else if (const auto* u = std::get_if<UnitaryOp>(&inst)) {
    s.apply_matrix(u->matrix, u->qubits);
    on_gate_done(u->qubits);
  }
}

struct Branch {
  double weight;
  StateVector state;
  std::uint64_t clbits;
};

}  // namespace exec_detail

/// Exact distribution of the classical register (value bit k = clbit k).
inline std::map<std::uint64_t, double> exact_distribution(const Circuit& circuit) {
  require_valid(circuit);
  const int n = circuit.num_qubits();
  if (!acts_after_measure(circuit)) {
    StateVector s(n);
    std::vector<Measurement> measured;
    for (const auto& inst : circuit.instructions()) {
      exec_detail::apply_unitary_part(s, inst, [](const std::vector<int>&) {});
      if (const auto* m = std::get_if<MeasureOp>(&inst)) measured.push_back({m->qubit, m->clbit});
    }
    return clbit_distribution(s, measured);
  }

  std::vector<exec_detail::Branch> branches;
  branches.push_back({1.0, StateVector(n), 0});
  for (const auto& inst : circuit.instructions()) {
    if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      std::vector<exec_detail::Branch> next;
      for (auto& b : branches) {
        const double p1 = std::clamp(b.state.probability_one(m->qubit), 0.0, 1.0);
        const double p0 = 1.0 - p1;
        if (b.weight * p1 > kBranchFloor) {
          StateVector s1 = b.state;
          s1.collapse(m->qubit, 1);
          next.push_back({b.weight * p1, std::move(s1), b.clbits | (std::uint64_t{1} << m->clbit)});
        }
        if (b.weight * p0 > kBranchFloor) {
          b.state.collapse(m->qubit, 0);
          next.push_back({b.weight * p0, std::move(b.state), b.clbits});
        }
      }
      branches = std::move(next);
      if (branches.size() * (std::uint64_t{1} << n) > kMaxBranchAmplitudes) {
        throw CapacityError("measurement branching exceeds the exact-simulation budget");
      }
    } else {
      for (auto& b : branches) exec_detail::apply_unitary_part(b.state, inst, [](const std::vector<int>&) {});
    }
  }
  std::map<std::uint64_t, double> dist;
  for (const auto& b : branches) dist[b.clbits] += b.weight;
  return dist;
}

namespace exec_detail {

// Indices of clbits that some measure writes, ascending.
inline std::vector<int> written_clbits(const Circuit& c) {
  std::set<int> out;
  for (const auto& inst : c.instructions())
    if (const auto* m = std::get_if<MeasureOp>(&inst)) out.insert(m->clbit);
  return {out.begin(), out.end()};
}

inline bool flip(double u, int true_bit, const NoiseModel& noise) {
  return u < (true_bit ? noise.readout_p10 : noise.readout_p01);
}

inline void depolarize(StateVector& s, const std::vector<int>& qubits, double p, SplitMix64& eng) {
  if (p == 0.0) return;
  for (int q : qubits) {
    if (uniform01(eng) >= p) continue;
    const int which = std::min(2, static_cast<int>(uniform01(eng) * 3.0));
    static constexpr GateKind kPaulis[3] = {GateKind::X, GateKind::Y, GateKind::Z};
    s.apply(GateDef(kPaulis[which]), {q});
  }
}

// One full trajectory; returns the recorded classical register.
inline std::uint64_t trajectory(const Circuit& c, const NoiseModel& noise, SplitMix64 eng) {
  StateVector s(c.num_qubits());
  std::uint64_t clbits = 0;
  for (const auto& inst : c.instructions()) {
    if (const auto* m = std::get_if<MeasureOp>(&inst)) {
      const double p1 = std::clamp(s.probability_one(m->qubit), 0.0, 1.0);
      int outcome = uniform01(eng) < p1 ? 1 : 0;
      // Guard against rounding selecting an outcome with no weight.
      if ((outcome ? p1 : 1.0 - p1) <= 0.0) outcome ^= 1;
      s.collapse(m->qubit, outcome);
      int recorded = outcome;
      if (flip(uniform01(eng), outcome, noise)) recorded ^= 1;
      if (recorded) clbits |= std::uint64_t{1} << m->clbit;
    } else {
      apply_unitary_part(s, inst, [&](const std::vector<int>& qs) {
        depolarize(s, qs, noise.depolarizing_p, eng);
      });
    }
  }
  return clbits;
}

// Runs `one_shot(shot)` for every shot, spread over threads; results are
// stored by shot index so the outcome is independent of scheduling.
template <class Fn>
std::vector<std::uint64_t> run_shots(std::uint64_t shots, std::uint64_t work_per_shot, Fn one_shot) {
  std::vector<std::uint64_t> out(shots);
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 8);
  if (shots * work_per_shot < (std::uint64_t{1} << 16)) threads = 1;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, shots));
  auto work = [&](unsigned t) {
    for (std::uint64_t s = t; s < shots; s += threads) out[s] = one_shot(s);
  };
  if (threads == 1) {
    work(0);
    return out;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace exec_detail

/// Executes `circuit` for `shots` shots. With no noise (or an all-zero
/// model) the report carries exact probabilities; noisy reports do not.
inline CountsReport execute(const Circuit& circuit, std::uint64_t shots, std::uint64_t seed,
                            const std::optional<NoiseModel>& noise = std::nullopt) {
  require_valid(circuit);
  if (shots < 1) throw DomainError("shots must be >= 1");
  if (noise) noise->validate();
  const int width = circuit.num_clbits();
  CountsReport report;
  report.shots = shots;
  report.seed = seed;
  report.num_clbits = width;
  report.circuit_digest = circuit_digest(circuit);

  if (!noise || noise->is_ideal()) {
    const auto dist = exact_distribution(circuit);
    report.counts = sample_counts(dist, width, shots, seed);
    report.exact_probabilities = render_distribution(dist, width);
    return report;
  }

  std::vector<std::uint64_t> outcomes;
  if (noise->depolarizing_p == 0.0) {
    // Readout noise only: ideal outcome from the exact distribution, then
    // independent flips of each written clbit.
    const DiscreteSampler sampler(exact_distribution(circuit));
    const auto clbits = exec_detail::written_clbits(circuit);
    outcomes = exec_detail::run_shots(shots, clbits.size() + 1, [&](std::uint64_t shot) {
      SplitMix64 eng = shot_stream(seed, shot);
      std::uint64_t v = sampler(eng);
      for (int k : clbits) {
        const int bit = static_cast<int>((v >> k) & 1U);
        if (exec_detail::flip(uniform01(eng), bit, *noise)) v ^= std::uint64_t{1} << k;
      }
      return v;
    });
  } else {
    const std::uint64_t work =
        (std::uint64_t{1} << circuit.num_qubits()) * (circuit.instructions().size() + 1);
    outcomes = exec_detail::run_shots(shots, work, [&](std::uint64_t shot) {
      return exec_detail::trajectory(circuit, *noise, shot_stream(seed, shot));
    });
  }
  std::map<std::uint64_t, std::uint64_t> raw;
  for (auto v : outcomes) ++raw[v];
  for (const auto& [v, n] : raw) report.counts[format_bitstring(v, width)] = n;
  return report;
}

}  // namespace qsearch
