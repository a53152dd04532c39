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

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "qsearch/circuit.hpp"
#include "qsearch/executor.hpp"
#include "qsearch/noise_model.hpp"
#include "qsearch/report.hpp"

namespace qsearch {

/// Noisy trajectory execution. Deterministic per (seed, shot); an all-zero
/// model gives the same report as noiseless execute().
inline CountsReport apply_noisy_execution(const Circuit& circuit, const NoiseModel& model,
                                          std::uint64_t shots, std::uint64_t seed) {
  model.validate();
  return execute(circuit, shots, seed, model);
}

/// Exact probability of reading `key` when only readout flips are present:
/// sum over ideal outcomes v of P(v) * prod_k P(clbit k of v reads as key_k).
/// Only clbits written by a measure can flip.
inline double exact_readout_probability(const Circuit& circuit, const std::string& key,
                                        const NoiseModel& model) {
  model.validate();
  if (static_cast<int>(key.size()) != circuit.num_clbits()) {
    throw DomainError("key length " + std::to_string(key.size()) + " does not match " +
                      std::to_string(circuit.num_clbits()) + " clbits");
  }
  const std::uint64_t target = parse_bitstring(key);
  const auto written = exec_detail::written_clbits(circuit);
  double total = 0.0;
  for (const auto& [v, p] : exact_distribution(circuit)) {
    double w = p;
    for (int k = 0; k < circuit.num_clbits(); ++k) {
      const int have = static_cast<int>((v >> k) & 1U);
      const int want = static_cast<int>((target >> k) & 1U);
      const bool can_flip = std::find(written.begin(), written.end(), k) != written.end();
      const double flip = can_flip ? (have ? model.readout_p10 : model.readout_p01) : 0.0;
      w *= have == want ? 1.0 - flip : flip;
    }
    total += w;
  }
  return total;
}

struct ReadoutFit {
  bool converged = false;
  double p = 0.0;          ///< fitted symmetric readout flip probability
  double achieved = 0.0;   ///< sampled P(key) at `p`
  int iterations = 0;      ///< bisection steps
  std::string message;     ///< failure reason when !converged
};

inline constexpr double kFitTolerance = 0.01;

/// Finds the symmetric readout error p in [0, 0.5] at which the sampled
/// P(key) matches `target_prob` within 0.01.
///
/// Every evaluation reuses `seed`, so the per-shot uniforms are common to all
/// candidate p and the sampled P(key) is monotone in p for a deterministic
/// outcome. The bracket is bisected down to 1e-4 rather than stopping at the
/// first p inside the tolerance band.
inline ReadoutFit fit_readout(const Circuit& circuit, const std::string& key, double target_prob,
                              std::uint64_t shots, std::uint64_t seed) {
  if (!(target_prob > 0.0 && target_prob <= 1.0)) {
    throw DomainError("target probability must lie in (0, 1]");
  }
  if (static_cast<int>(key.size()) != circuit.num_clbits()) {
    throw DomainError("key length " + std::to_string(key.size()) + " does not match " +
                      std::to_string(circuit.num_clbits()) + " clbits");
  }
  parse_bitstring(key);
  auto sampled = [&](double p) {
    return execute(circuit, shots, seed, NoiseModel::symmetric_readout(p)).frequency(key);
  };

  ReadoutFit fit;
  const double ideal = exact_readout_probability(circuit, key, NoiseModel{});
  if (ideal + 1e-12 < target_prob) {
    fit.message = "noiseless P(" + key + ") = " + format_real(ideal) + " is below target " +
                  format_real(target_prob);
    fit.achieved = ideal;
    return fit;
  }
  const double at_zero = sampled(0.0);
  if (std::abs(at_zero - target_prob) <= kFitTolerance) {
    fit.converged = true;
    fit.achieved = at_zero;
    return fit;
  }
  double lo = 0.0, hi = 0.5;
  const double at_hi = sampled(hi);
  if (at_zero < target_prob || at_hi > target_prob) {
    fit.message = "target " + format_real(target_prob) + " not bracketed: P(key) = " +
                  format_real(at_zero) + " at p=0, " + format_real(at_hi) + " at p=0.5";
    fit.achieved = at_zero;
    return fit;
  }
  while (hi - lo > 1e-4 && fit.iterations < 64) {
    const double mid = 0.5 * (lo + hi);
    (sampled(mid) > target_prob ? lo : hi) = mid;
    ++fit.iterations;
  }
  fit.p = 0.5 * (lo + hi);
  fit.achieved = sampled(fit.p);
  fit.converged = std::abs(fit.achieved - target_prob) <= kFitTolerance;
  if (!fit.converged) {
    fit.message = "bisection ended at p=" + format_real(fit.p) + " with P(key) = " +
                  format_real(fit.achieved);
  }
  return fit;
}

}  // namespace qsearch
