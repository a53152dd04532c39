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

// Random circuit generator for property checks.
#pragma once

#include <algorithm>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/gates.hpp"

namespace qsearch {

struct RandomCircuitOptions {
  int num_qubits = 3;
  int depth = 10;
  /// Append measures of a random subset of qubits into distinct clbits.
  bool measure = false;
  bool barriers = false;
  /// Split qubits/clbits over two registers (exercises flattening).
  bool split_registers = false;
};

template <class Engine>
GateDef random_gate(Engine& rng, int num_qubits) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(kAllGateKinds.size()) - 1);
  GateKind kind;
  do {
    kind = kAllGateKinds[static_cast<std::size_t>(pick(rng))];
  } while (kind == GateKind::CX && num_qubits < 2);
  if (kind != GateKind::P) return GateDef(kind);
  // Half pi-fractions (printed symbolically), half arbitrary reals.
  if (std::uniform_int_distribution<int>(0, 1)(rng) == 0) {
    const double k = std::uniform_int_distribution<int>(-7, 7)(rng);
    const double m = std::uniform_int_distribution<int>(1, 8)(rng);
    return GateDef(GateKind::P, (k * std::numbers::pi) / m);
  }
  return GateDef(GateKind::P, std::uniform_real_distribution<double>(-6.3, 6.3)(rng));
}

template <class Engine>
Circuit random_circuit(Engine& rng, const RandomCircuitOptions& opt) {
  const int n = opt.num_qubits;
  Circuit c;
  if (opt.split_registers && n >= 2) {
    const int a = std::uniform_int_distribution<int>(1, n - 1)(rng);
    std::vector<Register> cregs;
    if (opt.measure) cregs = {{"m", a}, {"r", n - a}};
    c = Circuit({{"a", a}, {"b", n - a}}, cregs);
  } else {
    c = Circuit(n, opt.measure ? n : 0);
  }
  std::uniform_int_distribution<int> qubit(0, n - 1);
  for (int layer = 0; layer < opt.depth; ++layer) {
    if (opt.barriers && std::uniform_int_distribution<int>(0, 9)(rng) == 0) {
      c.barrier({qubit(rng)});
      continue;
    }
    const GateDef g = random_gate(rng, n);
    std::vector<int> qs{qubit(rng)};
    if (g.arity() == 2) {
      int t;
      do {
        t = qubit(rng);
      } while (t == qs[0]);
      qs.push_back(t);
    }
    c.gate(g, qs);
  }
  if (opt.measure) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    const int count = std::uniform_int_distribution<int>(1, n)(rng);
    for (int i = 0; i < count; ++i) c.measure(i, perm[static_cast<std::size_t>(i)]);
  }
  return c;
}

}  // namespace qsearch
