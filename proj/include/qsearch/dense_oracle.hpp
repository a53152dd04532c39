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

// Brute-force reference: the full 2^n x 2^n unitary of a circuit, built from
// explicit Kronecker products of the gate matrices. Shares no code with the
// bit-mask kernels in statevec.hpp and exists to cross-check them.
#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/dense_matrix.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/gates.hpp"

namespace qsearch {

inline constexpr int kDenseOracleMaxQubits = 10;

namespace oracle_detail {

// |r><c| on one qubit.
inline DenseMatrix matrix_unit(int r, int c) {
  DenseMatrix m(2);
  m(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) = 1.0;
  return m;
}

// Embeds a k-qubit matrix whose local index has operand 0 as its MOST
// significant bit into an n-qubit little-endian register, as
//   sum_{r,c} m(r,c) * (F_{n-1} ⊗ ... ⊗ F_0),  F_q = |r_j><c_j| or I.
inline DenseMatrix embed_msb_first(const DenseMatrix& m, const std::vector<int>& operands, int n) {
  const std::size_t k = operands.size();
  const std::size_t local = std::size_t{1} << k;
  DenseMatrix total(std::size_t{1} << n);
  const DenseMatrix id2 = DenseMatrix::identity(2);
  for (std::size_t r = 0; r < local; ++r) {
    for (std::size_t c = 0; c < local; ++c) {
      const Complex coeff = m(r, c);
      if (coeff == Complex{}) continue;
      DenseMatrix term = DenseMatrix::identity(1);
      for (int q = n - 1; q >= 0; --q) {
        DenseMatrix factor = id2;
        for (std::size_t j = 0; j < k; ++j) {
          if (operands[j] != q) continue;
          const std::size_t shift = k - 1 - j;
          factor = matrix_unit(static_cast<int>((r >> shift) & 1U), static_cast<int>((c >> shift) & 1U));
        }
        term = kron(term, factor);
      }
      total += coeff * std::move(term);
    }
  }
  return total;
}

// Element formula for wide operators: U[R,C] = m(loc(R), loc(C)) when R and C
// agree off the operand bits, else 0. Local bit j addresses qubits[j].
inline DenseMatrix embed_wide(const DenseMatrix& m, const std::vector<int>& qubits, int n) {
  const std::size_t dim = std::size_t{1} << n;
  std::uint64_t mask = 0;
  for (int q : qubits) mask |= std::uint64_t{1} << q;
  auto local = [&](std::uint64_t full) {
    std::size_t l = 0;
    for (std::size_t j = 0; j < qubits.size(); ++j) l |= ((full >> qubits[j]) & 1U) << j;
    return l;
  };
  DenseMatrix out(dim);
  for (std::uint64_t r = 0; r < dim; ++r)
    for (std::uint64_t c = 0; c < dim; ++c)
      if ((r & ~mask) == (c & ~mask)) out(r, c) = m(local(r), local(c));
  return out;
}

}  // namespace oracle_detail

/// Full-register matrix of one gate. `qubits` are the gate's operands in
/// gate order (for CNOT: control, target).
inline DenseMatrix expand_gate(const GateDef& gate, const std::vector<int>& qubits, int n) {
  if (static_cast<int>(qubits.size()) != gate.arity()) throw DomainError("gate arity mismatch");
  return oracle_detail::embed_msb_first(gate.matrix(), qubits, n);
}

/// Product of the per-instruction full-register unitaries, in order.
inline DenseUnitary dense_unitary_of(const Circuit& circuit) {
  const int n = circuit.num_qubits();
  if (n > kDenseOracleMaxQubits) {
    throw CapacityError("dense oracle limited to " + std::to_string(kDenseOracleMaxQubits) +
                        " qubits, circuit has " + std::to_string(n));
  }
  require_valid(circuit);
  DenseUnitary u = DenseUnitary::identity(std::size_t{1} << n);
  for (const auto& inst : circuit.instructions()) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, GateOp>) {
            u = expand_gate(op.gate, op.qubits, n) * u;
          } else if constexpr (std::is_same_v<T, MeasureOp>) {
            throw UnsupportedError("dense_unitary_of: circuit contains a measurement");
          } else if constexpr (std::is_same_v<T, BarrierOp>) {
            // identity
          } else {
            u = oracle_detail::embed_wide(op.matrix, op.qubits, n) * u;
          }
        },
        inst);
  }
  return u;
}

}  // namespace qsearch
