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
 * @file circuit.hpp
 * @brief Circuit intermediate representation shared by the QASM front end,
 *        the circuit builders and the executor.
 *
 * Registers are flattened: declared quantum (classical) registers occupy
 * consecutive index ranges in declaration order. Register names are kept
 * only so that printing reproduces the source program.
 */
#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "qsearch/dense_matrix.hpp"
#include "qsearch/gates.hpp"

namespace qsearch {

struct GateOp {
  GateDef gate;
  std::vector<int> qubits;
  friend bool operator==(const GateOp&, const GateOp&) = default;
};

struct MeasureOp {
  int qubit = 0;
  int clbit = 0;
  friend bool operator==(const MeasureOp&, const MeasureOp&) = default;
};

struct BarrierOp {
  std::vector<int> qubits;
  friend bool operator==(const BarrierOp&, const BarrierOp&) = default;
};

/// Black-box operator injected as a dense matrix (e.g. a Grover oracle).
/// Local index bit j addresses qubits[j]. Not expressible in QASM.
struct UnitaryOp {
  std::string label;
  DenseMatrix matrix;
  std::vector<int> qubits;
  friend bool operator==(const UnitaryOp&, const UnitaryOp&) = default;
};

using Instruction = std::variant<GateOp, MeasureOp, BarrierOp, UnitaryOp>;

struct Register {
  std::string name;
  int size = 0;
  friend bool operator==(const Register&, const Register&) = default;
};

/// One problem found by validate(); `position` is the instruction index.
struct Violation {
  std::size_t position = 0;
  std::string message;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(render(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string render(const std::vector<Violation>& vs) {
    std::ostringstream os;
    os << "invalid circuit:";
    for (const auto& v : vs) os << " [instruction " << v.position << "] " << v.message << ';';
    return os.str();
  }
  std::vector<Violation> violations_;
};

class Circuit {
 public:
  Circuit() = default;

  /// Single register pair named `q` / `c` (a zero-size register is omitted).
  Circuit(int num_qubits, int num_clbits, std::string name = {})
      : name_(std::move(name)) {
    if (num_qubits > 0) qregs_.push_back({"q", num_qubits});
    if (num_clbits > 0) cregs_.push_back({"c", num_clbits});
  }

  Circuit(std::vector<Register> qregs, std::vector<Register> cregs, std::string name = {})
      : qregs_(std::move(qregs)), cregs_(std::move(cregs)), name_(std::move(name)) {}

  int num_qubits() const noexcept { return total(qregs_); }
  int num_clbits() const noexcept { return total(cregs_); }
  const std::vector<Register>& qregs() const noexcept { return qregs_; }
  const std::vector<Register>& cregs() const noexcept { return cregs_; }
  const std::vector<Instruction>& instructions() const noexcept { return instructions_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

  Circuit& append(Instruction inst) {
    instructions_.push_back(std::move(inst));
    return *this;
  }

  Circuit& gate(GateDef g, std::vector<int> qubits) {
    return append(GateOp{g, std::move(qubits)});
  }
  Circuit& i(int q) { return gate(GateKind::I, {q}); }
  Circuit& x(int q) { return gate(GateKind::X, {q}); }
  Circuit& y(int q) { return gate(GateKind::Y, {q}); }
  Circuit& z(int q) { return gate(GateKind::Z, {q}); }
  Circuit& h(int q) { return gate(GateKind::H, {q}); }
  Circuit& s(int q) { return gate(GateKind::S, {q}); }
  Circuit& t(int q) { return gate(GateKind::T, {q}); }
  Circuit& p(double theta, int q) { return gate(GateDef(GateKind::P, theta), {q}); }
  Circuit& cx(int control, int target) { return gate(GateKind::CX, {control, target}); }
  Circuit& measure(int qubit, int clbit) { return append(MeasureOp{qubit, clbit}); }
  Circuit& barrier(std::vector<int> qubits) { return append(BarrierOp{std::move(qubits)}); }
  Circuit& unitary(std::string label, DenseMatrix m, std::vector<int> qubits) {
    return append(UnitaryOp{std::move(label), std::move(m), std::move(qubits)});
  }

  /// IR equality: registers and instruction sequence. The name is metadata.
  friend bool operator==(const Circuit& a, const Circuit& b) {
    return a.qregs_ == b.qregs_ && a.cregs_ == b.cregs_ && a.instructions_ == b.instructions_;
  }

 private:
  static int total(const std::vector<Register>& regs) {
    return std::accumulate(regs.begin(), regs.end(), 0,
                           [](int acc, const Register& r) { return acc + r.size; });
  }

  std::vector<Register> qregs_;
  std::vector<Register> cregs_;
  std::vector<Instruction> instructions_;
  std::string name_;
};

/// Qubits an instruction touches (measure: the measured qubit).
inline std::vector<int> touched_qubits(const Instruction& inst) {
  return std::visit(
      [](const auto& op) -> std::vector<int> {
        using T = std::decay_t<decltype(op)>;
        if constexpr (std::is_same_v<T, MeasureOp>) {
          return {op.qubit};
        } else {
          return op.qubits;
        }
      },
      inst);
}

/// All bound and duplication problems, in instruction order. Empty = valid.
inline std::vector<Violation> validate(const Circuit& c) {
  std::vector<Violation> out;
  const int nq = c.num_qubits();
  const int nc = c.num_clbits();
  for (const auto& r : c.qregs())
    if (r.size < 1) out.push_back({0, "register '" + r.name + "' has non-positive size"});
  for (const auto& r : c.cregs())
    if (r.size < 1) out.push_back({0, "register '" + r.name + "' has non-positive size"});
  if (nq < 1) out.push_back({0, "circuit has no qubits"});

  auto check_list = [&](std::size_t pos, const std::vector<int>& qs) {
    for (std::size_t a = 0; a < qs.size(); ++a) {
      if (qs[a] < 0 || qs[a] >= nq) {
        out.push_back({pos, "index out of bounds (qubit " + std::to_string(qs[a]) + ")"});
      }
      for (std::size_t b = 0; b < a; ++b)
        if (qs[a] == qs[b]) out.push_back({pos, "duplicate qubit " + std::to_string(qs[a])});
    }
  };

  std::set<int> written;
  const auto& insts = c.instructions();
  for (std::size_t pos = 0; pos < insts.size(); ++pos) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, GateOp>) {
            if (static_cast<int>(op.qubits.size()) != op.gate.arity()) {
              out.push_back({pos, "gate arity mismatch: " + std::string(op.gate.symbol()) +
                                      " expects " + std::to_string(op.gate.arity()) +
                                      " qubit(s)"});
            }
            check_list(pos, op.qubits);
          } else if constexpr (std::is_same_v<T, MeasureOp>) {
            if (op.qubit < 0 || op.qubit >= nq) {
              out.push_back({pos, "index out of bounds (qubit " + std::to_string(op.qubit) + ")"});
            }
            if (op.clbit < 0 || op.clbit >= nc) {
              out.push_back({pos, "index out of bounds (clbit " + std::to_string(op.clbit) + ")"});
            } else if (!written.insert(op.clbit).second) {
              out.push_back({pos, "clbit " + std::to_string(op.clbit) + " written more than once"});
            }
          } else if constexpr (std::is_same_v<T, BarrierOp>) {
            check_list(pos, op.qubits);
          } else {
            if (op.qubits.empty() || op.matrix.dim() != (std::size_t{1} << op.qubits.size())) {
              out.push_back({pos, "unitary '" + op.label + "' dimension does not match its qubits"});
            }
            check_list(pos, op.qubits);
          }
        },
        insts[pos]);
  }
  return out;
}

inline void require_valid(const Circuit& c) {
  auto violations = validate(c);
  if (!violations.empty()) throw ValidationError(std::move(violations));
}

}  // namespace qsearch
