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
 * @file gates.hpp
 * @brief The built-in gate library: names, arities and exact matrices.
 *
 * Gate set: I, X, Y, Z, H, S, S†, T, T†, P(θ) and CNOT. Matrices are given
 * in the gate-local basis where the FIRST operand is the most significant
 * bit, so CNOT reads as the textbook permutation
 *
 *     |00> -> |00>, |01> -> |01>, |10> -> |11>, |11> -> |10>
 *
 * with the control written first. The register itself is little-endian;
 * the engine and the reference oracle translate between the two.
 *
 * P(θ) = diag(1, e^{iθ}); P(π) = Z, P(π/2) = S and P(π/4) = T.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "qsearch/dense_matrix.hpp"
#include "qsearch/errors.hpp"

namespace qsearch {

enum class GateKind { I, X, Y, Z, H, S, Sdg, T, Tdg, P, CX };

inline constexpr std::array<GateKind, 11> kAllGateKinds = {
    GateKind::I, GateKind::X,   GateKind::Y, GateKind::Z,   GateKind::H, GateKind::S,
    GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::P, GateKind::CX};

/// Canonical symbol (upper case, as used in reports).
constexpr std::string_view gate_symbol(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "I";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "TDG";
    case GateKind::P: return "P";
    case GateKind::CX: return "CNOT";
  }
  return "?";
}

/// OpenQASM 2.0 mnemonic (qelib1.inc spelling).
constexpr std::string_view qasm_mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::I: return "id";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::H: return "h";
    case GateKind::S: return "s";
    case GateKind::Sdg: return "sdg";
    case GateKind::T: return "t";
    case GateKind::Tdg: return "tdg";
    case GateKind::P: return "u1";
    case GateKind::CX: return "cx";
  }
  return "?";
}

constexpr int gate_arity(GateKind kind) { return kind == GateKind::CX ? 2 : 1; }

/// Looks up a gate by symbol or QASM mnemonic, case-insensitively.
/// Accepts "cnot"/"cx", "p"/"u1", "i"/"id", "sdg", "tdg".
inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (GateKind k : kAllGateKinds) {
    std::string sym(gate_symbol(k));
    std::transform(sym.begin(), sym.end(), sym.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == sym || lower == qasm_mnemonic(k)) return k;
  }
  if (lower == "cx") return GateKind::CX;
  return std::nullopt;
}

/// A named gate with its (optional) phase angle. Only P carries an angle.
class GateDef {
 public:
  GateDef(GateKind kind, std::optional<double> theta = std::nullopt)
      : kind_(kind), theta_(theta) {
    if (kind == GateKind::P && !theta) {
      throw DomainError("gate P requires an angle");
    }
    if (kind != GateKind::P && theta) {
      throw DomainError("gate " + std::string(gate_symbol(kind)) + " takes no angle");
    }
    if (theta && !std::isfinite(*theta)) throw DomainError("gate angle must be finite");
  }

  GateKind kind() const noexcept { return kind_; }
  std::optional<double> theta() const noexcept { return theta_; }
  int arity() const noexcept { return gate_arity(kind_); }
  std::string_view symbol() const noexcept { return gate_symbol(kind_); }

  DenseMatrix matrix() const;

  friend bool operator==(const GateDef&, const GateDef&) = default;

 private:
  GateKind kind_;
  std::optional<double> theta_;
};

inline DenseMatrix GateDef::matrix() const {
  using std::numbers::sqrt2;
  const Complex i{0.0, 1.0};
  const double r = 1.0 / sqrt2;
  switch (kind_) {
    case GateKind::I: return DenseMatrix::identity(2);
    case GateKind::X: return DenseMatrix(2, {0.0, 1.0, 1.0, 0.0});
    case GateKind::Y: return DenseMatrix(2, {0.0, -i, i, 0.0});
    case GateKind::Z: return DenseMatrix(2, {1.0, 0.0, 0.0, -1.0});
    case GateKind::H: return DenseMatrix(2, {r, r, r, -r});
    case GateKind::S: return DenseMatrix(2, {1.0, 0.0, 0.0, i});
    case GateKind::Sdg: return DenseMatrix(2, {1.0, 0.0, 0.0, -i});
    case GateKind::T: return DenseMatrix(2, {1.0, 0.0, 0.0, Complex{r, r}});
    case GateKind::Tdg: return DenseMatrix(2, {1.0, 0.0, 0.0, Complex{r, -r}});
    case GateKind::P: return DenseMatrix(2, {1.0, 0.0, 0.0, std::polar(1.0, *theta_)});
    case GateKind::CX:
      return DenseMatrix(4, {1.0, 0.0, 0.0, 0.0,  //
                             0.0, 1.0, 0.0, 0.0,  //
                             0.0, 0.0, 0.0, 1.0,  //
                             0.0, 0.0, 1.0, 0.0});
  }
  throw DomainError("unknown gate kind");
}

/// Matrix of a gate given by name. `theta` must be present exactly when the
/// gate is the phase gate P (alias u1).
inline DenseMatrix matrix_of(std::string_view name, std::optional<double> theta = std::nullopt) {
  const auto kind = gate_kind_from_name(name);
  if (!kind) throw DomainError("unknown gate '" + std::string(name) + "'");
  return GateDef(*kind, theta).matrix();
}

/// Product of a gate sequence applied left to right (first gate acts first).
inline DenseMatrix sequence_product(std::span<const GateDef> gates) {
  if (gates.empty()) throw DomainError("empty gate sequence");
  const int arity = gates.front().arity();
  DenseMatrix acc = DenseMatrix::identity(std::size_t{1} << arity);
  for (const auto& g : gates) {
    if (g.arity() != arity) throw DomainError("gate sequence mixes arities");
    acc = g.matrix() * acc;
  }
  return acc;
}

/// True iff both sequences compose to the same operator up to a global phase.
inline bool decompose_identity_check(std::span<const GateDef> lhs, std::span<const GateDef> rhs,
                                     double tol = 1e-10) {
  if (lhs.empty() || rhs.empty()) throw DomainError("empty gate sequence");
  if (lhs.front().arity() != rhs.front().arity()) {
    throw DomainError("gate sequences act on different arities");
  }
  return equal_up_to_global_phase(sequence_product(lhs), sequence_product(rhs), tol);
}

inline bool decompose_identity_check(std::initializer_list<GateDef> lhs,
                                     std::initializer_list<GateDef> rhs, double tol = 1e-10) {
  return decompose_identity_check(std::span<const GateDef>(lhs.begin(), lhs.size()),
                                  std::span<const GateDef>(rhs.begin(), rhs.size()), tol);
}

}  // namespace qsearch
