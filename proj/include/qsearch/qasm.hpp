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
 * @file qasm.hpp
 * @brief OpenQASM 2.0 subset: recursive-descent parser and canonical printer.
 *
 * Accepted subset:
 *
 *     OPENQASM 2.0;
 *     include "qelib1.inc";            (recognized; the gates are built in)
 *     qreg name[n];  creg name[n];     (any number, flattened in order)
 *     id|x|y|z|h|s|sdg|t|tdg a;  u1(angle) a;  cx a,b;
 *     measure a -> c;  barrier a,b,...;
 *     // line comments
 *
 * An argument is `reg[i]` or a bare `reg`, which broadcasts over the
 * register. Angles are a real literal, `pi`, `pi/m`, `k*pi` or `k*pi/m`,
 * optionally negated.
 *
 * print() emits: header, include line, one declaration per register, one
 * instruction per line with lowercase mnemonics, operands separated by a
 * bare comma and LF line endings. parse(print(c)) == c for every valid
 * circuit without injected dense operators.
 */
#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "qsearch/circuit.hpp"
#include "qsearch/errors.hpp"
#include "qsearch/gates.hpp"
#include "qsearch/report.hpp"

namespace qsearch {

struct SourcePosition {
  int line = 1;
  int column = 1;
  friend bool operator==(const SourcePosition&, const SourcePosition&) = default;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePosition pos, std::string expected, std::string found, std::string detail = {})
      : std::runtime_error(render(pos, expected, found, detail)),
        position_(pos),
        expected_(std::move(expected)),
        found_(std::move(found)) {}

  const SourcePosition& position() const noexcept { return position_; }
  const std::string& expected() const noexcept { return expected_; }
  const std::string& found() const noexcept { return found_; }

 private:
  static std::string render(SourcePosition pos, const std::string& expected,
                            const std::string& found, const std::string& detail) {
    std::string msg = "line " + std::to_string(pos.line) + ", column " +
                      std::to_string(pos.column) + ": ";
    if (!detail.empty()) return msg + detail;
    return msg + "expected " + expected + ", found " + (found.empty() ? "end of input" : "'" + found + "'");
  }

  SourcePosition position_;
  std::string expected_;
  std::string found_;
};

namespace qasm_detail {

enum class Tok { Ident, Int, Real, String, Symbol, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  SourcePosition pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_space_and_comments();
    Token t;
    t.pos = {line_, col_};
    if (i_ >= src_.size()) return t;
    const char c = src_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = i_;
      while (i_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_'))
        advance();
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, i_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i_ + 1 < src_.size() &&
                                                        std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
      return lex_number(t);
    }
    if (c == '"') {
      advance();
      const std::size_t start = i_;
      while (i_ < src_.size() && src_[i_] != '"' && src_[i_] != '\n') advance();
      if (i_ >= src_.size() || src_[i_] != '"') {
        throw ParseError(t.pos, "closing '\"'", "", "unterminated string literal");
      }
      t.kind = Tok::String;
      t.text = std::string(src_.substr(start, i_ - start));
      advance();
      return t;
    }
    if (c == '-' && i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
      advance();
      advance();
      t.kind = Tok::Symbol;
      t.text = "->";
      return t;
    }
    static constexpr std::string_view kSymbols = ";,[]()*/+-";
    if (kSymbols.find(c) != std::string_view::npos) {
      advance();
      t.kind = Tok::Symbol;
      t.text = std::string(1, c);
      return t;
    }
    throw ParseError(t.pos, "token", std::string(1, c), "unexpected character '" + std::string(1, c) + "'");
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space_and_comments() {
    while (i_ < src_.size()) {
      const char c = src_[i_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') {
        advance();
      } else if (c == '/' && i_ + 1 < src_.size() && src_[i_ + 1] == '/') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  Token lex_number(Token t) {
    const std::size_t start = i_;
    bool real = false;
    auto digits = [&] {
      while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
    };
    digits();
    if (i_ < src_.size() && src_[i_] == '.') {
      real = true;
      advance();
      digits();
    }
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t look = i_ + 1;
      if (look < src_.size() && (src_[look] == '+' || src_[look] == '-')) ++look;
      if (look < src_.size() && std::isdigit(static_cast<unsigned char>(src_[look]))) {
        real = true;
        while (i_ < look) advance();
        digits();
      }
    }
    t.kind = real ? Tok::Real : Tok::Int;
    t.text = std::string(src_.substr(start, i_ - start));
    return t;
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::string describe(const Token& t) { return t.kind == Tok::End ? "" : t.text; }

/// Angle k*pi/m evaluated exactly as the parser does, shared with the printer.
inline double pi_fraction(double k, double m) { return (k * std::numbers::pi) / m; }

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) { cur_ = lex_.next(); }

  Circuit run() {
    parse_header();
    while (cur_.kind != Tok::End) statement();
    Circuit c(qregs_, cregs_);
    for (auto& inst : body_) c.append(std::move(inst));
    return c;
  }

 private:
  struct RegInfo {
    int offset;
    int size;
  };

  // An argument before broadcast: register + optional index.
  struct Arg {
    RegInfo reg;
    std::optional<int> index;
    SourcePosition pos;
  };

  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(cur_.pos, expected, describe(cur_));
  }

  bool is_symbol(std::string_view s) const { return cur_.kind == Tok::Symbol && cur_.text == s; }

  void expect_symbol(std::string_view s) {
    if (!is_symbol(s)) fail("'" + std::string(s) + "'");
    bump();
  }

  Token expect(Tok kind, const std::string& what) {
    if (cur_.kind != kind) fail(what);
    Token t = cur_;
    bump();
    return t;
  }

  int expect_int(const std::string& what) {
    if (cur_.kind != Tok::Int) {
      throw ParseError(cur_.pos, what, describe(cur_),
                       "malformed index: expected " + what + ", found " +
                           (cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'"));
    }
    int v = 0;
    const auto* first = cur_.text.data();
    const auto* last = first + cur_.text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
      throw ParseError(cur_.pos, what, cur_.text, "malformed index '" + cur_.text + "'");
    }
    bump();
    return v;
  }

  void parse_header() {
    if (cur_.kind != Tok::Ident || cur_.text != "OPENQASM") fail("'OPENQASM'");
    bump();
    if (cur_.kind != Tok::Real || cur_.text != "2.0") {
      throw ParseError(cur_.pos, "version 2.0", describe(cur_),
                       "unsupported OpenQASM version '" + describe(cur_) + "'");
    }
    bump();
    expect_symbol(";");
  }

  void statement() {
    if (cur_.kind != Tok::Ident) fail("statement");
    const Token head = cur_;
    if (head.text == "include") return include_stmt();
    if (head.text == "qreg" || head.text == "creg") return declaration(head.text == "qreg");
    if (head.text == "measure") return measure_stmt();
    if (head.text == "barrier") return barrier_stmt();
    if (head.text == "gate" || head.text == "opaque" || head.text == "if" ||
        head.text == "reset" || head.text == "OPENQASM") {
      throw ParseError(head.pos, "statement", head.text,
                       "unsupported statement '" + head.text + "'");
    }
    gate_stmt();
  }

  void include_stmt() {
    bump();
    const Token file = cur_;
    expect(Tok::String, "file name string");
    if (file.text != "qelib1.inc") {
      throw ParseError(file.pos, "\"qelib1.inc\"", file.text,
                       "unsupported include \"" + file.text + "\"");
    }
    expect_symbol(";");
  }

  void declaration(bool quantum) {
    bump();
    const Token name = expect(Tok::Ident, "register name");
    if (qreg_index_.count(name.text) || creg_index_.count(name.text)) {
      throw ParseError(name.pos, "new register name", name.text,
                       "register '" + name.text + "' already declared");
    }
    expect_symbol("[");
    const SourcePosition size_pos = cur_.pos;
    const int size = expect_int("register size");
    if (size < 1) {
      throw ParseError(size_pos, "positive size", std::to_string(size),
                       "register size must be positive");
    }
    expect_symbol("]");
    expect_symbol(";");
    auto& regs = quantum ? qregs_ : cregs_;
    auto& index = quantum ? qreg_index_ : creg_index_;
    int offset = 0;
    for (const auto& r : regs) offset += r.size;
    index[name.text] = RegInfo{offset, size};
    regs.push_back({name.text, size});
  }

  Arg argument(bool quantum) {
    const Token name = cur_;
    if (name.kind != Tok::Ident) fail(quantum ? "qubit argument" : "clbit argument");
    const auto& index = quantum ? qreg_index_ : creg_index_;
    const auto it = index.find(name.text);
    if (it == index.end()) {
      const auto& other = quantum ? creg_index_ : qreg_index_;
      const std::string kind = quantum ? "quantum" : "classical";
      throw ParseError(name.pos, kind + " register", name.text,
                       other.count(name.text)
                           ? "'" + name.text + "' is not a " + kind + " register"
                           : "undeclared register '" + name.text + "'");
    }
    bump();
    Arg arg{it->second, std::nullopt, name.pos};
    if (is_symbol("[")) {
      bump();
      const SourcePosition idx_pos = cur_.pos;
      const int i = expect_int("integer index");
      if (i < 0 || i >= arg.reg.size) {
        throw ParseError(idx_pos, "index below " + std::to_string(arg.reg.size), std::to_string(i),
                         "index " + std::to_string(i) + " out of range for register '" +
                             name.text + "' of size " + std::to_string(arg.reg.size));
      }
      arg.index = i;
      expect_symbol("]");
    }
    return arg;
  }

  std::vector<Arg> argument_list() {
    std::vector<Arg> args{argument(true)};
    while (is_symbol(",")) {
      bump();
      args.push_back(argument(true));
    }
    return args;
  }

  // Expands register arguments; all bare registers must share one size.
  static std::vector<std::vector<int>> broadcast(const std::vector<Arg>& args) {
    std::optional<int> width;
    for (const auto& a : args) {
      if (a.index) continue;
      if (width && *width != a.reg.size) {
        throw ParseError(a.pos, "registers of equal size", "", "register size mismatch in broadcast");
      }
      width = a.reg.size;
    }
    const int rows = width.value_or(1);
    std::vector<std::vector<int>> out(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r)
      for (const auto& a : args) out[static_cast<std::size_t>(r)].push_back(a.reg.offset + (a.index ? *a.index : r));
    return out;
  }

  void measure_stmt() {
    bump();
    const Arg q = argument(true);
    expect_symbol("->");
    const Arg c = argument(false);
    expect_symbol(";");
    if (q.index.has_value() != c.index.has_value() || (!q.index && q.reg.size != c.reg.size)) {
      throw ParseError(q.pos, "matching measure operands", "",
                       "measure operands must both be indexed or be registers of equal size");
    }
    if (q.index) {
      body_.push_back(MeasureOp{q.reg.offset + *q.index, c.reg.offset + *c.index});
    } else {
      for (int i = 0; i < q.reg.size; ++i) body_.push_back(MeasureOp{q.reg.offset + i, c.reg.offset + i});
    }
  }

  void barrier_stmt() {
    bump();
    std::vector<int> qubits;
    for (const auto& a : argument_list()) {
      if (a.index) {
        qubits.push_back(a.reg.offset + *a.index);
      } else {
        for (int i = 0; i < a.reg.size; ++i) qubits.push_back(a.reg.offset + i);
      }
    }
    expect_symbol(";");
    body_.push_back(BarrierOp{std::move(qubits)});
  }

  double number_token() {
    if (cur_.kind != Tok::Int && cur_.kind != Tok::Real) fail("number");
    const double v = std::strtod(cur_.text.c_str(), nullptr);
    bump();
    return v;
  }

  // angle := ['-'] ( 'pi' ['/' num] | num ['*' 'pi' ['/' num]] )
  double angle() {
    bool negative = false;
    if (is_symbol("-")) {
      negative = true;
      bump();
    }
    double value = 0.0;
    if (cur_.kind == Tok::Ident && cur_.text == "pi") {
      bump();
      double m = 1.0;
      if (is_symbol("/")) {
        bump();
        m = number_token();
      }
      value = pi_fraction(1.0, m);
    } else if (cur_.kind == Tok::Int || cur_.kind == Tok::Real) {
      const double k = number_token();
      if (is_symbol("*")) {
        bump();
        if (cur_.kind != Tok::Ident || cur_.text != "pi") fail("'pi'");
        bump();
        double m = 1.0;
        if (is_symbol("/")) {
          bump();
          m = number_token();
        }
        value = pi_fraction(k, m);
      } else {
        value = k;
      }
    } else {
      fail("angle");
    }
    if (!std::isfinite(value)) {
      throw ParseError(cur_.pos, "finite angle", "", "angle is not finite");
    }
    return negative ? -value : value;
  }

  void gate_stmt() {
    const Token name = cur_;
    const auto kind = gate_kind_from_name(name.text);
    // Only lowercase qelib1 mnemonics are accepted in source.
    if (!kind || qasm_mnemonic(*kind) != name.text) {
      throw ParseError(name.pos, "gate name", name.text, "unknown gate '" + name.text + "'");
    }
    bump();
    std::optional<double> theta;
    if (*kind == GateKind::P) {
      expect_symbol("(");
      theta = angle();
      expect_symbol(")");
    } else if (is_symbol("(")) {
      throw ParseError(cur_.pos, "qubit argument", "(",
                       "gate '" + name.text + "' takes no parameters");
    }
    const auto args = argument_list();
    if (static_cast<int>(args.size()) != gate_arity(*kind)) {
      throw ParseError(name.pos, std::to_string(gate_arity(*kind)) + " argument(s)",
                       std::to_string(args.size()),
                       "gate '" + name.text + "' expects " + std::to_string(gate_arity(*kind)) +
                           " argument(s), got " + std::to_string(args.size()));
    }
    expect_symbol(";");
    const GateDef gate(*kind, theta);
    for (auto& qubits : broadcast(args)) body_.push_back(GateOp{gate, std::move(qubits)});
  }

  Lexer lex_;
  Token cur_;
  std::vector<Register> qregs_, cregs_;
  std::map<std::string, RegInfo> qreg_index_, creg_index_;
  std::vector<Instruction> body_;
};

inline std::string format_angle(double theta) {
  if (theta == 0.0) return "0";
  if (theta < 0.0) return "-" + format_angle(-theta);
  for (int m = 1; m <= 64; ++m) {
    const double k = std::round(theta / std::numbers::pi * m);
    if (k < 1 || k > 4096 || std::gcd(static_cast<long long>(k), m) != 1) continue;
    if (pi_fraction(k, m) != theta) continue;
    std::string out = k == 1 ? "pi" : std::to_string(static_cast<long long>(k)) + "*pi";
    if (m != 1) out += "/" + std::to_string(m);
    return out;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", theta);
  return buf;
}

// Maps flat indices back to `name[i]`.
class RegisterNames {
 public:
  explicit RegisterNames(const std::vector<Register>& regs) {
    for (const auto& r : regs)
      for (int i = 0; i < r.size; ++i) names_.push_back(r.name + "[" + std::to_string(i) + "]");
  }
  const std::string& operator()(int flat) const {
    if (flat < 0 || static_cast<std::size_t>(flat) >= names_.size()) {
      throw DomainError("index " + std::to_string(flat) + " outside declared registers");
    }
    return names_[static_cast<std::size_t>(flat)];
  }

 private:
  std::vector<std::string> names_;
};

inline std::string join(const std::vector<int>& qs, const RegisterNames& names) {
  std::string out;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    if (i) out += ',';
    out += names(qs[i]);
  }
  return out;
}

// Shared by print() (strict) and canonical_text() (dense operators rendered
// as comments so they still contribute to the digest).
inline std::string emit(const Circuit& c, bool allow_dense) {
  const RegisterNames qn(c.qregs()), cn(c.cregs());
  std::ostringstream os;
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  for (const auto& r : c.qregs()) os << "qreg " << r.name << '[' << r.size << "];\n";
  for (const auto& r : c.cregs()) os << "creg " << r.name << '[' << r.size << "];\n";
  for (const auto& inst : c.instructions()) {
    std::visit(
        [&](const auto& op) {
          using T = std::decay_t<decltype(op)>;
          if constexpr (std::is_same_v<T, GateOp>) {
            os << qasm_mnemonic(op.gate.kind());
            if (op.gate.theta()) os << '(' << format_angle(*op.gate.theta()) << ')';
            os << ' ' << join(op.qubits, qn) << ";\n";
          } else if constexpr (std::is_same_v<T, MeasureOp>) {
            os << "measure " << qn(op.qubit) << " -> " << cn(op.clbit) << ";\n";
          } else if constexpr (std::is_same_v<T, BarrierOp>) {
            os << "barrier " << join(op.qubits, qn) << ";\n";
          } else {
            if (!allow_dense) {
              throw UnsupportedError("dense operator '" + op.label +
                                     "' cannot be exported as OpenQASM");
            }
            std::string entries;
            for (const auto& v : op.matrix.data()) {
              char buf[64];
              std::snprintf(buf, sizeof buf, "%.17g,%.17g;", v.real(), v.imag());
              entries += buf;
            }
            os << "// unitary " << op.label << ' ' << join(op.qubits, qn) << " matrix "
               << hex64(fnv1a64(entries)) << '\n';
          }
        },
        inst);
  }
  return os.str();
}

}  // namespace qasm_detail

/// Parses the supported OpenQASM 2.0 subset. Throws ParseError.
inline Circuit parse_qasm(std::string_view source) {
  return qasm_detail::Parser(source).run();
}

/// Canonical OpenQASM text. Throws UnsupportedError for injected dense
/// operators and DomainError for indices outside the registers.
inline std::string print_qasm(const Circuit& c) { return qasm_detail::emit(c, false); }

/// print_qasm, except dense operators appear as comment lines carrying a
/// hash of their matrix. Used for report digests.
inline std::string canonical_text(const Circuit& c) { return qasm_detail::emit(c, true); }

/// 16 hex digits identifying the circuit.
inline std::string circuit_digest(const Circuit& c) { return hex64(fnv1a64(canonical_text(c))); }

}  // namespace qsearch
