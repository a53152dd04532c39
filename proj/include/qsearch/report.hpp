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
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "qsearch/errors.hpp"

namespace qsearch {

/// Classical register value rendered MSB first: clbit k is position k from
/// the right, so value 1 over two clbits prints "01".
inline std::string format_bitstring(std::uint64_t value, int width) {
  std::string out(static_cast<std::size_t>(width), '0');
  for (int k = 0; k < width; ++k)
    if ((value >> k) & 1U) out[static_cast<std::size_t>(width - 1 - k)] = '1';
  return out;
}

/// Inverse of format_bitstring. Rejects anything but '0'/'1'.
inline std::uint64_t parse_bitstring(std::string_view bits) {
  if (bits.empty() || bits.size() > 63) throw DomainError("bitstring length must be 1..63");
  std::uint64_t value = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') {
      throw DomainError("bitstring '" + std::string(bits) + "' contains non-binary digit");
    }
    value = (value << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return value;
}

/// FNV-1a, 64 bit.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Real printed with 12 significant digits.
inline std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

/// Shot histogram plus exact outcome probabilities (noiseless runs only).
struct CountsReport {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  int num_clbits = 0;
  std::map<std::string, std::uint64_t> counts;
  std::optional<std::map<std::string, double>> exact_probabilities;
  std::string circuit_digest;

  double frequency(const std::string& bits) const {
    const auto it = counts.find(bits);
    return it == counts.end() || shots == 0
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(shots);
  }

  /// Exact probability of `bits`, or nullopt when the run was noisy.
  std::optional<double> exact(const std::string& bits) const {
    if (!exact_probabilities) return std::nullopt;
    const auto it = exact_probabilities->find(bits);
    return it == exact_probabilities->end() ? 0.0 : it->second;
  }

  friend bool operator==(const CountsReport&, const CountsReport&) = default;
};

namespace detail {

inline void write_json_string(std::ostringstream& os, std::string_view s) {
  os << '"';
  for (char c : s) {
    if (c == '"' || c == '\\') os << '\\';
    os << c;
  }
  os << '"';
}

}  // namespace detail

/// {"circuit_digest":hex,"counts":{..},"exact_probabilities":{..}|null,"seed":int,"shots":int}
/// Keys sorted lexicographically at every level.
inline std::string to_json(const CountsReport& r) {
  std::ostringstream os;
  os << "{\"circuit_digest\":";
  detail::write_json_string(os, r.circuit_digest);
  os << ",\"counts\":{";
  bool first = true;
  for (const auto& [bits, n] : r.counts) {
    if (!first) os << ',';
    first = false;
    detail::write_json_string(os, bits);
    os << ':' << n;
  }
  os << "},\"exact_probabilities\":";
  if (r.exact_probabilities) {
    os << '{';
    first = true;
    for (const auto& [bits, p] : *r.exact_probabilities) {
      if (!first) os << ',';
      first = false;
      detail::write_json_string(os, bits);
      os << ':' << format_real(p);
    }
    os << '}';
  } else {
    os << "null";
  }
  os << ",\"seed\":" << r.seed << ",\"shots\":" << r.shots << "}";
  return os.str();
}

/// One "bitstring,count,probability" row per observed outcome; probability
/// is the observed frequency.
inline std::string to_csv(const CountsReport& r) {
  std::ostringstream os;
  os << "bitstring,count,probability\n";
  for (const auto& [bits, n] : r.counts) os << bits << ',' << n << ',' << format_real(r.frequency(bits)) << '\n';
  return os.str();
}

/// Terminal histogram; bars are scaled so the largest count spans 40 columns.
inline std::string to_text(const CountsReport& r) {
  constexpr int kBarWidth = 40;
  std::uint64_t max_count = 0;
  for (const auto& [bits, n] : r.counts) max_count = std::max(max_count, n);
  std::ostringstream os;
  os << "shots: " << r.shots << "  seed: " << r.seed << "  digest: " << r.circuit_digest << '\n';
  for (const auto& [bits, n] : r.counts) {
    const int bar = max_count == 0 ? 0
                                   : static_cast<int>((n * kBarWidth + max_count / 2) / max_count);
    char prob[32];
    std::snprintf(prob, sizeof prob, "%.4f", r.frequency(bits));
    os << bits << "  " << n << "  " << prob << "  " << std::string(static_cast<std::size_t>(bar), '#');
    if (const auto p = r.exact(bits)) os << "  (exact " << format_real(*p) << ')';
    os << '\n';
  }
  return os.str();
}

}  // namespace qsearch
