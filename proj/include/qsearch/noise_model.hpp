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

#include <cmath>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "qsearch/errors.hpp"
#include "qsearch/report.hpp"

namespace qsearch {

/// Stochastic noise: a uniformly random Pauli after each gate on each
/// involved qubit with probability `depolarizing_p`, and classical flips of
/// measurement records (p01: a true 0 reads 1, p10: a true 1 reads 0).
struct NoiseModel {
  double depolarizing_p = 0.0;
  double readout_p01 = 0.0;
  double readout_p10 = 0.0;

  static NoiseModel symmetric_readout(double p) { return {0.0, p, p}; }

  bool is_ideal() const noexcept {
    return depolarizing_p == 0.0 && readout_p01 == 0.0 && readout_p10 == 0.0;
  }

  void validate() const {
    auto check = [](double p, const char* name) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError(std::string(name) + " must lie in [0, 1], got " + format_real(p));
      }
    };
    check(depolarizing_p, "depolarizing_p");
    check(readout_p01, "readout_p01");
    check(readout_p10, "readout_p10");
  }

  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

inline std::string to_json(const NoiseModel& m) {
  return "{\"depolarizing_p\":" + format_real(m.depolarizing_p) +
         ",\"readout_p01\":" + format_real(m.readout_p01) +
         ",\"readout_p10\":" + format_real(m.readout_p10) + "}";
}

/// Parses the to_json() document. Missing keys default to 0; unknown keys
/// and out-of-range probabilities are rejected.
inline NoiseModel noise_model_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("noise model: ") + e.what());
  }
  if (!doc.is_object()) throw DomainError("noise model: expected a JSON object");
  NoiseModel m;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw DomainError("noise model: '" + key + "' must be a number");
    const double v = value.get<double>();
    if (key == "depolarizing_p") {
      m.depolarizing_p = v;
    } else if (key == "readout_p01") {
      m.readout_p01 = v;
    } else if (key == "readout_p10") {
      m.readout_p10 = v;
    } else {
      throw DomainError("noise model: unknown key '" + key + "'");
    }
  }
  m.validate();
  return m;
}

}  // namespace qsearch
