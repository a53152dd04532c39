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

// qsearch command-line front end.
//
//   qsearch run FILE.qasm        execute an OpenQASM 2.0 program
//   qsearch search --n --key     constant-depth register-comparison search
//   qsearch grover --n --key     Grover baseline
//   qsearch verify               self-check suites
//   qsearch fit-noise --target   fit a symmetric readout error to a P(key)
//
// Exit codes: 0 ok, 1 I/O, 2 usage or parse error, 3 invalid circuit,
// 4 noise fit failed, 5 verification failed.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qsearch/qsearch.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kIoError = 1,
  kUsage = 2,
  kInvalidCircuit = 3,
  kFitFailed = 4,
  kVerifyFailed = 5,
};

struct CliExit {
  int code;
  std::string message;
};

struct RunConfig {
  std::uint64_t shots = 1024;
  std::optional<std::uint64_t> seed;
  std::string format = "text";
  std::string output;
  std::optional<double> depolarizing;
  std::optional<double> readout;
  std::optional<double> readout_p01;
  std::optional<double> readout_p10;
  std::string noise_file;

  std::uint64_t resolved_seed() const {
    if (seed) return *seed;
    if (const char* env = std::getenv("QSIM_SEED"); env && *env) {
      try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(env, &used);
        if (used == std::string(env).size()) return v;
      } catch (const std::exception&) {
      }
      throw CliExit{kUsage, std::string("QSIM_SEED is not an unsigned integer: '") + env + "'"};
    }
    return 0;
  }

  std::optional<qsearch::NoiseModel> noise() const {
    std::optional<qsearch::NoiseModel> model;
    if (!noise_file.empty()) {
      std::ifstream in(noise_file);
      if (!in) throw CliExit{kIoError, "cannot open '" + noise_file + "'"};
      std::stringstream buf;
      buf << in.rdbuf();
      model = qsearch::noise_model_from_json(buf.str());
    }
    if (depolarizing || readout || readout_p01 || readout_p10) {
      if (!model) model = qsearch::NoiseModel{};
      if (depolarizing) model->depolarizing_p = *depolarizing;
      if (readout) model->readout_p01 = model->readout_p10 = *readout;
      if (readout_p01) model->readout_p01 = *readout_p01;
      if (readout_p10) model->readout_p10 = *readout_p10;
    }
    if (model) model->validate();
    return model;
  }
};

void add_run_options(CLI::App* cmd, RunConfig& cfg, bool with_noise = true) {
  cmd->add_option("--shots", cfg.shots, "Number of shots")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "Sampling seed (default 0, or $QSIM_SEED)");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"text", "json", "csv"}));
  cmd->add_option("-o,--output", cfg.output, "Write the rendered report to this file");
  if (!with_noise) return;
  cmd->add_option("--depolarizing", cfg.depolarizing, "Depolarizing probability per gate and qubit");
  cmd->add_option("--readout", cfg.readout, "Symmetric readout flip probability");
  cmd->add_option("--readout-p01", cfg.readout_p01, "P(read 1 | true 0)");
  cmd->add_option("--readout-p10", cfg.readout_p10, "P(read 0 | true 1)");
  cmd->add_option("--noise", cfg.noise_file, "Noise model JSON file");
}

std::string render(const qsearch::CountsReport& r, const std::string& format) {
  if (format == "json") return qsearch::to_json(r) + "\n";
  if (format == "csv") return qsearch::to_csv(r);
  return qsearch::to_text(r);
}

void emit(const std::string& text, const RunConfig& cfg) {
  if (cfg.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out || !(out << text)) throw CliExit{kIoError, "cannot open '" + cfg.output + "' for writing"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliExit{kIoError, "cannot open '" + path + "'"};
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

qsearch::CountsReport execute_checked(const qsearch::Circuit& c, const RunConfig& cfg) {
  return qsearch::execute(c, cfg.shots, cfg.resolved_seed(), cfg.noise());
}

// Extra lines appended to text output of search/grover.
std::string key_summary(const qsearch::CountsReport& r, const std::string& key) {
  std::ostringstream os;
  os << "key " << key << ": observed " << qsearch::format_real(r.frequency(key));
  if (const auto exact = r.exact(key)) {
    os << ", exact " << qsearch::format_real(*exact) << '\n';
    if (std::abs(*exact - 1.0) > 1e-10) {
      os << "note: this circuit does NOT read the key with certainty (exact P = "
         << qsearch::format_real(*exact) << ")\n";
    }
  } else {
    os << " (noisy run)\n";
  }
  return os.str();
}

int cmd_run(const std::string& path, const RunConfig& cfg) {
  const std::string source = read_file(path);
  qsearch::Circuit circuit;
  try {
    circuit = qsearch::parse_qasm(source);
  } catch (const qsearch::ParseError& e) {
    throw CliExit{kUsage, path + ": " + e.what()};
  }
  if (auto violations = qsearch::validate(circuit); !violations.empty()) {
    throw CliExit{kInvalidCircuit, path + ": " + qsearch::ValidationError(violations).what()};
  }
  emit(render(execute_checked(circuit, cfg), cfg.format), cfg);
  return kOk;
}

int cmd_search(int n, const std::string& key, const std::string& variant, const RunConfig& cfg,
               const std::string& emit_qasm) {
  const qsearch::Circuit circuit =
      qsearch::build_constant_search({n, key, qsearch::search_variant_from_string(variant)});
  if (!emit_qasm.empty()) {
    std::ofstream out(emit_qasm, std::ios::binary);
    if (!out || !(out << qsearch::print_qasm(circuit))) {
      throw CliExit{kIoError, "cannot open '" + emit_qasm + "' for writing"};
    }
  }
  const auto report = execute_checked(circuit, cfg);
  std::string text = render(report, cfg.format);
  if (cfg.format == "text") text = "variant: " + variant + "\n" + text + key_summary(report, key);
  emit(text, cfg);
  return kOk;
}

int cmd_grover(int n, const std::string& key, const std::string& iterations, const RunConfig& cfg) {
  qsearch::GroverSpec spec{n, key, std::nullopt};
  if (iterations != "auto") {
    try {
      std::size_t used = 0;
      spec.iterations = std::stoi(iterations, &used);
      if (used != iterations.size() || *spec.iterations < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw CliExit{kUsage, "--iterations must be a non-negative integer or 'auto'"};
    }
  }
  const auto report = execute_checked(qsearch::build_grover(spec), cfg);
  std::string text = render(report, cfg.format);
  if (cfg.format == "text") {
    text = "iterations: " + std::to_string(spec.resolved_iterations()) +
           (spec.iterations ? "" : " (auto)") + "\n" + text + key_summary(report, key);
  }
  emit(text, cfg);
  return kOk;
}

int cmd_verify(int max_qubits, double tolerance, const RunConfig& cfg) {
  const auto report = qsearch::run_verification(max_qubits, tolerance, cfg.resolved_seed());
  std::ostringstream os;
  for (const auto& s : report.suites) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-20s max_error=%-12.4g %8.1f ms  %s\n",
                  s.passed ? "PASS" : "FAIL", s.name.c_str(), s.max_error, s.millis,
                  s.detail.c_str());
    os << line;
  }
  os << (report.all_passed() ? "all suites passed\n" : "verification FAILED\n");
  emit(os.str(), cfg);
  return report.all_passed() ? kOk : kVerifyFailed;
}

int cmd_fit_noise(int n, const std::string& key, double target, const std::string& variant,
                  const RunConfig& cfg) {
  const qsearch::Circuit circuit =
      qsearch::build_constant_search({n, key, qsearch::search_variant_from_string(variant)});
  const auto fit = qsearch::fit_readout(circuit, key, target, cfg.shots, cfg.resolved_seed());
  std::ostringstream os;
  if (cfg.format == "json") {
    os << "{\"achieved\":" << qsearch::format_real(fit.achieved)
       << ",\"converged\":" << (fit.converged ? "true" : "false")
       << ",\"iterations\":" << fit.iterations << ",\"p\":" << qsearch::format_real(fit.p)
       << ",\"target\":" << qsearch::format_real(target) << "}\n";
  } else if (cfg.format == "csv") {
    os << "target,p,achieved,iterations,converged\n"
       << qsearch::format_real(target) << ',' << qsearch::format_real(fit.p) << ','
       << qsearch::format_real(fit.achieved) << ',' << fit.iterations << ','
       << (fit.converged ? "true" : "false") << '\n';
  } else {
    os << "target P(" << key << "): " << qsearch::format_real(target) << '\n'
       << "fitted readout p: " << qsearch::format_real(fit.p) << '\n'
       << "achieved P(" << key << "): " << qsearch::format_real(fit.achieved) << " (" << cfg.shots
       << " shots)\n"
       << "closed form (1-p)^" << n << ": " << qsearch::format_real(std::pow(1.0 - fit.p, n)) << '\n'
       << "iterations: " << fit.iterations << '\n';
  }
  emit(os.str(), cfg);
  if (!fit.converged) throw CliExit{kFitFailed, "fit failed: " + fit.message};
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qsearch: state-vector simulator and OpenQASM toolkit for constant-depth search"};
  app.require_subcommand(1);

  RunConfig run_cfg, search_cfg, grover_cfg, verify_cfg, fit_cfg;
  fit_cfg.shots = 65536;

  std::string qasm_path;
  auto* run = app.add_subcommand("run", "Execute an OpenQASM 2.0 file");
  run->add_option("file", qasm_path, "Path to a .qasm file")->required();
  add_run_options(run, run_cfg);

  int search_n = 2;
  std::string search_key, search_variant = "algorithm", emit_qasm;
  auto* search = app.add_subcommand("search", "Constant-depth register-comparison search");
  search->add_option("--n", search_n, "Qubits per register")->required();
  search->add_option("--key", search_key, "Search key, MSB first")->required();
  search->add_option("--variant", search_variant, "Circuit variant")
      ->check(CLI::IsMember({"algorithm", "qasm-literal"}));
  search->add_option("--emit-qasm", emit_qasm, "Also write the circuit as OpenQASM");
  add_run_options(search, search_cfg);

  int grover_n = 2;
  std::string grover_key, grover_iterations = "auto";
  auto* grover = app.add_subcommand("grover", "Grover search baseline");
  grover->add_option("--n", grover_n, "Number of qubits")->required();
  grover->add_option("--key", grover_key, "Marked item, MSB first")->required();
  grover->add_option("--iterations", grover_iterations, "Iteration count or 'auto'");
  add_run_options(grover, grover_cfg);

  int max_qubits = 5;
  double tolerance = 1e-10;
  auto* verify = app.add_subcommand("verify", "Run the self-check suites");
  verify->add_option("--max-qubits", max_qubits, "Largest register size exercised")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tolerance", tolerance, "Maximum admissible deviation");
  verify->add_option("--seed", verify_cfg.seed, "Seed for random circuits");
  verify->add_option("-o,--output", verify_cfg.output, "Write the report to this file");

  int fit_n = 2;
  std::string fit_key, fit_variant = "algorithm";
  double fit_target = 1.0;
  auto* fit = app.add_subcommand("fit-noise", "Fit symmetric readout error to a target P(key)");
  fit->add_option("--n", fit_n, "Qubits per register")->required();
  fit->add_option("--key", fit_key, "Search key, MSB first")->required();
  fit->add_option("--target", fit_target, "Target probability of reading the key")->required();
  fit->add_option("--variant", fit_variant, "Circuit variant")
      ->check(CLI::IsMember({"algorithm", "qasm-literal"}));
  add_run_options(fit, fit_cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run) return cmd_run(qasm_path, run_cfg);
    if (*search) return cmd_search(search_n, search_key, search_variant, search_cfg, emit_qasm);
    if (*grover) return cmd_grover(grover_n, grover_key, grover_iterations, grover_cfg);
    if (*verify) return cmd_verify(max_qubits, tolerance, verify_cfg);
    if (*fit) return cmd_fit_noise(fit_n, fit_key, fit_target, fit_variant, fit_cfg);
  } catch (const CliExit& e) {
    std::cerr << "qsearch: " << e.message << '\n';
    return e.code;
  } catch (const qsearch::ValidationError& e) {
    std::cerr << "qsearch: " << e.what() << '\n';
    return kInvalidCircuit;
  } catch (const qsearch::DomainError& e) {
    std::cerr << "qsearch: " << e.what() << '\n';
    return kUsage;
  } catch (const qsearch::CapacityError& e) {
    std::cerr << "qsearch: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "qsearch: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
