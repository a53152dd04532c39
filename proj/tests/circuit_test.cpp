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

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gtest/gtest.h"
#include "qsearch/algorithms.hpp"
#include "qsearch/dense_oracle.hpp"
#include "qsearch/executor.hpp"
#include "qsearch/qasm.hpp"

namespace qsearch {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Circuit Listing() { return parse_qasm(ReadFile(std::string(QSEARCH_DATA_DIR) + "/literal_search.qasm")); }

bool HasViolation(const Circuit& c, const std::string& needle) {
  for (const auto& v : validate(c))
    if (v.message.find(needle) != std::string::npos) return true;
  return false;
}

TEST(ValidateTest, ListingIsValid) { EXPECT_TRUE(validate(Listing()).empty()); }

TEST(ValidateTest, DuplicateQubit) {
  Circuit c(2, 0);
  c.cx(0, 0);
  EXPECT_TRUE(HasViolation(c, "duplicate qubit"));
  EXPECT_THROW(require_valid(c), ValidationError);
}

TEST(ValidateTest, MeasureOutOfBounds) {
  Circuit c(4, 1);
  c.measure(5, 0);
  const auto vs = validate(c);
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].position, 0U);
  EXPECT_NE(vs[0].message.find("index out of bounds"), std::string::npos);
}

TEST(ValidateTest, ClbitWrittenTwice) {
  Circuit c(2, 1);
  c.measure(0, 0).measure(1, 0);
  const auto vs = validate(c);
  ASSERT_EQ(vs.size(), 1U);
  EXPECT_EQ(vs[0].position, 1U);
  EXPECT_NE(vs[0].message.find("written more than once"), std::string::npos);
}

TEST(ValidateTest, ArityMismatchAndPositions) {
  Circuit c(3, 0);
  c.h(0).gate(GateKind::CX, {1}).x(7);
  const auto vs = validate(c);
  ASSERT_EQ(vs.size(), 2U);
  EXPECT_EQ(vs[0].position, 1U);
  EXPECT_NE(vs[0].message.find("gate arity mismatch"), std::string::npos);
  EXPECT_EQ(vs[1].position, 2U);
}

TEST(ValidateTest, UnitaryDimension) {
  Circuit c(2, 0);
  c.unitary("bad", DenseMatrix::identity(2), {0, 1});
  EXPECT_FALSE(validate(c).empty());
}

TEST(ExecuteTest, EmptyCircuitWithOneClbit) {
  const auto r = execute(Circuit(1, 1), 10, 0);
  EXPECT_EQ(r.counts, (std::map<std::string, std::uint64_t>{{"0", 10}}));
}

TEST(ExecuteTest, ListingIsUniform) {
  const auto r = execute(Listing(), 8192, 0);
  ASSERT_TRUE(r.exact_probabilities);
  ASSERT_EQ(r.exact_probabilities->size(), 4U);
  for (const auto& [bits, p] : *r.exact_probabilities) EXPECT_NEAR(p, 0.25, 1e-10) << bits;
  std::uint64_t total = 0;
  for (const auto& [bits, n] : r.counts) total += n;
  EXPECT_EQ(total, 8192U);
}

TEST(ExecuteTest, AlgorithmVariantReadsKey) {
  const auto r = execute(build_constant_search({2, "01"}), 1024, 99);
  EXPECT_EQ(r.counts, (std::map<std::string, std::uint64_t>{{"01", 1024}}));
}

TEST(ExecuteTest, TrailingZAfterMeasureLeavesCountsUnchanged) {
  const Circuit with = Listing();
  Circuit without(with.qregs(), with.cregs());
  for (std::size_t i = 0; i + 2 < with.instructions().size(); ++i) without.append(with.instructions()[i]);
  const auto a = execute(with, 4096, 5);
  const auto b = execute(without, 4096, 5);
  EXPECT_EQ(a.counts, b.counts);
  ASSERT_EQ(a.exact_probabilities->size(), b.exact_probabilities->size());
  for (const auto& [bits, p] : *a.exact_probabilities) EXPECT_NEAR(p, b.exact_probabilities->at(bits), 1e-12);
}

TEST(ExecuteTest, GateAfterMeasureActsOnCollapsedState) {
  // H, measure into c0, H again, measure into c1: c1 is uniform independent of c0.
  Circuit c(1, 2);
  c.h(0).measure(0, 0).h(0).measure(0, 1);
  const auto dist = exact_distribution(c);
  ASSERT_EQ(dist.size(), 4U);
  for (const auto& [v, p] : dist) EXPECT_NEAR(p, 0.25, 1e-12);
  // X after measure then re-measure: second clbit always differs from first.
  Circuit d(1, 2);
  d.h(0).measure(0, 0).x(0).measure(0, 1);
  const auto e = exact_distribution(d);
  EXPECT_NEAR(e.at(0b10), 0.5, 1e-12);
  EXPECT_NEAR(e.at(0b01), 0.5, 1e-12);
}

TEST(ExecuteTest, UnwrittenClbitsStayZero) {
  Circuit c(1, 3);
  c.x(0).measure(0, 1);
  EXPECT_EQ(execute(c, 5, 0).counts, (std::map<std::string, std::uint64_t>{{"010", 5}}));
}

TEST(ExecuteTest, Errors) {
  Circuit bad(2, 1);
  bad.cx(1, 1);
  EXPECT_THROW(execute(bad, 10, 0), ValidationError);
  EXPECT_THROW(execute(Circuit(1, 1), 0, 0), DomainError);
}

TEST(ExecuteTest, JsonSchema) {
  const auto r = execute(Listing(), 100, 3);
  const std::string text = to_json(r);
  const auto doc = nlohmann::json::parse(text);
  ASSERT_TRUE(doc.is_object());
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"circuit_digest", "counts", "exact_probabilities", "seed", "shots"}));
  EXPECT_EQ(doc["shots"], 100);
  EXPECT_EQ(doc["seed"], 3);
  EXPECT_EQ(doc["circuit_digest"].get<std::string>().size(), 16U);
  EXPECT_EQ(doc["circuit_digest"], circuit_digest(Listing()));
  std::uint64_t sum = 0;
  for (const auto& [k, v] : doc["counts"].items()) sum += v.get<std::uint64_t>();
  EXPECT_EQ(sum, 100U);
  EXPECT_DOUBLE_EQ(doc["exact_probabilities"]["01"].get<double>(), 0.25);
  // Key order in the raw text is sorted.
  EXPECT_LT(text.find("\"circuit_digest\""), text.find("\"counts\""));
  EXPECT_LT(text.find("\"seed\""), text.find("\"shots\""));
}

TEST(ExecuteTest, SeedDeterminism) {
  Circuit c(3, 3);
  for (int q = 0; q < 3; ++q) c.h(q);
  c.t(0).cx(0, 1).s(2).h(2);
  for (int q = 0; q < 3; ++q) c.measure(q, q);
  EXPECT_EQ(to_json(execute(c, 8192, 11)), to_json(execute(c, 8192, 11)));
  EXPECT_NE(to_json(execute(c, 8192, 11)), to_json(execute(c, 8192, 12)));
}

// Exact table from an independent route: dense unitary times |0>, then a
// marginal over the measured qubits.
std::map<std::string, double> DenseMarginal(const Circuit& unitary_part, const std::vector<int>& measured,
                                            int width) {
  const DenseUnitary u = dense_unitary_of(unitary_part);
  std::vector<Complex> e0(u.dim());
  e0[0] = 1.0;
  const auto amps = u * e0;
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < measured.size(); ++k) v |= ((i >> measured[k]) & 1U) << k;
    out[format_bitstring(v, width)] += std::norm(amps[i]);
  }
  return out;
}

TEST(ExecuteTest, SamplingWithinThreeSigmaOfDenseOracle) {
  Circuit u(3, 0);
  u.h(0).t(0).h(0).h(1).cx(1, 2).s(2).h(2).p(0.4, 1).h(1);
  Circuit m(3, 3);
  for (const auto& inst : u.instructions()) m.append(inst);
  for (int q = 0; q < 3; ++q) m.measure(q, q);
  const auto expected = DenseMarginal(u, {0, 1, 2}, 3);
  const auto r = execute(m, 8192, 2026);
  for (const auto& [bits, p] : expected) {
    ASSERT_NEAR(r.exact(bits).value(), p, 1e-10) << bits;
    const double sigma = std::sqrt(8192 * p * (1 - p));
    const auto it = r.counts.find(bits);
    const double seen = it == r.counts.end() ? 0.0 : static_cast<double>(it->second);
    EXPECT_LE(std::abs(seen - 8192 * p), 3 * sigma + 1e-9) << bits;
  }
}

TEST(ReportTest, CsvAndText) {
  CountsReport r;
  r.shots = 4;
  r.num_clbits = 2;
  r.counts = {{"00", 1}, {"11", 3}};
  EXPECT_EQ(to_csv(r), "bitstring,count,probability\n00,1,0.25\n11,3,0.75\n");
  const std::string text = to_text(r);
  EXPECT_NE(text.find("00"), std::string::npos);
  EXPECT_NE(text.find(std::string(40, '#')), std::string::npos);
}

TEST(ReportTest, BitstringHelpers) {
  EXPECT_EQ(format_bitstring(1, 2), "01");
  EXPECT_EQ(format_bitstring(6, 4), "0110");
  EXPECT_EQ(parse_bitstring("0110"), 6U);
  EXPECT_THROW(parse_bitstring("01x"), DomainError);
  // FNV-1a 64 reference vectors.
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
}

}  // namespace
}  // namespace qsearch
