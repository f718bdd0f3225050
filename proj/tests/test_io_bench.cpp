// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"

namespace qsynth {
namespace {

using io::json;

TEST(Json, UnitaryRoundTripIsExact) {
  const UnitaryMatrix u = haar_random(4, 3);
  const json j = json::parse(io::dump(io::to_json(u)));
  EXPECT_EQ(io::unitary_from_json(j).matrix(), u.matrix());
}

TEST(Json, DoublesUse17Digits) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(2.0), "2.0");
  EXPECT_EQ(io::dump(json{{"x", 1.0 / 3.0}}, 0), "{\"x\":0.33333333333333331}");
}

TEST(Json, MalformedUnitaries) {
  auto kind_of = [](const json& j) {
    try {
      io::unitary_from_json(j);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind_of(json{{"dim", 2}}), ErrorKind::Parse);
  EXPECT_EQ(kind_of(json{{"dim", 2}, {"matrix", {{{1, 0}, {0, 0}}}}}), ErrorKind::Parse);
  EXPECT_EQ(kind_of(json{{"dim", 2}, {"matrix", {{{1, 0}, {0, 0}}, {{0, 0}, {1}}}}}),
            ErrorKind::Parse);
  EXPECT_EQ(kind_of(json{{"dim", 2}, {"matrix", {{{1, 0}, {0, 0}}, {{0, 0}, {2, 0}}}}}),
            ErrorKind::NotUnitary);
}

TEST(Json, GatesetFormats) {
  EXPECT_EQ(io::gateset_from_json(json{{"name", "full-u2"}}).name(), "full-u2");
  const GateSet gs = io::gateset_from_json(json::parse(R"({
    "subspaces": [{"j": 0, "gates": ["z", "sx"]}, {"j": 1, "gates": ["u2"]}],
    "universality_bound": 2})"));
  EXPECT_TRUE(gs.allows(0, GateKind::SqrtX));
  EXPECT_TRUE(gs.allows(1, GateKind::U2));
  EXPECT_TRUE(gs.covers(3));
  EXPECT_FALSE(gs.covers(4));
  EXPECT_THROW(io::gateset_from_json(json::parse(R"({"subspaces": [{"j": 0, "gates": ["cx"]}]})")),
               Error);
}

TEST(Json, CircuitRoundTrip) {
  const auto r = synthesize(Engine::QSweep, haar_random(3, 4), builtin_gateset("sqrtx-virtualz"));
  const json j = json::parse(io::dump(io::to_json(r)));
  const Circuit back = io::circuit_from_json(j.at("circuit"));
  EXPECT_EQ(back.params(), r.circuit.params());
  EXPECT_EQ(circuit_matrix(back), circuit_matrix(r.circuit));
  EXPECT_EQ(j.at("pulse_count").get<int>(), r.pulse_count);
  EXPECT_EQ(j.at("engine").get<std::string>(), "qsweep");
}

TEST(Synthesize, EveryEngineReverifies) {
  const GateSet gs = builtin_gateset("sqrtx-virtualz");
  const UnitaryMatrix u = haar_random(3, 17);
  for (Engine e : {Engine::Cbc, Engine::Rbr, Engine::QSweep, Engine::Unguided}) {
    const auto r = synthesize(e, u, gs);
    EXPECT_EQ(r.engine, e);
    EXPECT_EQ(r.pulse_count, r.circuit.pulse_count());
    EXPECT_DOUBLE_EQ(r.final_distance, distance(u.matrix(), circuit_matrix(r.circuit)));
    EXPECT_LE(r.final_distance, engine_tolerance(e, InstantiationConfig{}));
    EXPECT_GE(r.wall_time, 0.0);
  }
}

TEST(Engines, NamesRoundTrip) {
  for (Engine e : {Engine::Cbc, Engine::Rbr, Engine::QSweep, Engine::Unguided})
    EXPECT_EQ(engine_from_name(to_string(e)), e);
  EXPECT_THROW(engine_from_name("qsearch"), Error);
}

TEST(Bench, SeedsAreStable) {
  EXPECT_EQ(bench::derive_seed(1, 2, 3), bench::derive_seed(1, 2, 3));
  EXPECT_NE(bench::derive_seed(1, 2, 3), bench::derive_seed(1, 3, 2));
}

TEST(Bench, HaarQuquartParity) {
  bench::BenchOptions o;
  o.suite = bench::Suite::Haar;
  o.dim = 4;
  o.count = 10;
  o.seed = 7;
  const auto rep = bench::run_bench(o);
  ASSERT_EQ(rep.rows.size(), 30u);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.pulses, 12);
    EXPECT_EQ(r.status, "ok");
  }
  // Sorted by (instance, engine) in request order.
  EXPECT_EQ(rep.rows[0].instance, 0u);
  EXPECT_EQ(rep.rows[0].engine, Engine::Cbc);
  EXPECT_EQ(rep.rows[2].engine, Engine::QSweep);
  EXPECT_EQ(rep.rows[3].instance, 1u);
  EXPECT_DOUBLE_EQ(rep.aggregates.at("qsweep").mean_pulses, 12.0);
}

TEST(Bench, AggregateIsArithmeticMean) {
  bench::BenchOptions o;
  o.suite = bench::Suite::Clifford;
  o.dim = 3;
  o.count = 20;
  o.seed = 1;
  const auto rep = bench::run_bench(o);
  for (const char* e : {"cbc", "rbr", "qsweep"}) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rep.rows)
      if (to_string(r.engine) == std::string(e)) {
        sum += r.pulses;
        ++n;
      }
    EXPECT_DOUBLE_EQ(rep.aggregates.at(e).mean_pulses, sum / n);
  }
  EXPECT_LE(rep.aggregates.at("qsweep").mean_pulses, rep.aggregates.at("rbr").mean_pulses);
  EXPECT_LE(rep.aggregates.at("rbr").mean_pulses, rep.aggregates.at("cbc").mean_pulses);
}

TEST(Bench, TwoQubitSuiteCbcIsTwelve) {
  bench::BenchOptions o;
  o.suite = bench::Suite::TwoQubit;
  o.engines = {Engine::Cbc};
  const auto rep = bench::run_bench(o);
  ASSERT_EQ(rep.rows.size(), 9u);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.pulses, 12);
    EXPECT_EQ(r.dim, 4u);
  }
}

TEST(Bench, CsvHeaderAndRows) {
  bench::BenchOptions o;
  o.count = 2;
  o.dim = 2;
  o.engines = {Engine::Rbr};
  const std::string csv = bench::run_bench(o).to_csv();
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "suite,dim,instance,engine,pulses,factors,distance,time_s,status");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("haar,2,", 0), 0u);
  }
  EXPECT_EQ(rows, 2);
}

TEST(Bench, TimeoutMarksRowAndContinues) {
  bench::BenchOptions o;
  o.dim = 3;
  o.count = 2;
  o.engines = {Engine::QSweep, Engine::Rbr};
  o.timeout_s = 1e-9;
  const auto rep = bench::run_bench(o);
  ASSERT_EQ(rep.rows.size(), 4u);
  for (const auto& r : rep.rows) {
    if (r.engine == Engine::QSweep)
      EXPECT_EQ(r.status, "timeout");
    else
      EXPECT_EQ(r.status, "ok");
  }
  EXPECT_EQ(rep.aggregates.count("qsweep"), 0u);
}

TEST(Bench, ThreadCountDoesNotChangeResults) {
  bench::BenchOptions o;
  o.dim = 3;
  o.count = 6;
  o.seed = 3;
  o.threads = 1;
  auto a = bench::run_bench(o);
  o.threads = 3;
  auto b = bench::run_bench(o);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].pulses, b.rows[i].pulses);
    EXPECT_EQ(a.rows[i].distance, b.rows[i].distance);
    EXPECT_EQ(a.rows[i].engine, b.rows[i].engine);
  }
}

TEST(RBHarness, CardinalityAndDominance) {
  bench::RBOptions o;
  o.dim = 3;
  o.depths = {2, 4, 8};
  o.samples = 3;
  o.engines = {Engine::QSweep};
  const auto rep = bench::run_rb(o);
  EXPECT_EQ(rep.rows.size(), 9u);
  for (const auto& r : rep.rows) {
    EXPECT_EQ(r.status, "ok");
    EXPECT_LE(r.distance, static_cast<double>(r.depth + 1) * 1e-8);
  }

  o.depths = {4};
  o.samples = 2;
  o.engines = {Engine::Cbc, Engine::QSweep};
  const auto both = bench::run_rb(o);
  EXPECT_LT(both.aggregates.at("qsweep").mean_pulses, both.aggregates.at("cbc").mean_pulses);
  // The same sequence is decomposed by both engines.
  EXPECT_EQ(both.rows[0].depth, both.rows[1].depth);
  EXPECT_EQ(both.rows[0].sample, both.rows[1].sample);
}

}  // namespace
}  // namespace qsynth
