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

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qsynth/io.hpp"
#include "qsynth/qudit.hpp"
#include "qsynth/synthesize.hpp"

namespace qsynth::bench {

enum class Suite { Haar, Clifford, TwoQubit };

inline const char* to_string(Suite s) {
  switch (s) {
    case Suite::Haar: return "haar";
    case Suite::Clifford: return "clifford";
    case Suite::TwoQubit: return "two-qubit";
  }
  return "?";
}

inline Suite suite_from_name(const std::string& name) {
  if (name == "haar") return Suite::Haar;
  if (name == "clifford") return Suite::Clifford;
  if (name == "two-qubit") return Suite::TwoQubit;
  throw Error(ErrorKind::InvalidArgument, "unknown suite: " + name);
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(base) ^ a) ^ b);
}

/// Worker count: QSYNTH_THREADS if set, otherwise the available cores.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("QSYNTH_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<std::size_t>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline void parallel_for(std::size_t n, std::size_t threads,
                         const std::function<void(std::size_t)>& body) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) body(i);
    });
}

inline std::string csv_double(double v) { return io::format_double(v); }

// ---------------------------------------------------------------------------
// bench
// ---------------------------------------------------------------------------

struct BenchOptions {
  Suite suite = Suite::Haar;
  std::size_t dim = 4;
  std::size_t count = 10;
  std::vector<Engine> engines{Engine::Cbc, Engine::Rbr, Engine::QSweep};
  std::uint64_t seed = 0;
  GateSet gateset = builtin_gateset("sqrtx-virtualz");
  InstantiationConfig cfg;
  double timeout_s = 60.0;
  std::size_t threads = 0;  // 0: worker_count()
  QubitOrdering ordering = QubitOrdering::HighFirst;
  std::size_t word_length = kDefaultWordLength;
};

struct BenchRow {
  std::string suite;
  std::size_t dim = 0;
  std::size_t instance = 0;
  std::string name;
  Engine engine = Engine::Rbr;
  int pulses = 0;
  int factors = 0;
  double distance = 0.0;
  double time_s = 0.0;
  long nodes = 0;
  std::string status = "ok";
};

struct EngineAggregate {
  double mean_pulses = 0.0;
  double mean_time = 0.0;
  std::size_t rows = 0;  // rows with status ok, the ones averaged
};

/// QSweep two-qubit-suite means in this band are flagged: the suite's
/// composition is partly our choice of standard gates.
inline constexpr double kSuiteFlagLow = 4.1;
inline constexpr double kSuiteFlagHigh = 4.5;

struct BenchReport {
  std::string suite;
  std::vector<BenchRow> rows;
  std::map<std::string, EngineAggregate> aggregates;
  bool suite_composition_flag = false;

  std::string to_csv() const {
    std::ostringstream os;
    os << "suite,dim,instance,engine,pulses,factors,distance,time_s,status\n";
    for (const auto& r : rows)
      os << r.suite << ',' << r.dim << ',' << r.instance << ',' << qsynth::to_string(r.engine)
         << ',' << r.pulses << ',' << r.factors << ',' << csv_double(r.distance) << ','
         << csv_double(r.time_s) << ',' << r.status << '\n';
    return os.str();
  }

  io::json to_json() const {
    io::json rows_j = io::json::array();
    for (const auto& r : rows)
      rows_j.push_back({{"suite", r.suite},
                        {"dim", r.dim},
                        {"instance", r.instance},
                        {"name", r.name},
                        {"engine", qsynth::to_string(r.engine)},
                        {"pulses", r.pulses},
                        {"factors", r.factors},
                        {"distance", r.distance},
                        {"time_s", r.time_s},
                        {"node_expansions", r.nodes},
                        {"status", r.status}});
    io::json agg = io::json::object();
    for (const auto& [e, a] : aggregates)
      agg[e] = {{"mean_pulses", a.mean_pulses}, {"mean_time_s", a.mean_time}, {"rows", a.rows}};
    io::json j{{"suite", suite}, {"rows", std::move(rows_j)}, {"aggregates", std::move(agg)}};
    if (suite == to_string(Suite::TwoQubit))
      j["suite_composition_flag"] = suite_composition_flag;
    return j;
  }
};

struct Instance {
  std::string name;
  UnitaryMatrix unitary;
};

inline std::vector<Instance> make_instances(const BenchOptions& o) {
  std::vector<Instance> out;
  switch (o.suite) {
    case Suite::Haar:
      for (std::size_t i = 0; i < o.count; ++i)
        out.push_back({"haar-" + std::to_string(i), haar_random(o.dim, derive_seed(o.seed, i))});
      break;
    case Suite::Clifford:
      for (std::size_t i = 0; i < o.count; ++i)
        out.push_back({"clifford-" + std::to_string(i),
                       random_clifford(o.dim, o.word_length, derive_seed(o.seed, i))});
      break;
    case Suite::TwoQubit:
      for (auto& [name, u] : two_qubit_suite(o.ordering)) out.push_back({name, u});
      break;
  }
  return out;
}

/// Runs one engine on one instance, converting failures into row statuses.
inline BenchRow run_one(Engine engine, const UnitaryMatrix& u, const InstantiationConfig& base,
                        const GateSet& gs, double timeout_s) {
  BenchRow row;
  row.engine = engine;
  InstantiationConfig cfg = base;
  cfg.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(timeout_s));
  const auto start = Clock::now();
  try {
    const SynthesisResult r = synthesize(engine, u, gs, cfg);
    row.pulses = r.pulse_count;
    row.factors = r.factor_count;
    row.distance = r.final_distance;
    row.time_s = r.wall_time;
    row.nodes = r.node_expansions;
    row.status = r.final_distance <= engine_tolerance(engine, cfg) ? "ok" : "failed";
  } catch (const Error& e) {
    row.time_s = std::chrono::duration<double>(Clock::now() - start).count();
    row.status = e.kind() == ErrorKind::Timeout ? "timeout" : "failed";
  }
  return row;
}

template <class Row, class Key>
std::map<std::string, EngineAggregate> aggregate(const std::vector<Row>& rows, Key pulses_of) {
  std::map<std::string, EngineAggregate> out;
  for (const auto& r : rows) {
    if (r.status != "ok") continue;
    auto& a = out[qsynth::to_string(r.engine)];
    a.mean_pulses += pulses_of(r);
    a.mean_time += r.time_s;
    ++a.rows;
  }
  for (auto& [_, a] : out) {
    a.mean_pulses /= static_cast<double>(a.rows);
    a.mean_time /= static_cast<double>(a.rows);
  }
  return out;
}

inline BenchReport run_bench(BenchOptions o) {
  if (o.suite == Suite::TwoQubit) o.dim = 4;
  if (o.engines.empty()) throw Error(ErrorKind::InvalidArgument, "no engines requested");
  const auto instances = make_instances(o);
  const std::size_t n_eng = o.engines.size();
  std::vector<BenchRow> rows(instances.size() * n_eng);

  parallel_for(rows.size(), o.threads ? o.threads : worker_count(), [&](std::size_t k) {
    const std::size_t i = k / n_eng, e = k % n_eng;
    InstantiationConfig cfg = o.cfg;
    cfg.seed = derive_seed(o.seed, i, 1 + e);
    BenchRow row = run_one(o.engines[e], instances[i].unitary, cfg, o.gateset, o.timeout_s);
    row.suite = to_string(o.suite);
    row.dim = o.dim;
    row.instance = i;
    row.name = instances[i].name;
    rows[k] = std::move(row);
  });

  BenchReport rep;
  rep.suite = to_string(o.suite);
  rep.rows = std::move(rows);
  rep.aggregates = aggregate(rep.rows, [](const BenchRow& r) { return double(r.pulses); });
  if (o.suite == Suite::TwoQubit)
    if (auto it = rep.aggregates.find("qsweep"); it != rep.aggregates.end())
      rep.suite_composition_flag =
          it->second.mean_pulses > kSuiteFlagLow && it->second.mean_pulses <= kSuiteFlagHigh;
  return rep;
}

// ---------------------------------------------------------------------------
// rb
// ---------------------------------------------------------------------------

struct RBOptions {
  std::size_t dim = 3;
  std::vector<std::size_t> depths{2, 4, 8};
  std::size_t samples = 5;
  std::vector<Engine> engines{Engine::QSweep};
  std::uint64_t seed = 0;
  GateSet gateset = builtin_gateset("sqrtx-virtualz");
  InstantiationConfig cfg;
  double timeout_s = 60.0;
  std::size_t threads = 0;
};

struct RBRow {
  std::size_t dim = 0;
  std::size_t depth = 0;
  std::size_t sample = 0;
  Engine engine = Engine::QSweep;
  int pulses = 0;
  double pulses_per_clifford = 0.0;
  double distance = 0.0;
  double time_s = 0.0;
  std::string status = "ok";
};

struct RBReport {
  std::vector<RBRow> rows;
  /// Mean pulses per decomposed Clifford (inverse included), per engine.
  std::map<std::string, EngineAggregate> aggregates;

  std::string to_csv() const {
    std::ostringstream os;
    os << "dim,depth,sample,engine,pulses,pulses_per_clifford,distance,time_s,status\n";
    for (const auto& r : rows)
      os << r.dim << ',' << r.depth << ',' << r.sample << ',' << qsynth::to_string(r.engine)
         << ',' << r.pulses << ',' << csv_double(r.pulses_per_clifford) << ','
         << csv_double(r.distance) << ',' << csv_double(r.time_s) << ',' << r.status << '\n';
    return os.str();
  }

  io::json to_json() const {
    io::json rows_j = io::json::array();
    for (const auto& r : rows)
      rows_j.push_back({{"dim", r.dim},
                        {"depth", r.depth},
                        {"sample", r.sample},
                        {"engine", qsynth::to_string(r.engine)},
                        {"pulses", r.pulses},
                        {"pulses_per_clifford", r.pulses_per_clifford},
                        {"distance", r.distance},
                        {"time_s", r.time_s},
                        {"status", r.status}});
    io::json agg = io::json::object();
    for (const auto& [e, a] : aggregates)
      agg[e] = {{"mean_pulses_per_clifford", a.mean_pulses},
                {"mean_time_s", a.mean_time},
                {"rows", a.rows}};
    return {{"suite", "rb"}, {"rows", std::move(rows_j)}, {"aggregates", std::move(agg)}};
  }
};

inline RBReport run_rb(const RBOptions& o) {
  if (o.engines.empty()) throw Error(ErrorKind::InvalidArgument, "no engines requested");
  struct Job {
    std::size_t depth, sample, engine;
  };
  std::vector<Job> jobs;
  for (std::size_t depth : o.depths)
    for (std::size_t s = 0; s < o.samples; ++s)
      for (std::size_t e = 0; e < o.engines.size(); ++e) jobs.push_back({depth, s, e});

  std::vector<RBRow> rows(jobs.size());
  parallel_for(jobs.size(), o.threads ? o.threads : worker_count(), [&](std::size_t k) {
    const Job& job = jobs[k];
    RBRow row;
    row.dim = o.dim;
    row.depth = job.depth;
    row.sample = job.sample;
    row.engine = o.engines[job.engine];
    // Same sequence for every engine.
    const RBSequence seq = rb_sequence(o.dim, job.depth, derive_seed(o.seed, job.depth, job.sample));
    InstantiationConfig cfg = o.cfg;
    cfg.seed = derive_seed(o.seed, job.depth * 1000 + job.sample, 1 + job.engine);
    cfg.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(o.timeout_s));
    const auto start = Clock::now();
    try {
      const RBVerifyReport rep = rb_verify(seq, row.engine, o.gateset, cfg);
      row.pulses = rep.total_pulses;
      row.pulses_per_clifford = rep.pulses_per_clifford;
      row.distance = rep.distance;
      row.time_s = rep.wall_time;
      const double tol = static_cast<double>(job.depth + 1) * engine_tolerance(row.engine, cfg);
      row.status = rep.distance <= tol ? "ok" : "failed";
    } catch (const Error& e) {
      row.time_s = std::chrono::duration<double>(Clock::now() - start).count();
      row.status = e.kind() == ErrorKind::Timeout ? "timeout" : "failed";
    }
    rows[k] = row;
  });

  RBReport rep;
  rep.rows = std::move(rows);
  rep.aggregates = aggregate(rep.rows, [](const RBRow& r) { return r.pulses_per_clifford; });
  return rep;
}

}  // namespace qsynth::bench
