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

#include <random>

#include "test_util.hpp"

namespace qsynth {
namespace {

const GateSet& sx() {
  static const GateSet gs = builtin_gateset("sqrtx-virtualz");
  return gs;
}

std::vector<std::size_t> rows_from(std::size_t first, std::size_t d) {
  std::vector<std::size_t> out;
  for (std::size_t r = first; r < d; ++r) out.push_back(r);
  return out;
}

TEST(QSweep, IdentityNeedsNoPulses) {
  const auto r = qsweep_synthesize(UnitaryMatrix::identity(4), sx());
  EXPECT_EQ(r.pulse_count, 0);
  EXPECT_EQ(r.final_distance, 0.0);
}

TEST(QSweep, SinglePulseTarget) {
  const UnitaryMatrix u = embed_u2(3, 0, sqrt_x());
  const auto r = qsweep_synthesize(u, sx());
  EXPECT_EQ(r.pulse_count, 1);
  EXPECT_LE(r.final_distance, 1e-8);
}

TEST(QSweep, HaarQuquartUsesTwelvePulses) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    InstantiationConfig cfg;
    cfg.seed = seed;
    const UnitaryMatrix u = haar_random(4, 1000 + seed);
    const auto r = qsweep_synthesize(u, sx(), cfg);
    EXPECT_EQ(r.pulse_count, 12);
    EXPECT_LE(r.final_distance, 1e-8);
    // Re-verified here, independent of the engine's own report.
    EXPECT_LE(distance(u.matrix(), circuit_matrix(r.circuit)), 1e-8);
    EXPECT_EQ(r.circuit.pulse_count(), r.pulse_count);
  }
}

TEST(QSweep, CnotAsQuquart) {
  const UnitaryMatrix u = two_qubit_suite().at("cnot");
  const auto r = qsweep_synthesize(u, sx());
  EXPECT_LE(r.pulse_count, 2);
  EXPECT_LE(distance(u.matrix(), circuit_matrix(r.circuit)), 1e-8);
}

TEST(QSweep, NeverWorseThanTwiceRbrFactors) {
  std::mt19937_64 rng(9);
  for (std::size_t d : {2u, 3u, 4u})
    for (int i = 0; i < 10; ++i) {
      const UnitaryMatrix u = random_clifford(d, kDefaultWordLength, rng);
      const auto q = qsweep_synthesize(u, sx());
      EXPECT_LE(q.pulse_count, 2 * static_cast<int>(rbr_synthesize(u).factors.size()));
    }
}

TEST(QSweep, OtherGatesets) {
  const UnitaryMatrix u = haar_random(3, 55);
  const auto full = qsweep_synthesize(u, builtin_gateset("full-u2"));
  EXPECT_EQ(full.pulse_count, 6);
  EXPECT_LE(distance(u.matrix(), circuit_matrix(full.circuit)), 1e-8);
  // Z Rx Z is a full Euler form, so one pulse per factor can suffice.
  const auto rxz = qsweep_synthesize(u, builtin_gateset("rx-virtualz"));
  EXPECT_LE(rxz.pulse_count, 6);
  EXPECT_LE(distance(u.matrix(), circuit_matrix(rxz.circuit)), 1e-8);
}

TEST(QSweep, Errors) {
  const GateSet partial("partial", std::map<std::size_t, std::vector<GateKind>>{
                                       {0, {GateKind::VirtualZ, GateKind::SqrtX}}},
                        2);
  try {
    qsweep_synthesize(haar_random(3, 1), partial);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedGateSet);
  }

  // Virtual Zs alone cannot mix levels.
  const GateSet z_only("z-only", std::vector{GateKind::VirtualZ}, 2);
  try {
    qsweep_synthesize(haar_random(3, 2), z_only);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Instantiation);
  }

  InstantiationConfig late;
  late.deadline = Clock::now() - std::chrono::seconds(1);
  try {
    qsweep_synthesize(haar_random(3, 3), sx(), late);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Timeout);
  }

  InstantiationConfig bad;
  bad.eps_elem = 1e-6;
  bad.eps_final = 1e-8;
  EXPECT_THROW(qsweep_synthesize(haar_random(3, 4), sx(), bad), Error);
}

TEST(QSweep, DeterministicPerSeed) {
  InstantiationConfig cfg;
  cfg.seed = 21;
  const UnitaryMatrix u = haar_random(4, 21);
  const auto a = qsweep_synthesize(u, sx(), cfg);
  const auto b = qsweep_synthesize(u, sx(), cfg);
  EXPECT_EQ(a.circuit.params(), b.circuit.params());
  EXPECT_EQ(a.pulse_count, b.pulse_count);
}

TEST(StepStructures, StayOnTheirSubspace) {
  for (int k = 0; k <= 2; ++k) {
    const auto structures = step_structures(sx(), 2, k);
    ASSERT_EQ(structures.size(), 1u);
    EXPECT_EQ(structure_pulses(structures[0]), k);
    EXPECT_EQ(structures[0].size(), static_cast<std::size_t>(2 * k + 1));
    for (const auto& g : structures[0]) EXPECT_EQ(g.subspace, 2u);
  }
  const auto u2 = step_structures(builtin_gateset("full-u2"), 1, 2);
  ASSERT_EQ(u2.size(), 1u);
  EXPECT_EQ(u2[0].size(), 1u);
  EXPECT_TRUE(step_structures(builtin_gateset("full-u2"), 1, 1).empty());
}

TEST(SweepCost, EmptyCircuitOnIdentity) {
  const EliminationState state(UnitaryMatrix::identity(4));
  EXPECT_EQ(sweep_cost(state, candidate_for({3, 0}), {}), 0.0);
}

TEST(SweepCost, AnalyticRbrPointIsFeasible) {
  std::mt19937_64 rng(6);
  for (std::size_t d : {2u, 3u, 4u, 5u})
    for (int i = 0; i < 10; ++i) {
      const UnitaryMatrix u = haar_random(d, rng);
      const GateSetCircuit gc = factors_to_circuit(rbr_synthesize(u), sx());
      // U = e^{i psi} W. Prepend to W's output the diagonal (det 1) that
      // moves the global phase onto level 0, so V = U W'^dag has ones on
      // every diagonal entry except (0, 0).
      Circuit w = gc.circuit;
      const double psi = gc.global_phase;
      std::vector<double> phases(d, psi);
      phases[0] = psi * (1.0 - static_cast<double>(d));
      append_diagonal_as_virtual_z(w, phases);

      EliminationState state(u);
      state.circuit = w;
      state.zeroed = rbr_plan(d);
      state.zeroed.pop_back();
      state.completed_rows = rows_from(2, d);
      const Candidate last = candidate_for(rbr_plan(d).back());
      EXPECT_LT(sweep_cost(state, last, w.params()), 1e-20) << "d=" << d;
    }
}

TEST(SweepCost, GradientMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 3 + static_cast<std::size_t>(i % 2);
    EliminationState state(haar_random(d, rng));
    for (std::size_t j = 0; j + 1 < d; ++j) {
      state.circuit.append(GateKind::VirtualZ, j, {angle(rng)});
      state.circuit.append(GateKind::SqrtX, j);
      state.circuit.append(GateKind::U2, j, {angle(rng), angle(rng), angle(rng)});
    }
    state.zeroed = {{d - 1, 0}, {d - 1, 1}};
    state.completed_rows = {d - 1};
    const Candidate cand = candidate_for({d - 2, 0});
    const auto p = state.circuit.params();
    const auto grad = sweep_cost_gradient(state, cand, p);
    auto f = [&](const std::vector<double>& x) { return sweep_cost(state, cand, x); };
    for (std::size_t k = 0; k < p.size(); ++k)
      EXPECT_NEAR(grad[k], testing::central_difference(f, p, k), 1e-6);
  }
}

TEST(Instantiate, EmptyStructureOnSatisfiedCandidate) {
  EliminationState state(UnitaryMatrix::identity(3));
  std::mt19937_64 rng(1);
  const auto out = instantiate(state, candidate_for({2, 0}), {}, InstantiationConfig{}, rng);
  EXPECT_TRUE(out.success);
  EXPECT_EQ(out.solves, 1);
  EXPECT_EQ(state.zeroed.size(), 1u);
}

TEST(Instantiate, StepwiseEliminationMeetsThresholdWithAnalyticWarmStart) {
  // Drives a Haar qutrit through the plan by hand: every K-pulse step has an
  // analytic warm start already at cost < 1e-20, and every accepted step
  // satisfies the acceptance threshold.
  std::mt19937_64 rng(3);
  InstantiationConfig cfg;
  for (int trial = 0; trial < 5; ++trial) {
    EliminationState state(haar_random(3, rng));
    std::size_t zeroed_before = 0;
    for (const Target t : rbr_plan(3)) {
      const Candidate cand = candidate_for(t);
      const Structure s = step_structures(sx(), t.col, 2).front();
      const auto warm = analytic_step_params(state, t, s, rng);
      ASSERT_TRUE(warm.has_value());
      const Circuit trial_circuit = detail::with_structure(state.circuit, s, *warm);
      SweepObjective obj(state, cand, trial_circuit);
      EXPECT_LT(obj.cost(trial_circuit.params()), 1e-20);

      const std::vector<std::vector<double>> starts{*warm};
      const auto out = instantiate(state, cand, s, cfg, rng, starts);
      ASSERT_TRUE(out.success);
      EXPECT_LT(out.cost, cfg.eps_elem * cfg.eps_elem * static_cast<double>(obj.term_count()));
      EXPECT_EQ(state.zeroed.size(), zeroed_before + 1);
      zeroed_before = state.zeroed.size();
    }
    const Matrix v = state.working();
    for (Eigen::Index r = 1; r < 3; ++r) EXPECT_LT(std::abs(v(r, r) - 1.0), 1e-9);
  }
}

TEST(Unguided, SmallTargets) {
  const auto id = unguided_baseline(UnitaryMatrix::identity(2), sx());
  EXPECT_EQ(id.pulse_count, 0);

  const UnitaryMatrix u = haar_random(2, 8);
  const auto r = unguided_baseline(u, sx());
  EXPECT_LE(r.pulse_count, 2);
  EXPECT_LE(distance(u.matrix(), circuit_matrix(r.circuit)), 1e-8);
}

TEST(Unguided, ExpandsMoreNodesThanGuidedSearch) {
  const UnitaryMatrix u = haar_random(3, 13);
  const auto guided = qsweep_synthesize(u, sx());
  const auto unguided = unguided_baseline(u, sx());
  EXPECT_GT(unguided.node_expansions, guided.node_expansions);
  EXPECT_LE(distance(u.matrix(), circuit_matrix(unguided.circuit)), 1e-8);
}

TEST(Unguided, Guards) {
  EXPECT_THROW(unguided_baseline(haar_random(4, 1), sx()), Error);
  InstantiationConfig tiny;
  tiny.max_nodes = 3;
  try {
    unguided_baseline(haar_random(3, 2), sx(), tiny);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Timeout);
  }
}

TEST(LevenbergMarquardt, SolvesSmallLeastSquares) {
  // Rosenbrock residuals (1 - x, 10 (y - x^2)) with minimum at (1, 1).
  auto eval = [](const RealVector& x, RealVector& r, RealMatrix* j) {
    r.resize(2);
    r << 1 - x(0), 10 * (x(1) - x(0) * x(0));
    if (j) {
      j->resize(2, 2);
      *j << -1, 0, -20 * x(0), 10;
    }
  };
  LmOptions opts;
  opts.max_iterations = 200;
  opts.target_cost = 1e-24;
  const auto res = levenberg_marquardt(eval, {-1.2, 1.0}, opts);
  EXPECT_NEAR(res.params[0], 1.0, 1e-8);
  EXPECT_NEAR(res.params[1], 1.0, 1e-8);
}

}  // namespace
}  // namespace qsynth
