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

using testing::central_difference;
using testing::pauli_x;

Circuit random_circuit(std::size_t d, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> sub(0, d - 2);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  Circuit c(d);
  for (std::size_t i = 0; i < length; ++i) {
    const auto k = static_cast<GateKind>(kind(rng));
    std::vector<double> p(gate_template(k).param_count);
    for (auto& v : p) v = angle(rng);
    c.append(k, sub(rng), p);
  }
  return c;
}

double max_gradient_error(const Circuit& c) {
  const auto grads = circuit_gradient(c);
  double worst = 0.0;
  const double h = 1e-6;
  for (std::size_t k = 0; k < c.params().size(); ++k) {
    Circuit plus = c, minus = c;
    plus.params()[k] += h;
    minus.params()[k] -= h;
    const Matrix fd = (circuit_matrix(plus) - circuit_matrix(minus)) / (2.0 * h);
    worst = std::max(worst, (fd - grads[k]).cwiseAbs().maxCoeff());
  }
  return worst;
}

TEST(Templates, CostsAndParamCounts) {
  EXPECT_EQ(gate_template(GateKind::VirtualZ).pulse_cost, 0);
  EXPECT_EQ(gate_template(GateKind::VirtualZ).param_count, 1u);
  EXPECT_EQ(gate_template(GateKind::SqrtX).pulse_cost, 1);
  EXPECT_EQ(gate_template(GateKind::SqrtX).param_count, 0u);
  EXPECT_EQ(gate_template(GateKind::Rx).pulse_cost, 1);
  EXPECT_EQ(gate_template(GateKind::U2).pulse_cost, 2);
  EXPECT_EQ(gate_template(GateKind::U2).param_count, 3u);
}

TEST(Templates, UnitaryForArbitraryParams) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> angle(-10, 10);
  for (int i = 0; i < 50; ++i) {
    const double p[3] = {angle(rng), angle(rng), angle(rng)};
    for (GateKind k : {GateKind::VirtualZ, GateKind::SqrtX, GateKind::Rx, GateKind::U2})
      EXPECT_TRUE(is_unitary(Matrix(gate_matrix(k, std::span(p, gate_template(k).param_count)))));
  }
}

TEST(Templates, RzConvention) {
  const Matrix2 z = rz(0.7);
  EXPECT_NEAR(std::abs(z(0, 0) - std::polar(1.0, -0.35)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(z(1, 1) - std::polar(1.0, 0.35)), 0.0, 1e-15);
}

TEST(CircuitUnitary, EmptyIsIdentity) {
  EXPECT_EQ(circuit_unitary(Circuit(3)).matrix(), Matrix::Identity(3, 3));
}

TEST(CircuitUnitary, SingleSqrtX) {
  Circuit c(2);
  c.append(GateKind::SqrtX, 0);
  Matrix2 expected;
  expected << Complex(1, 1), Complex(1, -1), Complex(1, -1), Complex(1, 1);
  expected *= 0.5;
  EXPECT_LT((circuit_matrix(c) - Matrix(expected)).cwiseAbs().maxCoeff(), 1e-15);
  // sqrtX squared is X.
  c.append(GateKind::SqrtX, 0);
  EXPECT_LT((circuit_matrix(c) - Matrix(pauli_x())).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CircuitUnitary, ListOrderIsApplicationOrder) {
  Circuit c(3);
  c.append(GateKind::SqrtX, 0);
  c.append(GateKind::Rx, 1, {0.3});
  const Matrix expected = embed(3, 1, rx(0.3)) * embed(3, 0, sqrt_x());
  EXPECT_LT((circuit_matrix(c) - expected).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CircuitUnitary, InversePairCancels) {
  Circuit c(3);
  c.append(GateKind::U2, 1, {0.4, -1.2, 2.5});
  c.append(GateKind::U2, 1, {-0.4, -2.5, 1.2});  // U2(t,p,l)^dag = U2(-t,-l,-p)
  EXPECT_LT(distance(Matrix::Identity(3, 3), circuit_matrix(c)), 1e-13);
}

TEST(Circuit, Validation) {
  Circuit c(3);
  EXPECT_THROW(c.append(GateKind::SqrtX, 2), Error);
  EXPECT_THROW(c.append(GateKind::VirtualZ, 0), Error);  // missing parameter
  EXPECT_THROW(c.set_params({1.0}), Error);
  EXPECT_THROW(Circuit(1), Error);
}

TEST(Circuit, PulseCountIsAdditive) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 20; ++i) {
    Circuit a = random_circuit(4, 6, rng), b = random_circuit(4, 9, rng);
    const int pa = a.pulse_count(), pb = b.pulse_count();
    a.append(b);
    EXPECT_EQ(a.pulse_count(), pa + pb);
  }
}

TEST(Gradient, EmptyCircuit) { EXPECT_TRUE(circuit_gradient(Circuit(3)).empty()); }

TEST(Gradient, SingleZMatchesFiniteDifference) {
  Circuit c(2);
  c.append(GateKind::VirtualZ, 0, {1.1});
  EXPECT_LT(max_gradient_error(c), 1e-6);
}

TEST(Gradient, RandomCircuitsMatchFiniteDifference) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> len(1, 12);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
    EXPECT_LT(max_gradient_error(random_circuit(d, len(rng), rng)), 1e-6);
  }
  EXPECT_LT(max_gradient_error(random_circuit(4, 10, rng)), 1e-6);
}

TEST(Zxzxz, IdentityAndSqrtX) {
  for (const Matrix2& b : {Matrix2(Matrix2::Identity()), sqrt_x(), pauli_x()}) {
    const Matrix2 r = zxzxz_matrix(zxzxz_decompose(b));
    EXPECT_LT((r - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Zxzxz, HaarReconstruction) {
  std::mt19937_64 rng(100);
  for (int i = 0; i < 100; ++i) {
    const Matrix2 b = haar_random(2, rng).matrix();
    EXPECT_LT((zxzxz_matrix(zxzxz_decompose(b)) - b).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Zxzxz, RejectsNonUnitary) {
  EXPECT_THROW(zxzxz_decompose(Matrix2::Identity() * 1.5), Error);
}

TEST(GateSets, Builtins) {
  const GateSet sx = builtin_gateset("sqrtx-virtualz");
  EXPECT_EQ(sx.universality_bound(), 2);
  EXPECT_TRUE(sx.allows(0, GateKind::VirtualZ));
  EXPECT_TRUE(sx.allows(5, GateKind::SqrtX));
  EXPECT_FALSE(sx.allows(0, GateKind::U2));

  const GateSet u2 = builtin_gateset("full-u2");
  EXPECT_EQ(u2.templates(1).size(), 1u);
  EXPECT_EQ(u2.templates(1)[0], GateKind::U2);
  EXPECT_EQ(u2.universality_bound(), 2);

  EXPECT_EQ(builtin_gateset("rx-virtualz").universality_bound(), 2);
  try {
    builtin_gateset("toffoli");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownGateSet);
  }
}

TEST(GateSets, PerSubspaceCoverage) {
  const GateSet gs("partial", std::map<std::size_t, std::vector<GateKind>>{
                                  {0, {GateKind::VirtualZ, GateKind::SqrtX}}},
                   2);
  EXPECT_TRUE(gs.covers(2));
  EXPECT_FALSE(gs.covers(3));
  EXPECT_THROW(GateSet("bad", std::vector{GateKind::SqrtX}, 0), Error);
}

TEST(VirtualZFrame, WritesDiagonalUpToGlobalPhase) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (std::size_t d : {2u, 3u, 5u}) {
    std::vector<double> phases(d);
    for (auto& p : phases) p = angle(rng);
    Circuit c(d);
    const double psi = append_diagonal_as_virtual_z(c, phases);
    EXPECT_EQ(c.pulse_count(), 0);
    Matrix expected = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t n = 0; n < d; ++n)
      expected(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = std::polar(1.0, phases[n]);
    const Matrix got = std::polar(1.0, psi) * circuit_matrix(c);
    EXPECT_LT((got - expected).cwiseAbs().maxCoeff(), 1e-13);
  }
}

}  // namespace
}  // namespace qsynth
