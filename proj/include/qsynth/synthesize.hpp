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

#include <chrono>
#include <cstddef>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/elimination.hpp"
#include "qsynth/qsweep.hpp"
#include "qsynth/qudit.hpp"
#include "qsynth/result.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth {

/// Distance tolerance every emitted result is re-verified against.
inline constexpr double kAnalyticTol = 1e-10;

inline double engine_tolerance(Engine e, const InstantiationConfig& cfg) {
  return (e == Engine::Cbc || e == Engine::Rbr) ? kAnalyticTol : cfg.eps_final;
}

/// Runs one engine. wall_time covers the engine call only; final_distance
/// is recomputed from the emitted circuit, independent of engine internals.
inline SynthesisResult synthesize(Engine engine, const UnitaryMatrix& u, const GateSet& gs,
                                  const InstantiationConfig& cfg = {}) {
  const auto start = std::chrono::steady_clock::now();
  SynthesisResult out;
  switch (engine) {
    case Engine::Cbc:
    case Engine::Rbr: {
      const EliminationResult elim =
          engine == Engine::Cbc ? cbc_synthesize(u) : rbr_synthesize(u);
      GateSetCircuit gc = factors_to_circuit(elim, gs);
      out.circuit = std::move(gc.circuit);
      out.residual_phase = gc.global_phase;
      out.factor_count = static_cast<int>(elim.factors.size());
      break;
    }
    case Engine::QSweep: out = qsweep_synthesize(u, gs, cfg); break;
    case Engine::Unguided: out = unguided_baseline(u, gs, cfg); break;
  }
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.engine = engine;
  out.pulse_count = out.circuit.pulse_count();
  out.final_distance = distance(u.matrix(), circuit_matrix(out.circuit));
  return out;
}

struct RBVerifyReport {
  double distance = 0.0;  // composed circuits vs identity
  int total_pulses = 0;
  double pulses_per_clifford = 0.0;  // over the m + 1 decomposed gates
  double wall_time = 0.0;
};

/// Decomposes every Clifford of the sequence and its inverse, composes the
/// circuit unitaries and measures the distance to the identity.
inline RBVerifyReport rb_verify(const RBSequence& seq, Engine engine, const GateSet& gs,
                                const InstantiationConfig& cfg = {}) {
  const std::size_t d = seq.inverse.dim();
  const auto n = static_cast<Eigen::Index>(d);
  Matrix total = Matrix::Identity(n, n);
  RBVerifyReport rep;
  std::vector<const UnitaryMatrix*> gates;
  for (const auto& c : seq.cliffords) gates.push_back(&c);
  gates.push_back(&seq.inverse);
  std::size_t k = 0;
  for (const UnitaryMatrix* g : gates) {
    InstantiationConfig local = cfg;
    local.seed = cfg.seed + 7919 * k++;
    const SynthesisResult r = synthesize(engine, *g, gs, local);
    total = circuit_matrix(r.circuit) * total;
    rep.total_pulses += r.pulse_count;
    rep.wall_time += r.wall_time;
  }
  rep.distance = distance(Matrix::Identity(n, n), total);
  rep.pulses_per_clifford = static_cast<double>(rep.total_pulses) / static_cast<double>(gates.size());
  return rep;
}

}  // namespace qsynth
