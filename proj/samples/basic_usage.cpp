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

// Synthesizes a Haar-random qutrit unitary with each engine and prints the
// pulse counts.

#include <cstdio>

#include "qsynth/qsynth.hpp"

int main() {
  using namespace qsynth;
  const UnitaryMatrix u = haar_random(3, 2026);
  const GateSet gs = builtin_gateset("sqrtx-virtualz");
  for (Engine e : {Engine::Cbc, Engine::Rbr, Engine::QSweep}) {
    const SynthesisResult r = synthesize(e, u, gs);
    std::printf("%-7s %2d pulses  distance %.1e\n", to_string(e), r.pulse_count, r.final_distance);
  }

  // Two-qubit gates read as single-ququart unitaries are often sparse.
  const UnitaryMatrix cnot = two_qubit_suite().at("cnot");
  const SynthesisResult r = synthesize(Engine::QSweep, cnot, gs);
  std::printf("cnot    %2d pulses\n%s\n", r.pulse_count, io::dump(io::to_json(r.circuit)).c_str());
}
