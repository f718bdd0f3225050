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

#include <optional>
#include <string>
#include <string_view>

#include "qsynth/circuit.hpp"
#include "qsynth/errors.hpp"

namespace qsynth {

enum class Engine { Cbc, Rbr, QSweep, Unguided };

inline const char* to_string(Engine e) {
  switch (e) {
    case Engine::Cbc: return "cbc";
    case Engine::Rbr: return "rbr";
    case Engine::QSweep: return "qsweep";
    case Engine::Unguided: return "unguided";
  }
  return "?";
}

inline Engine engine_from_name(std::string_view name) {
  if (name == "cbc") return Engine::Cbc;
  if (name == "rbr") return Engine::Rbr;
  if (name == "qsweep") return Engine::QSweep;
  if (name == "unguided") return Engine::Unguided;
  throw Error(ErrorKind::InvalidArgument, "unknown engine: " + std::string(name));
}

/// One synthesized circuit with its accounting. The target is reproduced as
/// e^{i residual_phase} * circuit_unitary(circuit).
struct SynthesisResult {
  Engine engine = Engine::Rbr;
  Circuit circuit;
  int pulse_count = 0;
  int factor_count = 0;
  double final_distance = 0.0;
  double residual_phase = 0.0;
  double wall_time = 0.0;
  /// Structure-search nodes instantiated (numerical engines only).
  long node_expansions = 0;
};

}  // namespace qsynth
