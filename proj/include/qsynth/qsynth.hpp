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

#include "qsynth/bench.hpp"
#include "qsynth/circuit.hpp"
#include "qsynth/elimination.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/io.hpp"
#include "qsynth/optimize.hpp"
#include "qsynth/qsweep.hpp"
#include "qsynth/qudit.hpp"
#include "qsynth/result.hpp"
#include "qsynth/synthesize.hpp"
#include "qsynth/unitary.hpp"
