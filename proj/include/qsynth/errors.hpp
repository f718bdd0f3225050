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

#include <stdexcept>
#include <string>

namespace qsynth {

/// Machine-readable failure categories. The CLI maps these onto exit codes.
enum class ErrorKind {
  Dimension,
  NotUnitary,
  Degenerate,
  InconsistentRow,
  UnknownGateSet,
  UnsupportedGateSet,
  Instantiation,
  Timeout,
  Parse,
  InvalidArgument,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::NotUnitary: return "not-unitary";
    case ErrorKind::Degenerate: return "numerical-degeneracy";
    case ErrorKind::InconsistentRow: return "inconsistent-row";
    case ErrorKind::UnknownGateSet: return "unknown-gateset";
    case ErrorKind::UnsupportedGateSet: return "unsupported-gateset";
    case ErrorKind::Instantiation: return "instantiation-failure";
    case ErrorKind::Timeout: return "timeout";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::InvalidArgument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qsynth
