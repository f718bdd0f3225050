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

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/result.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth::io {

using json = nlohmann::json;

/// Doubles as 17 significant digits so every value round-trips exactly.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s(buf);
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

namespace detail {

inline void write(std::ostringstream& os, const json& j, int indent, int level) {
  const std::string pad(static_cast<std::size_t>(indent * (level + 1)), ' ');
  const std::string close(static_cast<std::size_t>(indent * level), ' ');
  const char* nl = indent > 0 ? "\n" : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) { os << "{}"; return; }
      os << '{' << nl;
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ',' << nl;
        first = false;
        os << pad << json(it.key()).dump() << (indent > 0 ? ": " : ":");
        write(os, it.value(), indent, level + 1);
      }
      os << nl << close << '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) { os << "[]"; return; }
      // Numeric leaves stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const json& e) {
        return e.is_number() || (e.is_array() && std::all_of(e.begin(), e.end(),
                                                             [](const json& f) { return f.is_number(); }));
      });
      const char* sep = indent > 0 ? ", " : ",";
      os << '[';
      bool first = true;
      for (const auto& e : j) {
        if (flat) {
          if (!first) os << sep;
        } else {
          os << (first ? "" : ",") << nl << pad;
        }
        first = false;
        write(os, e, indent, level + 1);
      }
      if (!flat) os << nl << close;
      os << ']';
      return;
    }
    case json::value_t::number_float: os << format_double(j.get<double>()); return;
    default: os << j.dump(); return;
  }
}

}  // namespace detail

inline std::string dump(const json& j, int indent = 2) {
  std::ostringstream os;
  detail::write(os, j, indent, 0);
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Unitary: {"dim": d, "matrix": [[[re, im], ...], ...]}
// ---------------------------------------------------------------------------

inline json to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.rows()}, {"matrix", std::move(rows)}};
}

inline json to_json(const UnitaryMatrix& u) { return to_json(u.matrix()); }

/// Parses the unitary format; structural problems raise ErrorKind::Parse.
inline Matrix matrix_from_json(const json& j) {
  try {
    const auto d = j.at("dim").get<long>();
    const auto& rows = j.at("matrix");
    if (d < 1 || !rows.is_array() || static_cast<long>(rows.size()) != d)
      throw Error(ErrorKind::Parse, "matrix must have dim rows");
    Matrix m(d, d);
    for (long r = 0; r < d; ++r) {
      const auto& row = rows.at(static_cast<std::size_t>(r));
      if (!row.is_array() || static_cast<long>(row.size()) != d)
        throw Error(ErrorKind::Parse, "each row must have dim entries");
      for (long c = 0; c < d; ++c) {
        const auto& e = row.at(static_cast<std::size_t>(c));
        if (!e.is_array() || e.size() != 2)
          throw Error(ErrorKind::Parse, "entries must be [re, im] pairs");
        m(r, c) = Complex{e.at(0).get<double>(), e.at(1).get<double>()};
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("unitary json: ") + e.what());
  }
}

inline UnitaryMatrix unitary_from_json(const json& j, double tol = kUnitaryTol) {
  return UnitaryMatrix(matrix_from_json(j), tol);
}

// ---------------------------------------------------------------------------
// Gateset: {"name": ...} or {"subspaces": [{"j": 0, "gates": ["z", "sx"]}], "universality_bound": 2}
// ---------------------------------------------------------------------------

inline GateSet gateset_from_json(const json& j) {
  try {
    if (j.contains("name") && !j.contains("subspaces"))
      return builtin_gateset(j.at("name").get<std::string>());
    std::map<std::size_t, std::vector<GateKind>> per;
    for (const auto& s : j.at("subspaces")) {
      std::vector<GateKind> kinds;
      for (const auto& g : s.at("gates")) {
        const auto name = g.get<std::string>();
        const auto kind = gate_kind_from_name(name);
        if (!kind) throw Error(ErrorKind::Parse, "unknown gate '" + name + "'");
        kinds.push_back(*kind);
      }
      per[s.at("j").get<std::size_t>()] = std::move(kinds);
    }
    return GateSet(j.value("name", std::string("custom")), std::move(per),
                   j.value("universality_bound", 2));
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("gateset json: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Circuits and results
// ---------------------------------------------------------------------------

inline json to_json(const Circuit& c) {
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json params = json::array();
    for (double p : c.gate_params(g)) params.push_back(p);
    gates.push_back({{"gate", std::string(gate_template(g.kind).name)},
                     {"subspace", g.subspace},
                     {"params", std::move(params)}});
  }
  return {{"dim", c.dim()}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const json& j) {
  try {
    Circuit c(j.at("dim").get<std::size_t>());
    for (const auto& g : j.at("gates")) {
      const auto kind = gate_kind_from_name(g.at("gate").get<std::string>());
      if (!kind) throw Error(ErrorKind::Parse, "unknown gate in circuit");
      const auto params = g.at("params").get<std::vector<double>>();
      c.append(*kind, g.at("subspace").get<std::size_t>(), params);
    }
    return c;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("circuit json: ") + e.what());
  }
}

inline json to_json(const SynthesisResult& r) {
  return {{"engine", to_string(r.engine)},
          {"dim", r.circuit.dim()},
          {"pulse_count", r.pulse_count},
          {"factor_count", r.factor_count},
          {"final_distance", r.final_distance},
          {"residual_phase", r.residual_phase},
          {"wall_time", r.wall_time},
          {"node_expansions", r.node_expansions},
          {"circuit", to_json(r.circuit)}};
}

}  // namespace qsynth::io
