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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/errors.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth {

// ---------------------------------------------------------------------------
// Subspace gate templates
// ---------------------------------------------------------------------------

enum class GateKind { VirtualZ, SqrtX, Rx, U2 };

struct GateTemplate {
  GateKind kind;
  std::size_t param_count;
  int pulse_cost;
  std::string_view name;
};

inline constexpr GateTemplate kTemplates[] = {
    {GateKind::VirtualZ, 1, 0, "z"},
    {GateKind::SqrtX, 0, 1, "sx"},
    {GateKind::Rx, 1, 1, "rx"},
    {GateKind::U2, 3, 2, "u2"},
};

inline const GateTemplate& gate_template(GateKind kind) {
  return kTemplates[static_cast<std::size_t>(kind)];
}

inline std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto& t : kTemplates)
    if (t.name == name) return t.kind;
  return std::nullopt;
}

inline Matrix2 rz(double theta) {
  Matrix2 m = Matrix2::Zero();
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

inline Matrix2 ry(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2 m;
  m << c, -s, s, c;
  return m;
}

inline Matrix2 rx(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  Matrix2 m;
  m << Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0};
  return m;
}

/// sqrt(X) = 1/2 [[1+i, 1-i], [1-i, 1+i]].
inline Matrix2 sqrt_x() {
  Matrix2 m;
  m << Complex{0.5, 0.5}, Complex{0.5, -0.5}, Complex{0.5, -0.5}, Complex{0.5, 0.5};
  return m;
}

/// U2(theta, phi, lambda) = Rz(phi) Ry(theta) Rz(lambda).
inline Matrix2 u2(double theta, double phi, double lambda) {
  return rz(phi) * ry(theta) * rz(lambda);
}

inline Matrix2 gate_matrix(GateKind kind, std::span<const double> p) {
  switch (kind) {
    case GateKind::VirtualZ: return rz(p[0]);
    case GateKind::SqrtX: return sqrt_x();
    case GateKind::Rx: return rx(p[0]);
    case GateKind::U2: return u2(p[0], p[1], p[2]);
  }
  return Matrix2::Identity();
}

/// d(gate)/d(p[k]).
inline Matrix2 gate_derivative(GateKind kind, std::span<const double> p, std::size_t k) {
  const Complex half_i{0.0, 0.5};
  const Matrix2 dz_gen = (Matrix2() << -half_i, 0, 0, half_i).finished();
  switch (kind) {
    case GateKind::VirtualZ: return dz_gen * rz(p[0]);
    case GateKind::SqrtX: return Matrix2::Zero();
    case GateKind::Rx: {
      const double c = std::cos(p[0] / 2), s = std::sin(p[0] / 2);
      Matrix2 m;
      m << Complex{-s / 2, 0}, Complex{0, -c / 2}, Complex{0, -c / 2}, Complex{-s / 2, 0};
      return m;
    }
    case GateKind::U2: {
      const double theta = p[0], phi = p[1], lambda = p[2];
      if (k == 0) {
        const double c = std::cos(theta / 2), s = std::sin(theta / 2);
        Matrix2 dry;
        dry << -s / 2, -c / 2, c / 2, -s / 2;
        return rz(phi) * dry * rz(lambda);
      }
      if (k == 1) return dz_gen * u2(theta, phi, lambda);
      return u2(theta, phi, lambda) * dz_gen;
    }
  }
  return Matrix2::Zero();
}

// ---------------------------------------------------------------------------
// Circuits
// ---------------------------------------------------------------------------

struct GateInstance {
  GateKind kind;
  std::size_t subspace;      // acts on levels (subspace, subspace + 1)
  std::size_t param_offset;  // into Circuit::params
};

/// Ordered gate list over a d-level qudit with one flat parameter vector.
/// Gates act on states in list order: unitary = G_last ... G_first.
class Circuit {
 public:
  explicit Circuit(std::size_t dim = 2) : dim_(dim) {
    if (dim < 2) throw Error(ErrorKind::Dimension, "circuit dimension must be >= 2");
  }

  std::size_t dim() const { return dim_; }
  const std::vector<GateInstance>& gates() const { return gates_; }
  const std::vector<double>& params() const { return params_; }
  std::vector<double>& params() { return params_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  void set_params(std::vector<double> p) {
    if (p.size() != params_.size())
      throw Error(ErrorKind::InvalidArgument, "parameter vector length mismatch");
    params_ = std::move(p);
  }

  /// Appends a gate; `init` must hold exactly the template's parameter count.
  void append(GateKind kind, std::size_t subspace, std::span<const double> init = {}) {
    if (subspace + 1 >= dim_)
      throw Error(ErrorKind::Dimension, "gate subspace out of range");
    const auto& t = gate_template(kind);
    if (init.size() != t.param_count)
      throw Error(ErrorKind::InvalidArgument, "wrong parameter count for gate");
    gates_.push_back({kind, subspace, params_.size()});
    params_.insert(params_.end(), init.begin(), init.end());
  }

  void append(GateKind kind, std::size_t subspace, std::initializer_list<double> init) {
    append(kind, subspace, std::span<const double>(init.begin(), init.size()));
  }

  void append(const Circuit& other) {
    if (other.dim_ != dim_) throw Error(ErrorKind::Dimension, "circuit dimension mismatch");
    for (const auto& g : other.gates_)
      append(g.kind, g.subspace, other.gate_params(g));
  }

  std::span<const double> gate_params(const GateInstance& g) const {
    return {params_.data() + g.param_offset, gate_template(g.kind).param_count};
  }

  Matrix2 gate_matrix(const GateInstance& g) const {
    return qsynth::gate_matrix(g.kind, gate_params(g));
  }

  int pulse_count() const {
    int total = 0;
    for (const auto& g : gates_) total += gate_template(g.kind).pulse_cost;
    return total;
  }

 private:
  std::size_t dim_;
  std::vector<GateInstance> gates_;
  std::vector<double> params_;
};

/// Raw (uncertified) product of the embedded gates; hot path for optimizers.
inline Matrix circuit_matrix(const Circuit& c) {
  const auto n = static_cast<Eigen::Index>(c.dim());
  Matrix m = Matrix::Identity(n, n);
  for (const auto& g : c.gates()) apply_left(m, g.subspace, c.gate_matrix(g));
  return m;
}

inline UnitaryMatrix circuit_unitary(const Circuit& c) {
  return UnitaryMatrix(circuit_matrix(c), 1e-10);
}

/// Partial derivatives of the circuit unitary, one per parameter, by the
/// product rule: dU/dp = (G_n ... G_{i+1}) dG_i (G_{i-1} ... G_1).
inline std::vector<Matrix> circuit_gradient(const Circuit& c) {
  const auto n = static_cast<Eigen::Index>(c.dim());
  const auto& gates = c.gates();
  std::vector<Matrix> grad(c.params().size());
  if (gates.empty()) return grad;

  std::vector<Matrix> prefix(gates.size() + 1);  // prefix[i] = G_i ... G_1
  prefix[0] = Matrix::Identity(n, n);
  for (std::size_t i = 0; i < gates.size(); ++i) {
    prefix[i + 1] = prefix[i];
    apply_left(prefix[i + 1], gates[i].subspace, c.gate_matrix(gates[i]));
  }

  Matrix suffix = Matrix::Identity(n, n);  // G_n ... G_{i+1}
  for (std::size_t i = gates.size(); i-- > 0;) {
    const auto& g = gates[i];
    const auto p = c.gate_params(g);
    for (std::size_t k = 0; k < p.size(); ++k) {
      Matrix d = prefix[i];
      Matrix tmp = Matrix::Zero(n, n);
      const Matrix2 dg = gate_derivative(g.kind, p, k);
      const auto j = static_cast<Eigen::Index>(g.subspace);
      tmp.middleRows(j, 2) = dg * d.middleRows(j, 2);
      grad[g.param_offset + k] = suffix * tmp;
    }
    apply_right(suffix, g.subspace, c.gate_matrix(g));
  }
  return grad;
}

// ---------------------------------------------------------------------------
// ZXZXZ conversion
// ---------------------------------------------------------------------------

/// B = e^{i phase} Rz(theta1) sqrtX Rz(theta2) sqrtX Rz(theta3).
struct ZxzxzAngles {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double phase = 0.0;
};

inline Matrix2 zxzxz_matrix(const ZxzxzAngles& a) {
  return std::polar(1.0, a.phase) * rz(a.theta1) * sqrt_x() * rz(a.theta2) * sqrt_x() *
         rz(a.theta3);
}

inline ZxzxzAngles zxzxz_decompose(const Matrix2& b) {
  if (!is_unitary(Matrix(b)))
    throw Error(ErrorKind::NotUnitary, "zxzxz_decompose: block is not unitary");
  // B = e^{ig} U3(theta, phi, lambda) with
  // U3 = [[cos t/2, -e^{i lambda} sin t/2], [e^{i phi} sin t/2, e^{i(phi+lambda)} cos t/2]].
  const double theta = 2.0 * std::atan2(std::abs(b(1, 0)), std::abs(b(0, 0)));
  const double a00 = phase(b(0, 0)), a10 = phase(b(1, 0));
  const double a01 = phase(-b(0, 1)), a11 = phase(b(1, 1));
  const double g =
      std::abs(b(0, 0)) >= std::abs(b(1, 0)) ? a00 : a10 + a01 - a11;
  const double phi = a10 - g;
  const double lambda = std::abs(b(1, 0)) > 0.0 ? a01 - g : a11 - a00 - phi;

  ZxzxzAngles out{phi + kPi, theta + kPi, lambda, 0.0};
  const Matrix2 r = zxzxz_matrix(out);
  out.phase = phase((r.adjoint() * b).trace());
  return out;
}

// ---------------------------------------------------------------------------
// Gatesets
// ---------------------------------------------------------------------------

/// Per-subspace allowed templates plus a universality bound K: the number of
/// pulses always sufficient for an arbitrary U(2) (up to phase) in a subspace.
class GateSet {
 public:
  GateSet() = default;
  GateSet(std::string name, std::vector<GateKind> every_subspace, int bound)
      : name_(std::move(name)), default_(std::move(every_subspace)), bound_(bound) {
    validate();
  }
  GateSet(std::string name, std::map<std::size_t, std::vector<GateKind>> per_subspace,
          int bound)
      : name_(std::move(name)), per_subspace_(std::move(per_subspace)), bound_(bound) {
    validate();
  }

  const std::string& name() const { return name_; }
  int universality_bound() const { return bound_; }

  /// Templates allowed on subspace j; empty if the gateset does not cover it.
  const std::vector<GateKind>& templates(std::size_t j) const {
    static const std::vector<GateKind> none;
    if (auto it = per_subspace_.find(j); it != per_subspace_.end()) return it->second;
    return per_subspace_.empty() ? default_ : none;
  }

  bool allows(std::size_t j, GateKind kind) const {
    const auto& t = templates(j);
    return std::find(t.begin(), t.end(), kind) != t.end();
  }

  bool covers(std::size_t dim) const {
    for (std::size_t j = 0; j + 1 < dim; ++j)
      if (templates(j).empty()) return false;
    return true;
  }

 private:
  void validate() const {
    if (bound_ < 1)
      throw Error(ErrorKind::InvalidArgument, "universality bound must be >= 1");
  }

  std::string name_;
  std::vector<GateKind> default_;
  std::map<std::size_t, std::vector<GateKind>> per_subspace_;
  int bound_ = 2;
};

inline GateSet builtin_gateset(std::string_view name) {
  if (name == "sqrtx-virtualz")
    return GateSet("sqrtx-virtualz", std::vector{GateKind::VirtualZ, GateKind::SqrtX}, 2);
  if (name == "full-u2") return GateSet("full-u2", std::vector{GateKind::U2}, 2);
  if (name == "rx-virtualz")
    return GateSet("rx-virtualz", std::vector{GateKind::VirtualZ, GateKind::Rx}, 2);
  throw Error(ErrorKind::UnknownGateSet, "unknown gateset: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Diagonal frames
// ---------------------------------------------------------------------------

/// Writes diag(e^{i phases}) as e^{i psi} * prod_j Rz_j(theta_j) and appends
/// the nonzero virtual-Z gates to `c`. Returns psi.
inline double append_diagonal_as_virtual_z(Circuit& c, std::span<const double> phases) {
  const std::size_t d = c.dim();
  double psi = 0.0;
  for (double p : phases) psi += p;
  psi /= static_cast<double>(d);
  // level n phase = (theta_{n-1} - theta_n) / 2, theta_{-1} = theta_{d-1} = 0
  double theta = 0.0;
  for (std::size_t n = 0; n + 1 < d; ++n) {
    theta -= 2.0 * (phases[n] - psi);
    const double wrapped = std::remainder(theta, 4.0 * kPi);
    if (std::abs(wrapped) > 1e-15) c.append(GateKind::VirtualZ, n, {wrapped});
  }
  return psi;
}

}  // namespace qsynth
