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
#include <chrono>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/elimination.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/optimize.hpp"
#include "qsynth/result.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth {

using Clock = std::chrono::steady_clock;

struct InstantiationConfig {
  /// Per-element success threshold.
  double eps_elem = 1e-10;
  /// Final phase-invariant distance tolerance.
  double eps_final = 1e-8;
  /// Random restarts per structure (on top of the deterministic warm starts).
  int restarts = 4;
  /// Levenberg-Marquardt iterations per solve.
  int max_iterations = 100;
  /// Max pulses appended per elimination step; defaults to the gateset bound K.
  std::optional<int> k_max;
  std::uint64_t seed = 0;
  std::optional<Clock::time_point> deadline;
  /// Node budget for the unguided baseline.
  long max_nodes = 4000;

  void validate() const {
    if (!(eps_elem > 0.0) || !(eps_elem <= eps_final))
      throw Error(ErrorKind::InvalidArgument, "need 0 < eps_elem <= eps_final");
    if (restarts < 1) throw Error(ErrorKind::InvalidArgument, "restarts must be >= 1");
    if (k_max && *k_max < 0) throw Error(ErrorKind::InvalidArgument, "k_max must be >= 0");
  }

  void check_deadline() const {
    if (deadline && Clock::now() > *deadline)
      throw Error(ErrorKind::Timeout, "synthesis deadline exceeded");
  }
};

/// One gate of a candidate structure (parameters are solved for).
struct StructureGate {
  GateKind kind;
  std::size_t subspace;
  friend bool operator==(const StructureGate&, const StructureGate&) = default;
};

using Structure = std::vector<StructureGate>;

inline int structure_pulses(const Structure& s) {
  int total = 0;
  for (const auto& g : s) total += gate_template(g.kind).pulse_cost;
  return total;
}

inline std::size_t structure_param_count(const Structure& s) {
  std::size_t total = 0;
  for (const auto& g : s) total += gate_template(g.kind).param_count;
  return total;
}

/// A cost term the next instantiation must satisfy: zero one element and,
/// when that element closes its row, pin the row's diagonal to one.
struct Candidate {
  std::optional<Target> zero;
  std::optional<std::size_t> diagonal_row;
};

inline Candidate candidate_for(Target t) {
  return {t, t.col + 1 == t.row ? std::optional<std::size_t>(t.row) : std::nullopt};
}

/// Running record of a guided elimination: V = U * W^dag is driven to the
/// identity, where W is the circuit built so far.
struct EliminationState {
  explicit EliminationState(UnitaryMatrix u) : target(std::move(u)), circuit(target.dim()) {}

  UnitaryMatrix target;
  Circuit circuit;
  std::vector<Target> zeroed;
  std::vector<std::size_t> completed_rows;

  /// Working matrix V = U * W^dag at the current parameters.
  Matrix working() const { return target.matrix() * circuit_matrix(circuit).adjoint(); }
};

/// Least-squares form of the sweep cost:
///   sum_{(r,c) in zeros} |V_rc|^2 + sum_{r in diag} |V_rr - 1|^2,  V = U W(p)^dag.
class SweepObjective {
 public:
  SweepObjective(const Matrix& u, Circuit circuit, std::vector<Target> zeros,
                 std::vector<std::size_t> diag_rows)
      : u_(u), circuit_(std::move(circuit)), zeros_(std::move(zeros)),
        diag_(std::move(diag_rows)) {}

  SweepObjective(const EliminationState& s, const Candidate& cand, const Circuit& circuit)
      : SweepObjective(s.target.matrix(), circuit, s.zeroed, s.completed_rows) {
    if (cand.zero) zeros_.push_back(*cand.zero);
    if (cand.diagonal_row) diag_.push_back(*cand.diagonal_row);
  }

  std::size_t term_count() const { return zeros_.size() + diag_.size(); }
  std::size_t param_count() const { return circuit_.params().size(); }
  const Circuit& circuit() const { return circuit_; }

  void eval(const RealVector& x, RealVector& r, RealMatrix* jac) {
    set(x);
    const Matrix w = circuit_matrix(circuit_);
    const Matrix v = u_ * w.adjoint();
    const auto m = static_cast<Eigen::Index>(2 * term_count());
    r.resize(m);
    Eigen::Index k = 0;
    for (const auto& t : zeros_) put(r, k, v(idx(t.row), idx(t.col)));
    for (auto row : diag_) put(r, k, v(idx(row), idx(row)) - Complex{1.0, 0.0});
    if (!jac) return;

    const auto grads = circuit_gradient(circuit_);
    jac->resize(m, static_cast<Eigen::Index>(grads.size()));
    for (std::size_t p = 0; p < grads.size(); ++p) {
      const auto col = static_cast<Eigen::Index>(p);
      Eigen::Index i = 0;
      for (const auto& t : zeros_) put_col(*jac, i, col, dv(grads[p], t.row, t.col));
      for (auto row : diag_) put_col(*jac, i, col, dv(grads[p], row, row));
    }
  }

  double cost(std::span<const double> params) {
    RealVector r;
    eval(to_vec(params), r, nullptr);
    return r.squaredNorm();
  }

  /// d cost / d params = 2 J^T r.
  std::vector<double> gradient(std::span<const double> params) {
    RealVector r;
    RealMatrix jac;
    eval(to_vec(params), r, &jac);
    const RealVector g = 2.0 * jac.transpose() * r;
    return {g.data(), g.data() + g.size()};
  }

 private:
  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }
  static RealVector to_vec(std::span<const double> p) {
    RealVector v(static_cast<Eigen::Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) v(idx(i)) = p[i];
    return v;
  }
  static void put(RealVector& r, Eigen::Index& k, Complex z) {
    r(k++) = z.real();
    r(k++) = z.imag();
  }
  static void put_col(RealMatrix& j, Eigen::Index& i, Eigen::Index col, Complex z) {
    j(i++, col) = z.real();
    j(i++, col) = z.imag();
  }
  // (U dW^dag)_{rc} = sum_m U_rm conj(dW_cm)
  Complex dv(const Matrix& dw, std::size_t r, std::size_t c) const {
    return (u_.row(idx(r)) * dw.row(idx(c)).adjoint())(0, 0);
  }
  void set(const RealVector& x) {
    auto& p = circuit_.params();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x(idx(i));
  }

  Matrix u_;
  Circuit circuit_;
  std::vector<Target> zeros_;
  std::vector<std::size_t> diag_;
};

/// Sweep cost of `state` plus `cand`, with the state's circuit at `params`.
inline double sweep_cost(const EliminationState& state, const Candidate& cand,
                         std::span<const double> params) {
  SweepObjective obj(state, cand, state.circuit);
  return obj.cost(params);
}

inline std::vector<double> sweep_cost_gradient(const EliminationState& state,
                                               const Candidate& cand,
                                               std::span<const double> params) {
  SweepObjective obj(state, cand, state.circuit);
  return obj.gradient(params);
}

struct InstantiationOutcome {
  bool success = false;
  double cost = 0.0;
  int solves = 0;
};

namespace detail {

inline Circuit with_structure(const Circuit& base, const Structure& s,
                              std::span<const double> new_params) {
  Circuit c = base;
  std::size_t off = 0;
  for (const auto& g : s) {
    const auto n = gate_template(g.kind).param_count;
    c.append(g.kind, g.subspace, new_params.subspan(off, n));
    off += n;
  }
  return c;
}

}  // namespace detail

/// Appends `structure` to the state's circuit and re-instantiates ALL
/// parameters against the accumulated cost terms plus `cand`. On success the
/// state advances (circuit, parameters and terms are committed).
///
/// Starting points, in order: each entry of `warm_starts` (values for the new
/// parameters), all-zero new parameters, then `cfg.restarts` uniform draws in
/// [-pi, pi]. Previously placed parameters always start from their current
/// values.
template <class Rng>
InstantiationOutcome instantiate(EliminationState& state, const Candidate& cand,
                                 const Structure& structure, const InstantiationConfig& cfg,
                                 Rng& rng,
                                 std::span<const std::vector<double>> warm_starts = {}) {
  const std::size_t n_new = structure_param_count(structure);
  std::vector<double> zeros(n_new, 0.0);
  SweepObjective obj(state, cand, detail::with_structure(state.circuit, structure, zeros));
  const double threshold = cfg.eps_elem * cfg.eps_elem * static_cast<double>(obj.term_count());

  LmOptions lm;
  lm.max_iterations = cfg.max_iterations;
  lm.target_cost = threshold * 1e-4;
  auto eval = [&obj](const RealVector& x, RealVector& r, RealMatrix* j) { obj.eval(x, r, j); };

  std::vector<std::vector<double>> starts(warm_starts.begin(), warm_starts.end());
  starts.push_back(zeros);
  if (n_new > 0) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int i = 0; i < cfg.restarts; ++i) {
      std::vector<double> p(n_new);
      for (auto& v : p) v = angle(rng);
      starts.push_back(std::move(p));
    }
  }

  InstantiationOutcome out;
  out.cost = std::numeric_limits<double>::infinity();
  const auto& old = state.circuit.params();
  for (const auto& start : starts) {
    cfg.check_deadline();
    std::vector<double> x0 = old;
    x0.insert(x0.end(), start.begin(), start.end());
    const LmResult res = levenberg_marquardt(eval, std::move(x0), lm);
    ++out.solves;
    out.cost = std::min(out.cost, res.cost);
    if (res.cost < threshold) {
      state.circuit = detail::with_structure(state.circuit, structure,
                                             std::span(res.params).subspan(old.size()));
      state.circuit.set_params(res.params);
      if (cand.zero) state.zeroed.push_back(*cand.zero);
      if (cand.diagonal_row) state.completed_rows.push_back(*cand.diagonal_row);
      out.success = true;
      out.cost = res.cost;
      return out;
    }
  }
  return out;
}

/// Candidate structures on subspace j costing exactly `pulses`: a leading
/// virtual Z, then each pulse gate followed by a virtual Z (when the gateset
/// has virtual Zs), e.g. Z, (sqrtX, Z) x k for sqrtx-virtualz.
inline std::vector<Structure> step_structures(const GateSet& gs, std::size_t j, int pulses) {
  const bool has_z = gs.allows(j, GateKind::VirtualZ);
  std::vector<GateKind> pulse_kinds;
  for (GateKind k : gs.templates(j))
    if (gate_template(k).pulse_cost > 0) pulse_kinds.push_back(k);

  std::vector<Structure> out;
  Structure head;
  if (has_z) head.push_back({GateKind::VirtualZ, j});
  if (pulses == 0) {
    if (has_z) out.push_back(head);
    return out;
  }
  // Depth-first over pulse-gate sequences with total cost == pulses.
  std::vector<std::pair<Structure, int>> stack{{head, 0}};
  while (!stack.empty()) {
    auto [s, cost] = stack.back();
    stack.pop_back();
    if (cost == pulses) {
      out.push_back(s);
      continue;
    }
    for (auto it = pulse_kinds.rbegin(); it != pulse_kinds.rend(); ++it) {
      const int c = gate_template(*it).pulse_cost;
      if (cost + c > pulses) continue;
      Structure next = s;
      next.push_back({*it, j});
      if (has_z) next.push_back({GateKind::VirtualZ, j});
      stack.push_back({std::move(next), cost + c});
    }
  }
  return out;
}

namespace detail {

/// Parameters of `structure` (a single-subspace fragment) reproducing the
/// 2x2 block `g` up to a phase. Closed forms for ZXZXZ and U2, least squares
/// otherwise.
template <class Rng>
std::optional<std::vector<double>> fit_structure(const Structure& s, const Matrix2& g,
                                                 Rng& rng) {
  const Structure zxzxz{{GateKind::VirtualZ, s.empty() ? 0 : s[0].subspace},
                        {GateKind::SqrtX, s.empty() ? 0 : s[0].subspace},
                        {GateKind::VirtualZ, s.empty() ? 0 : s[0].subspace},
                        {GateKind::SqrtX, s.empty() ? 0 : s[0].subspace},
                        {GateKind::VirtualZ, s.empty() ? 0 : s[0].subspace}};
  if (s == zxzxz) {
    const auto a = zxzxz_decompose(g);
    return std::vector<double>{a.theta3, a.theta2, a.theta1};
  }
  if (s.size() == 1 && s[0].kind == GateKind::U2) {
    const auto p = u2_decompose(g);
    return std::vector<double>{p.theta, p.phi, p.lambda};
  }

  // Generic: minimize ||block(p) - e^{i psi} g||_F over (p, psi).
  const std::size_t n = structure_param_count(s);
  auto block_of = [&s](std::span<const double> p) {
    Matrix2 m = Matrix2::Identity();
    std::size_t off = 0;
    for (const auto& gate : s) {
      const auto k = gate_template(gate.kind).param_count;
      m = gate_matrix(gate.kind, p.subspan(off, k)) * m;
      off += k;
    }
    return m;
  };
  auto residual = [&](const RealVector& x) {
    std::vector<double> p(x.data(), x.data() + n);
    const Complex e = std::polar(1.0, x(static_cast<Eigen::Index>(n)));
    const Matrix2 b = block_of(p);
    RealVector r(8);
    for (int i = 0; i < 4; ++i) {
      const Complex z = b(i / 2, i % 2) - e * g(i / 2, i % 2);
      r(2 * i) = z.real();
      r(2 * i + 1) = z.imag();
    }
    return r;
  };
  // Central differences are ample for a warm start; the sweep solve that
  // follows uses analytic gradients.
  auto eval = [&](const RealVector& x, RealVector& r, RealMatrix* jac) {
    r = residual(x);
    if (!jac) return;
    jac->resize(8, static_cast<Eigen::Index>(n + 1));
    const double h = 1e-7;
    for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(n); ++k) {
      RealVector xp = x, xm = x;
      xp(k) += h;
      xm(k) -= h;
      jac->col(k) = (residual(xp) - residual(xm)) / (2 * h);
    }
  };
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  LmOptions lm;
  lm.target_cost = 1e-26;
  lm.max_iterations = 200;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<double> x0(n + 1);
    for (auto& v : x0) v = angle(rng);
    auto res = levenberg_marquardt(eval, x0, lm);
    if (res.cost < 1e-20) return std::vector<double>(res.params.begin(), res.params.begin() + static_cast<long>(n));
  }
  return std::nullopt;
}

/// Index (within the new parameters) of the angle that rotates the phase of
/// column j+1 when the structure's last gate is a virtual Z or U2.
inline std::optional<std::size_t> column_phase_handle(const Structure& s) {
  if (s.empty()) return std::nullopt;
  const std::size_t n = structure_param_count(s);
  switch (s.back().kind) {
    case GateKind::VirtualZ: return n - 1;
    case GateKind::U2: return n - 2;  // phi of Rz(phi) Ry(theta) Rz(lambda)
    default: return std::nullopt;
  }
}

}  // namespace detail

/// New-parameter values for `structure` that realize the analytic row-by-row
/// factor for `target` from the current working matrix: the embedded block
/// B zeroes the element, so the appended gates implement B^dag (W gains
/// B^dag, V = U W^dag gains B on the right). When the target closes its row,
/// the last virtual rotation is shifted so the diagonal lands exactly on 1.
template <class Rng>
std::optional<std::vector<double>> analytic_step_params(const EliminationState& state,
                                                        Target target,
                                                        const Structure& structure, Rng& rng) {
  const Matrix v = state.working();
  const auto r = static_cast<Eigen::Index>(target.row);
  std::vector<Complex> row(state.target.dim());
  for (std::size_t k = 0; k < row.size(); ++k) row[k] = v(r, static_cast<Eigen::Index>(k));
  FactorAngles angles;
  if (std::abs(row[target.col]) > 0.0) {
    try {
      angles = rbr_factor(row, target.col);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  const Matrix2 b = elimination_block(angles);
  auto params = detail::fit_structure(structure, Matrix2(b.adjoint()), rng);
  if (!params) return std::nullopt;

  if (target.col + 1 == target.row) {
    if (auto h = detail::column_phase_handle(structure)) {
      const Circuit trial = detail::with_structure(state.circuit, structure, *params);
      const Matrix vt = state.target.matrix() * circuit_matrix(trial).adjoint();
      (*params)[*h] += 2.0 * phase(vt(r, r));
    }
  }
  return params;
}

namespace detail {

inline void finalize_with_frame(const UnitaryMatrix& u, Circuit& c, SynthesisResult& out) {
  const Matrix v = u.matrix() * circuit_matrix(c).adjoint();
  std::vector<double> phases(u.dim());
  for (std::size_t n = 0; n < u.dim(); ++n)
    phases[n] = phase(v(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  out.residual_phase = append_diagonal_as_virtual_z(c, phases);
  out.final_distance = distance(u.matrix(), circuit_matrix(c));
  out.pulse_count = c.pulse_count();
  out.circuit = std::move(c);
}

}  // namespace detail

/// Guided numerical synthesis: row-by-row elimination where each target is
/// zeroed by the cheapest structure on its own subspace, re-instantiating all
/// circuit parameters at every step.
inline SynthesisResult qsweep_synthesize(const UnitaryMatrix& u, const GateSet& gs,
                                         const InstantiationConfig& cfg = {}) {
  cfg.validate();
  const std::size_t d = u.dim();
  if (!gs.covers(d))
    throw Error(ErrorKind::UnsupportedGateSet, "gateset does not cover every subspace");
  const int k_max = cfg.k_max.value_or(gs.universality_bound());
  std::mt19937_64 rng(cfg.seed);

  EliminationState state(u);
  SynthesisResult out;
  out.engine = Engine::QSweep;

  for (const Target t : rbr_plan(d)) {
    const Candidate cand = candidate_for(t);
    bool done = false;

    // Zero-gate step: already satisfied, or reachable by re-instantiation.
    {
      ++out.node_expansions;
      SweepObjective obj(state, cand, state.circuit);
      const double threshold =
          cfg.eps_elem * cfg.eps_elem * static_cast<double>(obj.term_count());
      if (obj.cost(state.circuit.params()) < threshold) {
        if (cand.zero) state.zeroed.push_back(*cand.zero);
        if (cand.diagonal_row) state.completed_rows.push_back(*cand.diagonal_row);
        done = true;
      } else if (!state.circuit.empty()) {
        InstantiationConfig once = cfg;
        once.restarts = 1;
        done = instantiate(state, cand, {}, once, rng).success;
      }
    }

    for (int pulses = 0; !done && pulses <= k_max; ++pulses) {
      for (const Structure& s : step_structures(gs, t.col, pulses)) {
        ++out.node_expansions;
        std::vector<std::vector<double>> warm;
        if (pulses == k_max)
          if (auto p = analytic_step_params(state, t, s, rng)) warm.push_back(std::move(*p));
        if (instantiate(state, cand, s, cfg, rng, warm).success) {
          if (pulses > 0) ++out.factor_count;
          done = true;
          break;
        }
      }
    }
    if (!done)
      throw Error(ErrorKind::Instantiation,
                  "no structure up to k_max pulses eliminated element (" +
                      std::to_string(t.row) + ", " + std::to_string(t.col) + ")");
  }

  Circuit c = state.circuit;
  detail::finalize_with_frame(u, c, out);
  if (!(out.final_distance <= cfg.eps_final))
    throw Error(ErrorKind::Instantiation,
                "final distance " + std::to_string(out.final_distance) + " exceeds tolerance");
  return out;
}

// ---------------------------------------------------------------------------
// Unguided ablation
// ---------------------------------------------------------------------------

namespace detail {

/// Whole-matrix objective: residuals of U - e^{i psi} W(p), psi the last parameter.
class FullObjective {
 public:
  FullObjective(const Matrix& u, Circuit c) : u_(u), c_(std::move(c)) {}

  void eval(const RealVector& x, RealVector& r, RealMatrix* jac) {
    auto& p = c_.params();
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = x(static_cast<Eigen::Index>(i));
    const Complex e = std::polar(1.0, x(static_cast<Eigen::Index>(p.size())));
    const Matrix w = circuit_matrix(c_);
    const Matrix diff = u_ - e * w;
    const auto n = diff.size();
    r.resize(2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      r(2 * i) = diff.data()[i].real();
      r(2 * i + 1) = diff.data()[i].imag();
    }
    if (!jac) return;
    const auto grads = circuit_gradient(c_);
    jac->resize(2 * n, static_cast<Eigen::Index>(p.size() + 1));
    auto fill = [&](Eigen::Index col, const Matrix& dm) {
      for (Eigen::Index i = 0; i < n; ++i) {
        (*jac)(2 * i, col) = dm.data()[i].real();
        (*jac)(2 * i + 1, col) = dm.data()[i].imag();
      }
    };
    for (std::size_t k = 0; k < grads.size(); ++k)
      fill(static_cast<Eigen::Index>(k), -e * grads[k]);
    fill(static_cast<Eigen::Index>(p.size()), -Complex{0, 1} * e * w);
  }

 private:
  Matrix u_;
  Circuit c_;
};

}  // namespace detail

/// All-at-once breadth-first structure search (ablation for d <= 3): nodes
/// are pulse sequences over every subspace, each pulse followed by a full
/// virtual-Z layer, instantiated against the whole target.
inline SynthesisResult unguided_baseline(const UnitaryMatrix& u, const GateSet& gs,
                                         const InstantiationConfig& cfg = {}) {
  cfg.validate();
  const std::size_t d = u.dim();
  if (d > 3) throw Error(ErrorKind::InvalidArgument, "unguided baseline is limited to d <= 3");
  if (!gs.covers(d))
    throw Error(ErrorKind::UnsupportedGateSet, "gateset does not cover every subspace");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  auto z_layer = [&](Structure& s) {
    for (std::size_t j = 0; j + 1 < d; ++j)
      if (gs.allows(j, GateKind::VirtualZ)) s.push_back({GateKind::VirtualZ, j});
  };
  std::vector<StructureGate> moves;
  for (std::size_t j = 0; j + 1 < d; ++j)
    for (GateKind k : gs.templates(j))
      if (gate_template(k).pulse_cost > 0) moves.push_back({k, j});

  Structure root;
  z_layer(root);
  std::vector<Structure> frontier{root};
  SynthesisResult out;
  out.engine = Engine::Unguided;

  LmOptions lm;
  lm.max_iterations = cfg.max_iterations;
  lm.target_cost = 1e-20;

  while (true) {
    std::vector<Structure> next;
    for (const Structure& s : frontier) {
      cfg.check_deadline();
      if (out.node_expansions >= cfg.max_nodes)
        throw Error(ErrorKind::Timeout, "unguided search budget exceeded");
      ++out.node_expansions;
      const std::size_t n = structure_param_count(s);
      Circuit c = detail::with_structure(Circuit(d), s, std::vector<double>(n, 0.0));
      detail::FullObjective obj(u.matrix(), c);
      auto eval = [&obj](const RealVector& x, RealVector& r, RealMatrix* j) { obj.eval(x, r, j); };
      for (int attempt = 0; attempt <= cfg.restarts; ++attempt) {
        std::vector<double> x0(n + 1, 0.0);
        if (attempt > 0)
          for (auto& v : x0) v = angle(rng);
        const LmResult res = levenberg_marquardt(eval, x0, lm);
        std::vector<double> p(res.params.begin(), res.params.begin() + static_cast<long>(n));
        c.set_params(p);
        if (distance(u.matrix(), circuit_matrix(c)) <= cfg.eps_final) {
          out.factor_count = 0;
          detail::finalize_with_frame(u, c, out);
          return out;
        }
      }
      for (const auto& m : moves) {
        Structure child = s;
        child.push_back(m);
        z_layer(child);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
}

}  // namespace qsynth
