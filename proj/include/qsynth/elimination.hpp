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

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qsynth/circuit.hpp"
#include "qsynth/errors.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth {

struct Target {
  std::size_t row = 0;
  std::size_t col = 0;
  friend bool operator==(const Target&, const Target&) = default;
};

/// Row-by-row order: bottom row first, left to right up to the diagonal.
inline std::vector<Target> rbr_plan(std::size_t dim) {
  std::vector<Target> plan;
  for (std::size_t r = dim; r-- > 1;)
    for (std::size_t c = 0; c < r; ++c) plan.push_back({r, c});
  return plan;
}

/// Column-by-column order: leftmost column first, bottom up to below the diagonal.
inline std::vector<Target> cbc_plan(std::size_t dim) {
  std::vector<Target> plan;
  for (std::size_t c = 0; c + 1 < dim; ++c)
    for (std::size_t r = dim; r-- > c + 1;) plan.push_back({r, c});
  return plan;
}

/// Which side of the working matrix a factor multiplies.
enum class Side { Right, Left };

struct FactorAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// B(alpha, beta, gamma) = Rz(-alpha) Ry(-beta) Rz(-gamma). For angles from
/// `rbr_factor`, [x y] B = [0 s] with s real and positive.
inline Matrix2 elimination_block(const FactorAngles& a) {
  return rz(-a.alpha) * ry(-a.beta) * rz(-a.gamma);
}

struct FactorRecord {
  std::size_t subspace = 0;
  FactorAngles angles;
  Target zeroed;
  Side side = Side::Right;

  /// The 2x2 block actually embedded at `subspace`. Left factors act on the
  /// pair (partner above, target below), so their block is P B^T P.
  Matrix2 block() const {
    const Matrix2 b = elimination_block(angles);
    if (side == Side::Right) return b;
    Matrix2 swapped;
    swapped << b(1, 1), b(0, 1), b(1, 0), b(0, 0);
    return swapped;
  }
};

inline constexpr double kZeroTol = 1e-12;
inline constexpr double kDegenerateTol = 1e-14;
inline constexpr double kClampBand = 1e-12;

namespace detail {

inline FactorAngles zeroing_angles(Complex x, Complex y, double s) {
  double ratio = std::abs(y) / s;
  if (ratio > 1.0 + kClampBand)
    throw Error(ErrorKind::InconsistentRow, "|y/s| exceeds 1: row is not normalized");
  ratio = std::min(ratio, 1.0);
  const double py = phase(y / s), pmx = phase(-x / s);
  return {py - pmx, -2.0 * std::acos(ratio), py + pmx};
}

}  // namespace detail

/// Angles of the subspace factor that zeroes row[col] against row[col + 1].
///
/// s follows s = sqrt(1 - sum |a_i|^2) over the other row entries and is used
/// for the degeneracy and consistency checks. The angles themselves use the
/// pair norm hypot(|x|, |y|), which is the same quantity for a unit row but
/// does not lose digits to cancellation when |x| and |y| are small.
inline FactorAngles rbr_factor(std::span<const Complex> row, std::size_t col) {
  if (col + 1 >= row.size())
    throw Error(ErrorKind::Dimension, "rbr_factor: column out of range");
  const Complex x = row[col], y = row[col + 1];
  double rest = 0.0;
  for (std::size_t i = 0; i < row.size(); ++i)
    if (i != col && i != col + 1) rest += std::norm(row[i]);
  const double s_row = std::sqrt(std::max(0.0, 1.0 - rest));
  if (s_row <= kDegenerateTol)
    throw Error(ErrorKind::Degenerate, "rbr_factor: remaining row norm vanishes");
  if (std::abs(y) / s_row > 1.0 + kClampBand)
    throw Error(ErrorKind::InconsistentRow, "|y/s| exceeds 1: row is not normalized");
  const double s_pair = std::hypot(std::abs(x), std::abs(y));
  if (s_pair <= kDegenerateTol)
    throw Error(ErrorKind::Degenerate, "rbr_factor: target pair vanishes");
  return detail::zeroing_angles(x, y, s_pair);
}

struct EliminationOptions {
  /// Skip targets whose magnitude is already below `zero_tol`.
  bool skip_zeros = true;
  double zero_tol = kZeroTol;
  /// Called after every plan target with the working matrix.
  std::function<void(const Matrix& working, Target target, bool emitted)> on_step;
};

/// Factors plus the diagonal left behind. With W the working matrix at the
/// end, W = diag(e^{i residual[n]}) up to round-off, where
///   Right: U * F_1 * ... * F_k = W
///   Left:  F_k * ... * F_1 * U = W.
struct EliminationResult {
  std::size_t dim = 0;
  Side side = Side::Right;
  std::vector<FactorRecord> factors;
  std::vector<double> residual;

  /// Global phase left once the residual diagonal is written as virtual Zs.
  double residual_phase() const {
    double psi = 0.0;
    for (double p : residual) psi += p;
    return residual.empty() ? 0.0 : psi / static_cast<double>(residual.size());
  }
};

namespace detail {

inline std::vector<double> diagonal_phases(const Matrix& w) {
  std::vector<double> out(static_cast<std::size_t>(w.rows()));
  for (Eigen::Index i = 0; i < w.rows(); ++i) out[static_cast<std::size_t>(i)] = phase(w(i, i));
  return out;
}

}  // namespace detail

/// Row-by-row elimination with factors applied on the right of the target.
inline EliminationResult rbr_synthesize(const UnitaryMatrix& u,
                                        const EliminationOptions& opts = {}) {
  const std::size_t d = u.dim();
  Matrix w = u.matrix();
  EliminationResult res{d, Side::Right, {}, {}};
  std::vector<Complex> row(d);
  for (const Target t : rbr_plan(d)) {
    const auto r = static_cast<Eigen::Index>(t.row);
    const auto c = static_cast<Eigen::Index>(t.col);
    bool emitted = false;
    if (!(opts.skip_zeros && std::abs(w(r, c)) < opts.zero_tol)) {
      for (std::size_t k = 0; k < d; ++k) row[k] = w(r, static_cast<Eigen::Index>(k));
      FactorRecord f{t.col, rbr_factor(row, t.col), t, Side::Right};
      apply_right(w, t.col, f.block());
      res.factors.push_back(f);
      emitted = true;
    }
    if (opts.on_step) opts.on_step(w, t, emitted);
  }
  res.residual = detail::diagonal_phases(w);
  return res;
}

/// Column-by-column elimination: zeroes column c from the bottom up with
/// adjacent-row factors applied on the left. Non-adaptive unless
/// `opts.skip_zeros` is set: every plan target emits a factor, already-zero
/// targets the identity block.
inline EliminationResult cbc_synthesize(const UnitaryMatrix& u, const EliminationOptions& opts) {
  const std::size_t d = u.dim();
  Matrix w = u.matrix();
  EliminationResult res{d, Side::Left, {}, {}};
  for (const Target t : cbc_plan(d)) {
    const auto r = static_cast<Eigen::Index>(t.row);
    const auto c = static_cast<Eigen::Index>(t.col);
    const Complex x = w(r, c), y = w(r - 1, c);
    const bool is_zero = std::abs(x) < opts.zero_tol;
    bool emitted = false;
    if (!(opts.skip_zeros && is_zero)) {
      FactorAngles angles;
      if (!is_zero) {
        // Column remainder below row r-1 is already zero; the rest of the
        // column above is the a_i set.
        double rest = 0.0;
        for (Eigen::Index i = 0; i < r - 1; ++i) rest += std::norm(w(i, c));
        const double s_col = std::sqrt(std::max(0.0, 1.0 - rest));
        if (s_col <= kDegenerateTol)
          throw Error(ErrorKind::Degenerate, "cbc: remaining column norm vanishes");
        if (std::abs(y) / s_col > 1.0 + kClampBand)
          throw Error(ErrorKind::InconsistentRow, "cbc: column is not normalized");
        angles = detail::zeroing_angles(x, y, std::hypot(std::abs(x), std::abs(y)));
      }
      FactorRecord f{t.row - 1, angles, t, Side::Left};
      apply_left(w, t.row - 1, f.block());
      res.factors.push_back(f);
      emitted = true;
    }
    if (opts.on_step) opts.on_step(w, t, emitted);
  }
  res.residual = detail::diagonal_phases(w);
  return res;
}

inline EliminationResult cbc_synthesize(const UnitaryMatrix& u) {
  EliminationOptions opts;
  opts.skip_zeros = false;
  return cbc_synthesize(u, opts);
}

/// Gateset circuit implementing the target up to `global_phase`:
/// U = e^{i global_phase} * circuit_unitary(circuit).
struct GateSetCircuit {
  Circuit circuit;
  double global_phase = 0.0;
};

/// Exact SU(2)-aware U2 parameters: b = e^{i phase} Rz(phi) Ry(theta) Rz(lambda).
struct U2Params {
  double theta = 0.0, phi = 0.0, lambda = 0.0, phase = 0.0;
};

inline U2Params u2_decompose(const Matrix2& b) {
  // Remove the determinant phase first so the block is in SU(2).
  const double half_det = phase(b.determinant()) / 2.0;
  const Matrix2 su = b * std::polar(1.0, -half_det);
  U2Params p;
  p.theta = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
  const double sum = std::abs(su(0, 0)) > 0.0 ? -2.0 * phase(su(0, 0)) : 2.0 * phase(su(1, 1));
  const double diff = std::abs(su(1, 0)) > 0.0 ? 2.0 * phase(su(1, 0)) : -2.0 * phase(-su(0, 1));
  p.phi = (sum + diff) / 2.0;
  p.lambda = (sum - diff) / 2.0;
  const Matrix2 r = u2(p.theta, p.phi, p.lambda);
  p.phase = phase((r.adjoint() * b).trace());
  return p;
}

namespace detail {

enum class BlockForm { Zxzxz, U2 };

inline BlockForm block_form_for(const GateSet& gs, std::size_t dim) {
  bool zx = true, full = true;
  for (std::size_t j = 0; j + 1 < dim; ++j) {
    zx = zx && gs.allows(j, GateKind::VirtualZ) && gs.allows(j, GateKind::SqrtX);
    full = full && gs.allows(j, GateKind::U2);
  }
  if (zx) return BlockForm::Zxzxz;
  if (full) return BlockForm::U2;
  throw Error(ErrorKind::UnsupportedGateSet,
              "analytic engines need sqrtx-virtualz or full-u2 on every subspace");
}

/// Appends `block` on subspace j in gateset form, returning the dropped phase.
inline double append_block(Circuit& c, std::size_t j, const Matrix2& block, BlockForm form) {
  if (form == BlockForm::Zxzxz) {
    const ZxzxzAngles a = zxzxz_decompose(block);
    c.append(GateKind::VirtualZ, j, {a.theta3});
    c.append(GateKind::SqrtX, j);
    c.append(GateKind::VirtualZ, j, {a.theta2});
    c.append(GateKind::SqrtX, j);
    c.append(GateKind::VirtualZ, j, {a.theta1});
    return a.phase;
  }
  const U2Params p = u2_decompose(block);
  c.append(GateKind::U2, j, {p.theta, p.phi, p.lambda});
  return p.phase;
}

}  // namespace detail

/// Converts elimination factors into an executable circuit. Each factor costs
/// exactly two pulses. Block phases are tracked in a diagonal frame that is
/// pushed to the end and emitted as zero-cost virtual Zs.
inline GateSetCircuit factors_to_circuit(const EliminationResult& res, const GateSet& gs) {
  const std::size_t d = res.dim;
  const auto form = detail::block_form_for(gs, d);
  GateSetCircuit out{Circuit(d), 0.0};
  std::vector<double> frame(d, 0.0);

  // Blocks in application order (first gate first).
  std::vector<FactorRecord const*> order;
  if (res.side == Side::Right) {
    // U = W F_k^dag ... F_1^dag: F_1^dag acts first, W last.
    for (const auto& f : res.factors) order.push_back(&f);
  } else {
    // U = F_1^dag ... F_k^dag W: W acts first, then F_k^dag ... F_1^dag.
    frame = res.residual;
    for (auto it = res.factors.rbegin(); it != res.factors.rend(); ++it) order.push_back(&*it);
  }

  for (const FactorRecord* f : order) {
    const std::size_t j = f->subspace;
    const Matrix2 inv = f->block().adjoint();
    // Conjugate into the current frame: b' = F^-1 b F restricted to (j, j+1).
    Matrix2 local = inv;
    local(0, 1) *= std::polar(1.0, frame[j + 1] - frame[j]);
    local(1, 0) *= std::polar(1.0, frame[j] - frame[j + 1]);
    const double dropped = detail::append_block(out.circuit, j, local, form);
    frame[j] += dropped;
    frame[j + 1] += dropped;
  }
  if (res.side == Side::Right)
    for (std::size_t n = 0; n < d; ++n) frame[n] += res.residual[n];

  out.global_phase = append_diagonal_as_virtual_z(out.circuit, frame);
  return out;
}

}  // namespace qsynth
