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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace qsynth {

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

struct LmOptions {
  int max_iterations = 100;
  /// Stop as soon as the cost falls to or below this value.
  double target_cost = 0.0;
  /// Give up after this many accepted steps that each shrink the cost by
  /// less than `stall_ratio`.
  int stall_iterations = 6;
  double stall_ratio = 1e-3;
};

struct LmResult {
  std::vector<double> params;
  double cost = std::numeric_limits<double>::infinity();
  int iterations = 0;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) on cost = ||r(x)||^2.
///
/// `eval(x, r, J)` fills the residual vector r and, when J is non-null, the
/// Jacobian dr/dx. Works for any residual/parameter count, including
/// over-parameterized problems where J^T J is singular.
template <class Eval>
LmResult levenberg_marquardt(Eval&& eval, std::vector<double> x0, const LmOptions& opts) {
  const auto n = static_cast<Eigen::Index>(x0.size());
  RealVector x = Eigen::Map<RealVector>(x0.data(), n);
  RealVector r;
  RealMatrix jac;
  eval(x, r, &jac);
  double cost = r.squaredNorm();

  LmResult out;
  if (n == 0 || cost <= opts.target_cost) {
    out.params = std::move(x0);
    out.cost = cost;
    return out;
  }

  RealMatrix a = jac.transpose() * jac;
  RealVector g = jac.transpose() * r;
  double lambda = 1e-3 * std::max(1e-12, a.diagonal().maxCoeff());
  int stalled = 0;
  RealVector r_new;

  int it = 0;
  for (; it < opts.max_iterations && cost > opts.target_cost; ++it) {
    RealMatrix damped = a;
    damped.diagonal().array() += lambda;
    const RealVector step = damped.ldlt().solve(-g);
    if (!step.allFinite()) break;
    const RealVector x_new = x + step;
    eval(x_new, r_new, nullptr);
    const double cost_new = r_new.squaredNorm();
    if (cost_new < cost) {
      stalled = (cost - cost_new) < opts.stall_ratio * cost ? stalled + 1 : 0;
      x = x_new;
      cost = cost_new;
      eval(x, r, &jac);
      a.noalias() = jac.transpose() * jac;
      g.noalias() = jac.transpose() * r;
      lambda = std::max(lambda / 3.0, 1e-15);
      if (stalled >= opts.stall_iterations) {
        ++it;
        break;
      }
    } else {
      lambda *= 4.0;
      if (lambda > 1e12 || step.norm() < 1e-15 * (1.0 + x.norm())) {
        ++it;
        break;
      }
    }
  }

  out.params.assign(x.data(), x.data() + n);
  out.cost = cost;
  out.iterations = it;
  return out;
}

}  // namespace qsynth
