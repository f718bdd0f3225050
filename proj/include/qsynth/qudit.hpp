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

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "qsynth/errors.hpp"
#include "qsynth/unitary.hpp"

namespace qsynth {

/// Exponents of W_{x,z} = X^x Z^z.
struct WeylElement {
  int x = 0;
  int z = 0;
};

inline Complex root_of_unity(std::size_t d, long long power) {
  const long long n = static_cast<long long>(d);
  const long long k = ((power % n) + n) % n;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(k) / static_cast<double>(d));
}

/// Shift: X|n> = |n+1 mod d>.
inline UnitaryMatrix weyl_x(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::Dimension, "weyl_x: d must be >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m((k + 1) % n, k) = 1.0;
  return UnitaryMatrix(std::move(m));
}

/// Clock: Z|n> = omega^n |n>.
inline UnitaryMatrix weyl_z(std::size_t d) {
  if (d < 2) throw Error(ErrorKind::Dimension, "weyl_z: d must be >= 2");
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = root_of_unity(d, k);
  return UnitaryMatrix(std::move(m));
}

inline Matrix weyl(std::size_t d, WeylElement w) {
  Matrix m = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  const Matrix x = weyl_x(d).matrix(), z = weyl_z(d).matrix();
  for (int i = 0; i < w.x; ++i) m = m * x;
  for (int i = 0; i < w.z; ++i) m = m * z;
  return m;
}

/// Discrete Fourier gate F_{jk} = omega^{jk} / sqrt(d).
inline UnitaryMatrix fourier(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m(n, n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) m(j, k) = norm * root_of_unity(d, j * k);
  return UnitaryMatrix(std::move(m));
}

/// Generalized phase gate: diag(tau^{n^2}) with tau = e^{i pi (d+1)/d} for
/// even d, diag(omega^{n(n-1)/2}) for odd d.
inline UnitaryMatrix phase_gate(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    if (d % 2 == 0) {
      const double tau = kPi * static_cast<double>(d + 1) / static_cast<double>(d);
      m(k, k) = std::polar(1.0, tau * static_cast<double>(k * k));
    } else {
      m(k, k) = root_of_unity(d, k * (k - 1) / 2);
    }
  }
  return UnitaryMatrix(std::move(m));
}

namespace detail {

/// True iff m = c * W_{x,z} for some Weyl element and unit-modulus c.
inline bool proportional_to_weyl(const Matrix& m, double tol) {
  const std::size_t d = static_cast<std::size_t>(m.rows());
  for (int x = 0; x < static_cast<int>(d); ++x)
    for (int z = 0; z < static_cast<int>(d); ++z) {
      const Matrix w = weyl(d, {x, z});
      const Complex c = (w.adjoint() * m).trace() / static_cast<double>(d);
      if (std::abs(std::abs(c) - 1.0) > tol) continue;
      if ((m - c * w).cwiseAbs().maxCoeff() <= tol) return true;
    }
  return false;
}

}  // namespace detail

/// Clifford test: U X U^dag and U Z U^dag must both be Weyl elements up to phase.
inline bool is_clifford(const UnitaryMatrix& u, double tol = 1e-10) {
  const std::size_t d = u.dim();
  const Matrix& m = u.matrix();
  return detail::proportional_to_weyl(m * weyl_x(d).matrix() * m.adjoint(), tol) &&
         detail::proportional_to_weyl(m * weyl_z(d).matrix() * m.adjoint(), tol);
}

/// Generators for word sampling, in draw order {F, S, X, Z}.
inline std::array<UnitaryMatrix, 4> clifford_generators(std::size_t d) {
  std::array<UnitaryMatrix, 4> gens{fourier(d), phase_gate(d), weyl_x(d), weyl_z(d)};
  for (const auto& g : gens)
    if (!is_clifford(g, 1e-12))
      throw Error(ErrorKind::InvalidArgument,
                  "Clifford generator failed self-check at d = " + std::to_string(d));
  return gens;
}

inline constexpr std::size_t kDefaultWordLength = 20;

/// Product of L generators drawn uniformly from {F, S, X, Z}. Not uniform
/// over the Clifford group.
template <class Rng>
UnitaryMatrix random_clifford(std::size_t d, std::size_t word_length, Rng& rng) {
  if (d < 2 || d > 6) throw Error(ErrorKind::Dimension, "random_clifford: d must be in 2..6");
  if (word_length < 1)
    throw Error(ErrorKind::InvalidArgument, "random_clifford: word length must be >= 1");
  const auto gens = clifford_generators(d);
  std::uniform_int_distribution<int> pick(0, 3);
  Matrix m = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < word_length; ++i) m = gens[static_cast<std::size_t>(pick(rng))].matrix() * m;
  return UnitaryMatrix(std::move(m), 1e-10);
}

inline UnitaryMatrix random_clifford(std::size_t d, std::size_t word_length,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_clifford(d, word_length, rng);
}

// ---------------------------------------------------------------------------
// Two-qubit gates as ququart unitaries
// ---------------------------------------------------------------------------

enum class QubitOrdering {
  HighFirst,  // |q1 q0> -> level 2 q1 + q0
  LowFirst,   // |q1 q0> -> level 2 q0 + q1
};

/// The nine-gate suite; CY is the one the benchmark literature names, the
/// rest are standard two-qubit gates.
inline std::map<std::string, UnitaryMatrix> two_qubit_suite(
    QubitOrdering ordering = QubitOrdering::HighFirst) {
  using C = Complex;
  const C i{0, 1};
  const double r2 = 1.0 / std::sqrt(2.0);
  auto make = [](std::initializer_list<std::initializer_list<C>> rows) {
    Matrix m(4, 4);
    Eigen::Index r = 0;
    for (const auto& row : rows) {
      Eigen::Index c = 0;
      for (const auto& v : row) m(r, c++) = v;
      ++r;
    }
    return m;
  };

  std::map<std::string, Matrix> raw;
  raw["cnot"] = make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  raw["cz"] = make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
  raw["cy"] = make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, -i}, {0, 0, i, 0}});
  raw["ch"] = make({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, r2, r2}, {0, 0, r2, -r2}});
  raw["swap"] = make({{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
  raw["iswap"] = make({{1, 0, 0, 0}, {0, 0, i, 0}, {0, i, 0, 0}, {0, 0, 0, 1}});
  const C p{0.5, 0.5}, q{0.5, -0.5};
  raw["sqrt_swap"] = make({{1, 0, 0, 0}, {0, p, q, 0}, {0, q, p, 0}, {0, 0, 0, 1}});
  raw["sqrt_iswap"] =
      make({{1, 0, 0, 0}, {0, r2, i * r2, 0}, {0, i * r2, r2, 0}, {0, 0, 0, 1}});
  // XX(pi/2) = exp(-i pi/4 X (x) X) = (I - i X (x) X) / sqrt(2)
  raw["xx"] = make({{r2, 0, 0, -i * r2},
                    {0, r2, -i * r2, 0},
                    {0, -i * r2, r2, 0},
                    {-i * r2, 0, 0, r2}});

  Matrix perm = Matrix::Identity(4, 4);
  if (ordering == QubitOrdering::LowFirst) {
    perm.setZero();
    perm(0, 0) = perm(1, 2) = perm(2, 1) = perm(3, 3) = 1.0;
  }
  std::map<std::string, UnitaryMatrix> out;
  for (auto& [name, m] : raw) out.emplace(name, UnitaryMatrix(perm * m * perm.adjoint()));
  return out;
}

// ---------------------------------------------------------------------------
// Randomized-benchmarking sequences (noiseless)
// ---------------------------------------------------------------------------

struct RBSequence {
  std::size_t depth = 0;
  std::vector<UnitaryMatrix> cliffords;
  UnitaryMatrix inverse = UnitaryMatrix::identity(2);
};

/// m random Cliffords plus the inverse (C_m ... C_1)^dag.
inline RBSequence rb_sequence(std::size_t d, std::size_t depth, std::uint64_t seed,
                              std::size_t word_length = kDefaultWordLength) {
  if (d != 3 && d != 4) throw Error(ErrorKind::Dimension, "rb_sequence: d must be 3 or 4");
  if (depth < 1) throw Error(ErrorKind::InvalidArgument, "rb_sequence: depth must be >= 1");
  std::mt19937_64 rng(seed);
  RBSequence seq;
  seq.depth = depth;
  Matrix total = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t k = 0; k < depth; ++k) {
    seq.cliffords.push_back(random_clifford(d, word_length, rng));
    total = seq.cliffords.back().matrix() * total;
  }
  seq.inverse = UnitaryMatrix(total.adjoint(), 1e-10);
  return seq;
}

}  // namespace qsynth
