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

#include <cmath>
#include <complex>
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>

#include "qsynth/errors.hpp"

namespace qsynth {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kPi = std::numbers::pi;

/// Construction-time unitarity tolerance (max elementwise |M^dag M - I|).
inline constexpr double kUnitaryTol = 1e-12;

/// Principal argument in (-pi, pi]; phase(0) = 0.
inline double phase(Complex z) {
  if (z == Complex{0.0, 0.0}) return 0.0;
  const double a = std::arg(z);
  return a == -kPi ? kPi : a;  // a signed-zero imaginary part gives -pi

}

/// Max absolute elementwise deviation of M^dag M from the identity.
inline double unitarity_error(const Matrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorKind::Dimension, "matrix is not square");
  const Matrix gram = m.adjoint() * m;
  return (gram - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

inline bool is_unitary(const Matrix& m, double tol = kUnitaryTol) {
  return unitarity_error(m) <= tol;
}

/// A certified d x d unitary, d >= 2. Immutable once built.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix m, double tol = kUnitaryTol) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw Error(ErrorKind::Dimension, "unitary must be square");
    if (m_.rows() < 2)
      throw Error(ErrorKind::Dimension, "unitary dimension must be >= 2");
    const double err = unitarity_error(m_);
    if (!(err <= tol))
      throw Error(ErrorKind::NotUnitary,
                  "matrix is not unitary (deviation " + std::to_string(err) + ")");
  }

  static UnitaryMatrix identity(std::size_t dim) {
    return UnitaryMatrix(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                          static_cast<Eigen::Index>(dim)));
  }

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const {
    return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  }

  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }

  friend UnitaryMatrix operator*(const UnitaryMatrix& a, const UnitaryMatrix& b) {
    if (a.dim() != b.dim())
      throw Error(ErrorKind::Dimension, "dimension mismatch in product");
    // Products of certified unitaries drift by O(eps); recertify loosely.
    return UnitaryMatrix(a.m_ * b.m_, 1e-10);
  }

 private:
  Matrix m_;
};

/// Phase-invariant distance 1 - |Tr(U^dag V)| / d, in [0, 1].
inline double distance(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw Error(ErrorKind::Dimension, "distance: dimension mismatch");
  const double d = static_cast<double>(u.rows());
  const double overlap = std::abs((u.adjoint() * v).trace()) / d;
  return std::max(0.0, 1.0 - overlap);
}

inline double distance(const UnitaryMatrix& u, const UnitaryMatrix& v) {
  return distance(u.matrix(), v.matrix());
}

/// Haar-random unitary: complex Ginibre matrix, QR, then fix the phases of
/// R's diagonal so the distribution is exactly Haar.
template <class Rng>
UnitaryMatrix haar_random(std::size_t dim, Rng& rng) {
  if (dim < 2) throw Error(ErrorKind::Dimension, "haar_random: dim must be >= 2");
  const auto n = static_cast<Eigen::Index>(dim);
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix z(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) z(r, c) = Complex{normal(rng), normal(rng)};
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c) {
    const Complex diag = rmat(c, c);
    const double mag = std::abs(diag);
    q.col(c) *= mag > 0.0 ? diag / mag : Complex{1.0, 0.0};
  }
  return UnitaryMatrix(std::move(q));
}

inline UnitaryMatrix haar_random(std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return haar_random(dim, rng);
}

/// Identity(dim) with the 2x2 block `b` on levels (j, j+1).
inline Matrix embed(std::size_t dim, std::size_t j, const Matrix2& b) {
  const auto n = static_cast<Eigen::Index>(dim);
  const auto k = static_cast<Eigen::Index>(j);
  Matrix m = Matrix::Identity(n, n);
  m.block<2, 2>(k, k) = b;
  return m;
}

inline UnitaryMatrix embed_u2(std::size_t dim, std::size_t j, const Matrix2& b) {
  if (dim < 2 || j + 1 >= dim)
    throw Error(ErrorKind::Dimension, "embed_u2: level index out of range");
  if (!is_unitary(b))
    throw Error(ErrorKind::NotUnitary, "embed_u2: block is not unitary");
  return UnitaryMatrix(embed(dim, j, b));
}

/// m <- E_j(b) * m, touching only rows j, j+1.
inline void apply_left(Matrix& m, std::size_t j, const Matrix2& b) {
  const auto k = static_cast<Eigen::Index>(j);
  const Eigen::Matrix<Complex, 2, Eigen::Dynamic> rows = m.middleRows(k, 2);
  m.middleRows(k, 2).noalias() = b * rows;
}

/// m <- m * E_j(b), touching only columns j, j+1.
inline void apply_right(Matrix& m, std::size_t j, const Matrix2& b) {
  const auto k = static_cast<Eigen::Index>(j);
  const Eigen::Matrix<Complex, Eigen::Dynamic, 2> cols = m.middleCols(k, 2);
  m.middleCols(k, 2).noalias() = cols * b;
}

}  // namespace qsynth
