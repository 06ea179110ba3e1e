#pragma once

#include <cmath>
#include <cstddef>

#include "twobc/twobc.hpp"

namespace twobc::testing {

inline StateVector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Eigen::Index>(amps.size()));
  Eigen::Index i = 0;
  for (const auto& a : amps) v(i++) = a;
  return StateVector::normalized(std::move(v));
}

inline StateVector plus() { return ket({1.0, 1.0}); }

inline Matrix diag(std::initializer_list<double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  Matrix m = Matrix::Zero(n, n);
  Eigen::Index i = 0;
  for (double v : values) {
    m(i, i) = v;
    ++i;
  }
  return m;
}

inline Matrix identity(std::size_t n) {
  return Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
}

inline Matrix random_matrix(std::size_t n, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(n);
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) m(i, j) = rng.complex_normal();
  return m;
}

/// Kronecker product by explicit index arithmetic, independent of twobc::kron.
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j)
      out(i, j) = a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
  return out;
}

}  // namespace twobc::testing
