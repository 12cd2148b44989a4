#pragma once

#include <Eigen/Dense>

#include <complex>
#include <limits>

#include "sparsix/errors.hpp"

namespace sparsix {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// The universal value type: dense complex matrices. Real problems use the
/// same type with exactly-zero imaginary parts; the numeric kernels detect
/// that and run in real arithmetic internally.
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

using BoolArray = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;
using BoolVectorArray = Eigen::Array<bool, Eigen::Dynamic, 1>;

inline bool is_finite(const Matrix& a) { return a.allFinite(); }

/// True when every imaginary part is exactly zero.
inline bool is_real(const Matrix& a) {
  return (a.imag().array() == 0.0).all();
}

/// Count of entries that are exactly nonzero.
inline Index nnz_exact(const Matrix& a) {
  return (a.array() != Complex(0.0, 0.0)).count();
}

/// Default relative rank-truncation tolerance: max(m, n) * machine epsilon.
inline double default_rank_tol(Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

inline double default_rank_tol(const Matrix& a) {
  return default_rank_tol(a.rows(), a.cols());
}

namespace detail {

template <class Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
inline Matrix to_complex(const Mat<Scalar>& m) {
  return m.template cast<Complex>();
}

inline void require_finite(const Matrix& a, const char* who) {
  if (!is_finite(a)) {
    throw invalid_input_error(std::string(who) +
                              ": input contains NaN or Inf entries");
  }
}

}  // namespace detail

}  // namespace sparsix
