#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <optional>
#include <vector>

#include "sparsix/types.hpp"

namespace sparsix {

/// Rank-revealing SVD partition of a matrix A = [U1 U2] diag(sigma, 0) [V1 V2]^H.
///
/// U1 (m x r) and V1 (n x r) span the range of A and A^H; U2 (m x pL) and
/// V2 (n x pR) span the left and right null-spaces. sigma holds the r
/// singular values above the relative truncation threshold, non-increasing.
struct SpectralData {
  Matrix u1, u2;
  Matrix v1, v2;
  RealVector sigma;
  Index rank = 0;
  double rank_tol = 0.0;
  std::optional<double> kappa;  // sigma[0]/sigma[r-1]; empty when rank == 0

  Index rows() const { return u1.rows(); }
  Index cols() const { return v1.rows(); }
  Index left_nullity() const { return u2.cols(); }
  Index right_nullity() const { return v2.cols(); }
};

namespace detail {

template <class Scalar>
struct TypedSpectral {
  Mat<Scalar> u1, u2, v1, v2;
  RealVector sigma;
  Index rank = 0;
  double rank_tol = 0.0;
};

template <class Scalar>
TypedSpectral<Scalar> factorize_typed(const Mat<Scalar>& a, double rank_tol) {
  Eigen::JacobiSVD<Mat<Scalar>> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& sv = svd.singularValues();
  if (!sv.allFinite()) {
    throw numeric_error(
        "factorize: SVD did not converge (non-finite singular values after "
        "Jacobi sweeps)");
  }
  const Index m = a.rows();
  const Index n = a.cols();
  const double sigma0 = sv.size() > 0 ? sv[0] : 0.0;
  Index r = 0;
  while (r < sv.size() && sv[r] > rank_tol * sigma0) ++r;

  TypedSpectral<Scalar> f;
  f.rank = r;
  f.rank_tol = rank_tol;
  f.sigma = sv.head(r);
  f.u1 = svd.matrixU().leftCols(r);
  f.u2 = svd.matrixU().rightCols(m - r);
  f.v1 = svd.matrixV().leftCols(r);
  f.v2 = svd.matrixV().rightCols(n - r);
  return f;
}

template <class Scalar>
Mat<Scalar> pseudoinverse_typed(const TypedSpectral<Scalar>& f) {
  if (f.rank == 0) return Mat<Scalar>::Zero(f.v1.rows(), f.u1.rows());
  return f.v1 * f.sigma.cwiseInverse().template cast<Scalar>().asDiagonal() *
         f.u1.adjoint();
}

template <class Scalar>
SpectralData embed_spectral(const TypedSpectral<Scalar>& f) {
  SpectralData out;
  out.u1 = to_complex<Scalar>(f.u1);
  out.u2 = to_complex<Scalar>(f.u2);
  out.v1 = to_complex<Scalar>(f.v1);
  out.v2 = to_complex<Scalar>(f.v2);
  out.sigma = f.sigma;
  out.rank = f.rank;
  out.rank_tol = f.rank_tol;
  if (f.rank > 0) out.kappa = f.sigma[0] / f.sigma[f.rank - 1];
  return out;
}

}  // namespace detail

/// Rank-revealing factorization of a. The rank is the number of singular
/// values strictly above rank_tol * sigma_max; the zero matrix has rank 0.
inline SpectralData factorize(const Matrix& a, double rank_tol) {
  detail::require_finite(a, "factorize");
  if (rank_tol < 0.0) {
    throw invalid_parameter_error("factorize: rank_tol must be >= 0");
  }
  if (is_real(a)) {
    return detail::embed_spectral(
        detail::factorize_typed<double>(a.real(), rank_tol));
  }
  return detail::embed_spectral(detail::factorize_typed<Complex>(a, rank_tol));
}

/// Moore-Penrose pseudoinverse V1 diag(1/sigma) U1^H (n x m); zero for rank 0.
inline Matrix pseudoinverse(const SpectralData& f) {
  if (f.rank == 0) return Matrix::Zero(f.cols(), f.rows());
  return f.v1 * f.sigma.cwiseInverse().cast<Complex>().asDiagonal() *
         f.u1.adjoint();
}

/// Generalized condition number sigma_max/sigma_min over the singular values
/// above the rank threshold. Undefined (throws) for the zero matrix.
inline double generalized_condition(const Matrix& a, double rank_tol) {
  SpectralData f = factorize(a, rank_tol);
  if (f.rank == 0) {
    throw invalid_input_error(
        "generalized_condition: undefined for the zero matrix");
  }
  return f.sigma[0] / f.sigma[f.rank - 1];
}

/// Eigenvalues of a square matrix with modulus above zero_tol times the
/// largest modulus, in no particular order.
inline std::vector<Complex> nonzero_eigenvalues(const Matrix& a,
                                                double zero_tol) {
  if (a.rows() != a.cols()) {
    throw shape_error("nonzero_eigenvalues: matrix must be square");
  }
  Vector ev;
  if (is_real(a)) {
    Eigen::EigenSolver<RealMatrix> es(a.real(), /*computeEigenvectors=*/false);
    ev = es.eigenvalues();
  } else {
    Eigen::ComplexEigenSolver<Matrix> es(a, /*computeEigenvectors=*/false);
    ev = es.eigenvalues();
  }
  const double max_mod = ev.size() > 0 ? ev.cwiseAbs().maxCoeff() : 0.0;
  std::vector<Complex> out;
  out.reserve(static_cast<size_t>(ev.size()));
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) > zero_tol * max_mod) out.push_back(ev[i]);
  }
  return out;
}

}  // namespace sparsix
