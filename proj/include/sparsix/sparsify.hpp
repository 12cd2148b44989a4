#pragma once

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

#include "sparsix/pattern.hpp"
#include "sparsix/spectral.hpp"
#include "sparsix/types.hpp"

namespace sparsix {

struct SparsifyParams {
  double p = 1.0;
  double q = 0.8;
  std::optional<double> rank_tol;        // default: max(m, n) * eps
  std::optional<Index> n_row_override;   // default: min(n, pR + 1)
  std::optional<Index> n_col_override;   // default: min(m, pL + 1)
  std::optional<Pattern> pattern_override;
};

/// The constrained quadratic program restricted to the free (pattern-1)
/// entries: Hermitian Hessian, right-hand side, and the null-space
/// constraint rows encoding X V2 = 0 and X^H U2 = 0.
struct KktSystem {
  std::vector<std::pair<Index, Index>> free_index_map;  // row-major order
  Matrix hessian;      // nnz x nnz
  Vector rhs;          // nnz
  Matrix constraints;  // (m*pR + n*pL) x nnz
};

struct SparsifyOutcome {
  Matrix x;
  Pattern pattern;
  double j_min = 0.0;
  double grad_residual = 0.0;
  double nullspace_residual = 0.0;
  SpectralData spectral;
};

/// Misfit J(X; A) = 1/2 ||(X - A) A+||_F^2 + 1/2 ||A+ (X - A)||_F^2.
inline double misfit(const Matrix& x, const Matrix& a, const Matrix& a_pinv) {
  if (x.rows() != a.rows() || x.cols() != a.cols()) {
    throw shape_error("misfit: x and a must have the same shape");
  }
  if (a_pinv.rows() != a.cols() || a_pinv.cols() != a.rows()) {
    throw shape_error("misfit: a_pinv must be the transpose shape of a");
  }
  const Matrix d = x - a;
  return 0.5 * (d * a_pinv).squaredNorm() + 0.5 * (a_pinv * d).squaredNorm();
}

/// Gradient of the misfit with respect to X:
/// X A+ (A+)^H + (A+)^H A+ X - 2 (A+)^H.
inline Matrix misfit_gradient(const Matrix& x, const Matrix& a_pinv) {
  if (a_pinv.rows() != x.cols() || a_pinv.cols() != x.rows()) {
    throw shape_error(
        "misfit_gradient: a_pinv must be the transpose shape of x");
  }
  return x * (a_pinv * a_pinv.adjoint()) + (a_pinv.adjoint() * a_pinv) * x -
         2.0 * a_pinv.adjoint();
}

namespace detail {

template <class Scalar>
struct TypedKkt {
  std::vector<std::pair<Index, Index>> free_index_map;
  Mat<Scalar> hessian;
  Vec<Scalar> rhs;
  Mat<Scalar> constraints;
};

template <class Scalar>
TypedKkt<Scalar> assemble_kkt_typed(const TypedSpectral<Scalar>& f,
                                    const Mat<Scalar>& a_pinv,
                                    const Pattern& z) {
  const Index m = f.u1.rows();
  const Index n = f.v1.rows();
  if (z.rows() != m || z.cols() != n) {
    throw shape_error("assemble_kkt: pattern shape does not match the matrix");
  }
  if (a_pinv.rows() != n || a_pinv.cols() != m) {
    throw shape_error("assemble_kkt: pseudoinverse has the wrong shape");
  }

  TypedKkt<Scalar> sys;
  sys.free_index_map.reserve(static_cast<size_t>(z.nnz()));
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (z(i, j)) sys.free_index_map.emplace_back(i, j);
    }
  }
  const Index nnz = static_cast<Index>(sys.free_index_map.size());

  // Restriction of the Kronecker-sum operator to the free positions:
  // H[(i,j),(k,l)] = M(l,j) delta_ik + C(i,k) delta_jl with
  // M = A+ (A+)^H and C = (A+)^H A+.
  const Mat<Scalar> big_m = a_pinv * a_pinv.adjoint();  // n x n
  const Mat<Scalar> big_c = a_pinv.adjoint() * a_pinv;  // m x m
  sys.hessian.setZero(nnz, nnz);
  for (Index a = 0; a < nnz; ++a) {
    const auto [i, j] = sys.free_index_map[static_cast<size_t>(a)];
    for (Index b = 0; b < nnz; ++b) {
      const auto [k, l] = sys.free_index_map[static_cast<size_t>(b)];
      Scalar v{};
      if (i == k) v += big_m(l, j);
      if (j == l) v += big_c(i, k);
      sys.hessian(a, b) = v;
    }
  }
  sys.rhs.resize(nnz);
  for (Index a = 0; a < nnz; ++a) {
    const auto [i, j] = sys.free_index_map[static_cast<size_t>(a)];
    sys.rhs[a] = Scalar(2.0) * Eigen::numext::conj(a_pinv(j, i));
  }

  // Null-space constraint rows restricted to the free positions. For each
  // matrix row i and right-null vector v2^k: sum_j X(i,j) V2(j,k) = 0. For
  // each matrix column j and left-null vector u2^k:
  // sum_i X(i,j) conj(U2(i,k)) = 0, the conjugate of the X^H U2 = 0
  // condition, so every constraint is linear over the scalar field.
  const Index p_r = f.v2.cols();
  const Index p_l = f.u2.cols();
  sys.constraints.setZero(m * p_r + n * p_l, nnz);
  for (Index a = 0; a < nnz; ++a) {
    const auto [i, j] = sys.free_index_map[static_cast<size_t>(a)];
    for (Index k = 0; k < p_r; ++k) {
      sys.constraints(i * p_r + k, a) = f.v2(j, k);
    }
    for (Index k = 0; k < p_l; ++k) {
      sys.constraints(m * p_r + j * p_l + k, a) =
          Eigen::numext::conj(f.u2(i, k));
    }
  }
  return sys;
}

/// Null-space method for the equality-constrained QP over the free entries.
template <class Scalar>
SparsifyOutcome solve_typed(const Mat<Scalar>& a,
                            const TypedSpectral<Scalar>& f, const Pattern& z) {
  const Index m = a.rows();
  const Index n = a.cols();
  const Mat<Scalar> a_pinv = pseudoinverse_typed(f);
  const TypedKkt<Scalar> sys = assemble_kkt_typed<Scalar>(f, a_pinv, z);
  const Index nnz = static_cast<Index>(sys.free_index_map.size());

  Mat<Scalar> x = Mat<Scalar>::Zero(m, n);
  double grad_residual = 0.0;
  if (nnz > 0) {
    // Orthonormal basis of the constraint null space; singular values below
    // 1e-12 of the largest mark redundant constraint directions.
    Mat<Scalar> basis;
    if (sys.constraints.rows() == 0) {
      basis = Mat<Scalar>::Identity(nnz, nnz);
    } else {
      Eigen::JacobiSVD<Mat<Scalar>> svd(sys.constraints, Eigen::ComputeFullV);
      const RealVector& sv = svd.singularValues();
      const double smax = sv.size() > 0 ? sv[0] : 0.0;
      Index rc = 0;
      while (rc < sv.size() && sv[rc] > 1e-12 * smax) ++rc;
      basis = svd.matrixV().rightCols(nnz - rc);
    }
    if (basis.cols() > 0) {
      const Mat<Scalar> h_red = basis.adjoint() * sys.hessian * basis;
      const Vec<Scalar> g_red = basis.adjoint() * sys.rhs;
      Eigen::LDLT<Mat<Scalar>> ldlt(h_red);
      if (ldlt.info() != Eigen::Success) {
        throw numeric_error(
            "solve_with_pattern: reduced Hessian factorization failed "
            "(positive definiteness violated; this indicates a bug)");
      }
      const Vec<Scalar> y = ldlt.solve(g_red);
      if (!y.allFinite()) {
        throw numeric_error(
            "solve_with_pattern: reduced solve produced non-finite values");
      }
      const Vec<Scalar> w = basis * y;
      for (size_t idx = 0; idx < sys.free_index_map.size(); ++idx) {
        const auto [i, j] = sys.free_index_map[idx];
        x(i, j) = w[static_cast<Index>(idx)];
      }
      grad_residual = (basis.adjoint() * (sys.hessian * w - sys.rhs)).norm();
    }
  }

  SparsifyOutcome out;
  out.pattern = z;
  out.spectral = embed_spectral(f);
  const Mat<Scalar> d = x - a;
  out.j_min =
      0.5 * (d * a_pinv).squaredNorm() + 0.5 * (a_pinv * d).squaredNorm();
  out.grad_residual = grad_residual;
  out.nullspace_residual =
      std::max((x * f.v2).norm(), (x.adjoint() * f.u2).norm());
  out.x = to_complex<Scalar>(x);
  return out;
}

template <class Scalar>
SparsifyOutcome sparsify_typed(const Mat<Scalar>& a,
                               const SparsifyParams& params) {
  const double rank_tol = params.rank_tol
                              ? *params.rank_tol
                              : default_rank_tol(a.rows(), a.cols());
  if (rank_tol < 0.0) {
    throw invalid_parameter_error("sparsify: rank_tol must be >= 0");
  }
  const TypedSpectral<Scalar> f = factorize_typed<Scalar>(a, rank_tol);

  Pattern z;
  if (params.pattern_override) {
    z = *params.pattern_override;
    if (z.rows() != a.rows() || z.cols() != a.cols()) {
      throw shape_error("sparsify: pattern_override shape mismatch");
    }
  } else {
    LpParams lp;
    lp.p = params.p;
    lp.q = params.q;
    lp.n_row = params.n_row_override ? *params.n_row_override
                                     : std::min(a.cols(), f.v2.cols() + 1);
    lp.n_col = params.n_col_override ? *params.n_col_override
                                     : std::min(a.rows(), f.u2.cols() + 1);
    z = matrix_pattern_moduli(a.cwiseAbs().array(), lp);
  }
  return solve_typed<Scalar>(a, f, z);
}

}  // namespace detail

/// Restriction of the first-order optimality system to the free entries.
inline KktSystem assemble_kkt(const SpectralData& f, const Matrix& a_pinv,
                              const Pattern& z) {
  detail::TypedSpectral<Complex> tf{f.u1, f.u2,     f.v1,      f.v2,
                                    f.sigma, f.rank, f.rank_tol};
  detail::TypedKkt<Complex> sys =
      detail::assemble_kkt_typed<Complex>(tf, a_pinv, z);
  return KktSystem{std::move(sys.free_index_map), std::move(sys.hessian),
                   std::move(sys.rhs), std::move(sys.constraints)};
}

/// Unique minimizer of the misfit over matrices with the given sparsity
/// pattern, subject to exact left/right null-space preservation. Solved by
/// the null-space method: reduce to the constraint null space, factorize the
/// positive-definite reduced Hessian, scatter back.
inline SparsifyOutcome solve_with_pattern(const Matrix& a, const Pattern& z,
                                          double rank_tol) {
  detail::require_finite(a, "solve_with_pattern");
  if (z.rows() != a.rows() || z.cols() != a.cols()) {
    throw shape_error("solve_with_pattern: pattern shape mismatch");
  }
  SparsifyParams params;
  params.rank_tol = rank_tol;
  params.pattern_override = z;
  if (is_real(a)) {
    return detail::sparsify_typed<double>(a.real(), params);
  }
  return detail::sparsify_typed<Complex>(a, params);
}

/// Full pipeline: factorize, choose the pattern (unless overridden), solve.
inline SparsifyOutcome sparsify(const Matrix& a, const SparsifyParams& params) {
  detail::require_finite(a, "sparsify");
  detail::validate_pq(params.p, params.q, "sparsify");
  if (is_real(a)) {
    return detail::sparsify_typed<double>(a.real(), params);
  }
  return detail::sparsify_typed<Complex>(a, params);
}

}  // namespace sparsix
