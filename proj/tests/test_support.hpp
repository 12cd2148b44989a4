// Shared fixtures and independent oracles for the test suites. The oracles
// deliberately avoid the library code paths they are used to check.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

#include "sparsix/pattern.hpp"
#include "sparsix/structgen.hpp"
#include "sparsix/types.hpp"

namespace testsupport {

using sparsix::Complex;
using sparsix::Index;
using sparsix::Matrix;
using sparsix::Pattern;
using sparsix::RandomStream;
using sparsix::Vector;

inline Matrix random_complex(RandomStream& rs, Index m, Index n) {
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = rs.uniform_complex();
  }
  return a;
}

inline Matrix random_real(RandomStream& rs, Index m, Index n) {
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) a(i, j) = Complex(rs.uniform(), 0.0);
  }
  return a;
}

inline Vector random_complex_vector(RandomStream& rs, Index n) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = rs.uniform_complex();
  return v;
}

/// Random complex permutation matrix: one unit-modulus entry per row/column.
inline Matrix random_complex_permutation(RandomStream& rs, Index n) {
  std::vector<Index> perm(static_cast<size_t>(n));
  for (Index i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
  for (Index i = n - 1; i > 0; --i) {
    const Index j =
        static_cast<Index>(rs.next_u64() % static_cast<uint64_t>(i + 1));
    std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
  }
  Matrix p = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) p(perm[static_cast<size_t>(i)], i) = rs.unit_phase();
  return p;
}

inline Pattern random_pattern(RandomStream& rs, Index m, Index n,
                              double density) {
  sparsix::BoolArray mask(m, n);
  for (Index i = 0; i < m; ++i) {
    for (Index j = 0; j < n; ++j) mask(i, j) = rs.uniform01() < density;
  }
  return Pattern(std::move(mask));
}

// ---------------------------------------------------------------------------
// Lp measure computed independently of the library.
inline double oracle_lp(const std::vector<double>& mods, double p) {
  if (p == 0.0) {
    double c = 0;
    for (double m : mods) c += m != 0.0 ? 1.0 : 0.0;
    return c;
  }
  if (std::isinf(p)) {
    double mx = 0.0;
    for (double m : mods) mx = std::max(mx, m);
    return mx;
  }
  double s = 0.0;
  for (double m : mods) s += std::pow(m, p);
  return p < 1.0 ? s : std::pow(s, 1.0 / p);
}

/// Exhaustive maximizer of the eliminated count over all subsets of the
/// nonzero positions, subject to the elimination-measure and minimum-count
/// constraints. Only usable for short vectors.
inline int oracle_max_eliminated(const Vector& x, double p, double q,
                                 int n_min) {
  std::vector<int> nz;
  std::vector<double> mods;
  for (Index i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) != 0.0) {
      nz.push_back(static_cast<int>(i));
      mods.push_back(std::abs(x[i]));
    }
  }
  std::vector<double> all_mods(x.size());
  for (Index i = 0; i < x.size(); ++i) all_mods[static_cast<size_t>(i)] = std::abs(x[i]);
  const double threshold = (1.0 - q) * oracle_lp(all_mods, p);
  const int nnz = static_cast<int>(nz.size());
  int best = -1;
  for (unsigned subset = 0; subset < (1u << nnz); ++subset) {
    std::vector<double> elim;
    for (int b = 0; b < nnz; ++b) {
      if (subset & (1u << b)) elim.push_back(mods[static_cast<size_t>(b)]);
    }
    const int k = static_cast<int>(elim.size());
    if (nnz - k < n_min) continue;
    if (oracle_lp(elim, p) > threshold) continue;
    best = std::max(best, k);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Dense Kronecker-product machinery for the augmented-KKT oracle.
inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

inline Vector vec_colmajor(const Matrix& a) {
  Vector v(a.size());
  Index idx = 0;
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = 0; i < a.rows(); ++i) v[idx++] = a(i, j);
  }
  return v;
}

inline Matrix unvec_colmajor(const Vector& v, Index m, Index n) {
  Matrix a(m, n);
  Index idx = 0;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) a(i, j) = v[idx++];
  }
  return a;
}

/// Solves the sparsification problem through the explicit mn-dimensional
/// augmented KKT system (Kronecker-sum operator plus stacked constraint
/// rows), by minimum-norm least squares. Independent of the production
/// null-space path.
inline Matrix augmented_kkt_solve(const Matrix& a, const Pattern& z,
                                  double rank_tol) {
  const Index m = a.rows();
  const Index n = a.cols();
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv[0] : 0.0;
  Index r = 0;
  while (r < sv.size() && sv[r] > rank_tol * smax) ++r;
  Matrix a_pinv = Matrix::Zero(n, m);
  for (Index k = 0; k < r; ++k) {
    a_pinv += (1.0 / sv[k]) * svd.matrixV().col(k) *
              svd.matrixU().col(k).adjoint();
  }
  const Matrix v2 = svd.matrixV().rightCols(n - r);
  const Matrix u2 = svd.matrixU().rightCols(m - r);

  const Matrix big_m = a_pinv * a_pinv.adjoint();  // n x n
  const Matrix big_c = a_pinv.adjoint() * a_pinv;  // m x m
  const Matrix op = kron(big_m.transpose(), Matrix::Identity(m, m)) +
                    kron(Matrix::Identity(n, n), big_c);
  const Vector g = 2.0 * vec_colmajor(a_pinv.adjoint());

  std::vector<Vector> rows;
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < m; ++i) {
      if (!z(i, j)) {
        Vector row = Vector::Zero(m * n);
        row[i + j * m] = 1.0;
        rows.push_back(row);
      }
    }
  }
  const Matrix right_rows = kron(v2.transpose(), Matrix::Identity(m, m));
  for (Index k = 0; k < right_rows.rows(); ++k) {
    rows.push_back(right_rows.row(k).transpose());
  }
  const Matrix left_rows = kron(Matrix::Identity(n, n), u2.adjoint());
  for (Index k = 0; k < left_rows.rows(); ++k) {
    rows.push_back(left_rows.row(k).transpose());
  }

  const Index nc = static_cast<Index>(rows.size());
  const Index dim = m * n + nc;
  Matrix kkt = Matrix::Zero(dim, dim);
  kkt.topLeftCorner(m * n, m * n) = op;
  for (Index k = 0; k < nc; ++k) {
    kkt.row(m * n + k).head(m * n) = rows[static_cast<size_t>(k)].transpose();
    kkt.col(m * n + k).head(m * n) =
        rows[static_cast<size_t>(k)].conjugate();
  }
  Vector rhs = Vector::Zero(dim);
  rhs.head(m * n) = g;

  Eigen::JacobiSVD<Matrix> kkt_svd(kkt,
                                   Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector sol = kkt_svd.solve(rhs);
  return unvec_colmajor(sol.head(m * n), m, n);
}

}  // namespace testsupport
