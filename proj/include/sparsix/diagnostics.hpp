#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>

#include "sparsix/sparsify.hpp"
#include "sparsix/spectral.hpp"
#include "sparsix/structgen.hpp"
#include "sparsix/types.hpp"

namespace sparsix {

struct AprioriCheck {
  double lhs = 0.0;  // ||A - A^pq||_2
  double rhs = 0.0;  // (mn)^(C/2) (1-q) ||A||_2
  bool ok = false;
};

struct MisfitBoundCheck {
  bool applicable = false;  // square full-rank inputs only
  double bound = 0.0;       // m^(1+2C) (1-q)^2 kappa^2
  bool ok = false;
};

struct ClusteringCheck {
  double radius = 0.0;        // sqrt(2 j_min)
  double max_distance = 0.0;  // max |lambda - 1| over nonzero eigenvalues
  bool ok = false;
};

struct ConditionBoundCheck {
  bool applicable = false;  // j_min < 1/2 and X nullities not above A's
  double bound = 0.0;       // (1 + sqrt(2 j_min)) / (1 - sqrt(2 j_min))
  double observed = 0.0;    // max(kappa(X A+), kappa(A+ X))
  bool ok = false;
};

struct Report {
  Index m = 0, n = 0;
  Index rank = 0;
  std::optional<double> kappa_a;
  Index nnz_a = 0, nnz_x = 0;
  double density_x = 0.0;
  double j_min = 0.0;
  std::optional<double> cond_x;
  std::optional<double> cond_pinva_x;  // kappa(A+ X)
  std::optional<double> cond_x_pinva;  // kappa(X A+)
  double cluster_radius = 0.0;
  double max_eig_distance = 0.0;
  bool clustering_ok = false;
  std::optional<double> cond_bound;
  std::optional<bool> cond_bound_ok;
  std::optional<double> apriori_lhs, apriori_rhs;
  std::optional<bool> apriori_bound_ok;
  std::optional<double> misfit_bound;
  std::optional<bool> misfit_bound_ok;
  std::optional<double> rel_inv_diff;
  std::map<std::string, double> subspace_residuals;
};

/// Perturbation-bound exponent C = 1 - 1/p + |1/2 - 1/p| for p in [1, inf].
inline double exponent_c(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw invalid_parameter_error("exponent_c: p must be in [1, inf]");
  }
  if (std::isinf(p)) return 1.5;
  return 1.0 - 1.0 / p + std::abs(0.5 - 1.0 / p);
}

namespace detail {

inline double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (is_real(a)) {
    return Eigen::JacobiSVD<RealMatrix>(a.real()).singularValues()[0];
  }
  return Eigen::JacobiSVD<Matrix>(a).singularValues()[0];
}

inline std::optional<double> generalized_condition_opt(const Matrix& a,
                                                       double rank_tol) {
  SpectralData f = factorize(a, rank_tol);
  if (f.rank == 0) return std::nullopt;
  return f.sigma[0] / f.sigma[f.rank - 1];
}

}  // namespace detail

/// Entrywise mask of a by its pattern: A^pq.
inline Matrix masked_matrix(const Matrix& a, const Pattern& z) {
  if (z.rows() != a.rows() || z.cols() != a.cols()) {
    throw shape_error("masked_matrix: pattern shape mismatch");
  }
  Matrix out = a;
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (!z(i, j)) out(i, j) = 0.0;
    }
  }
  return out;
}

/// ||A - A^pq||_2 <= (mn)^(C/2) (1-q) ||A||_2 for patterns computed with
/// the given p, q.
inline AprioriCheck apriori_perturbation_check(const Matrix& a, double p,
                                               double q, const Pattern& z) {
  const double c = exponent_c(p);
  AprioriCheck out;
  out.lhs = detail::spectral_norm(a - masked_matrix(a, z));
  out.rhs = std::pow(static_cast<double>(a.rows() * a.cols()), c / 2.0) *
            (1.0 - q) * detail::spectral_norm(a);
  out.ok = out.lhs <= out.rhs * (1.0 + 1e-12);
  return out;
}

/// j_min <= m^(1+2C) (1-q)^2 kappa(A)^2 for square nonsingular A. Marked
/// not applicable otherwise.
inline MisfitBoundCheck misfit_bound_check(const Matrix& a, double p, double q,
                                           double j_min) {
  const double c = exponent_c(p);
  MisfitBoundCheck out;
  if (a.rows() != a.cols()) return out;
  SpectralData f = factorize(a, default_rank_tol(a));
  if (f.rank != a.rows()) return out;
  out.applicable = true;
  const double kappa = f.sigma[0] / f.sigma[f.rank - 1];
  out.bound = std::pow(static_cast<double>(a.rows()), 1.0 + 2.0 * c) *
              (1.0 - q) * (1.0 - q) * kappa * kappa;
  out.ok = j_min <= out.bound * (1.0 + 1e-12);
  return out;
}

/// Every nonzero eigenvalue of A+ X and X A+ lies within sqrt(2 j_min) of
/// 1 + 0i. Assumes x satisfies the null-space constraints that produced
/// j_min. Eigenvalues below 1e-10 of the largest modulus count as zero.
inline ClusteringCheck clustering_check(const Matrix& x, const Matrix& a_pinv,
                                        double j_min) {
  if (a_pinv.rows() != x.cols() || a_pinv.cols() != x.rows()) {
    throw shape_error(
        "clustering_check: a_pinv must be the transpose shape of x");
  }
  ClusteringCheck out;
  out.radius = std::sqrt(2.0 * std::max(j_min, 0.0));
  out.max_distance = 0.0;
  for (const Matrix& prod : {Matrix(a_pinv * x), Matrix(x * a_pinv)}) {
    for (const Complex& ev : nonzero_eigenvalues(prod, 1e-10)) {
      out.max_distance = std::max(out.max_distance, std::abs(ev - 1.0));
    }
  }
  out.ok = out.max_distance <= out.radius * (1.0 + 1e-10) + 1e-10;
  return out;
}

/// max(kappa(X A+), kappa(A+ X)) <= (1 + sqrt(2 j_min)) / (1 - sqrt(2 j_min))
/// when j_min < 1/2 and the nullities of X do not exceed those of A.
inline ConditionBoundCheck condition_bound_check(const Matrix& x,
                                                 const SpectralData& f,
                                                 const Matrix& a_pinv,
                                                 double j_min) {
  ConditionBoundCheck out;
  const double s = std::sqrt(2.0 * std::max(j_min, 0.0));
  if (s >= 1.0) return out;  // j_min >= 1/2
  const SpectralData fx = factorize(x, f.rank_tol);
  if (fx.rank < f.rank) return out;  // X lost rank: nullities grew
  out.applicable = true;
  out.bound = (1.0 + s) / (1.0 - s);
  const auto c1 = detail::generalized_condition_opt(
      x * a_pinv, default_rank_tol(x.rows(), x.rows()));
  const auto c2 = detail::generalized_condition_opt(
      a_pinv * x, default_rank_tol(x.cols(), x.cols()));
  out.observed = std::max(c1.value_or(0.0), c2.value_or(0.0));
  out.ok = out.observed <= out.bound * (1.0 + 1e-10);
  return out;
}

/// ||X+ - A+||_F / ||A+||_F.
inline double rel_inverse_diff(const Matrix& x, const Matrix& a,
                               double rank_tol) {
  if (x.rows() != a.rows() || x.cols() != a.cols()) {
    throw shape_error("rel_inverse_diff: shape mismatch");
  }
  const SpectralData fa = factorize(a, rank_tol);
  if (fa.rank == 0) {
    throw invalid_input_error("rel_inverse_diff: undefined for zero A");
  }
  const Matrix a_pinv = pseudoinverse(fa);
  const Matrix x_pinv = pseudoinverse(factorize(x, rank_tol));
  return (x_pinv - a_pinv).norm() / a_pinv.norm();
}

/// Relative defining residuals for each structural class of square matrices
/// (Hamiltonian rows require even dimension and are skipped otherwise).
/// Returns an empty map for rectangular or zero input.
inline std::map<std::string, double> subspace_residuals(const Matrix& x) {
  std::map<std::string, double> out;
  const Index n = x.rows();
  if (n != x.cols() || n == 0) return out;
  const double scale = x.norm();
  if (scale == 0.0) return out;

  const Matrix j = exchange_matrix(n);
  const Matrix cp = cyclic_matrix(n, +1);
  const Matrix cm = cyclic_matrix(n, -1);

  out["hermitian"] = (x - x.adjoint()).norm() / scale;
  out["skew-hermitian"] = (x + x.adjoint()).norm() / scale;
  out["complex-symmetric"] = (x - x.transpose()).norm() / scale;
  out["skew-complex-symmetric"] = (x + x.transpose()).norm() / scale;
  out["symmetric-real"] = out["complex-symmetric"];
  out["skew-symmetric-real"] = out["skew-complex-symmetric"];
  out["centrosymmetric"] = (x * j - j * x).norm() / scale;
  out["skew-centrosymmetric"] = (x * j + j * x).norm() / scale;
  out["circulant"] = (x * cp - cp * x).norm() / scale;
  out["skew-circulant"] = (x * cm - cm * x).norm() / scale;
  out["persymmetric"] = (x * j - j * x.adjoint()).norm() / scale;
  out["skew-persymmetric"] = (x * j + j * x.adjoint()).norm() / scale;
  if (n % 2 == 0) {
    const Matrix k = symplectic_matrix(n);
    out["hamiltonian"] = (k * x + x.adjoint() * k).norm() / scale;
    out["skew-hamiltonian"] = (k * x - x.adjoint() * k).norm() / scale;
  }
  return out;
}

/// Residual name for a generator kind, where one exists.
inline std::optional<std::string> residual_key_for(Kind k) {
  switch (k) {
    case Kind::centrosymmetric:
    case Kind::skew_centrosymmetric:
    case Kind::circulant:
    case Kind::skew_circulant:
    case Kind::complex_symmetric:
    case Kind::skew_complex_symmetric:
    case Kind::hamiltonian:
    case Kind::skew_hamiltonian:
    case Kind::hermitian:
    case Kind::skew_hermitian:
    case Kind::persymmetric:
    case Kind::skew_persymmetric:
    case Kind::symmetric_real:
    case Kind::skew_symmetric_real:
      return kind_name(k);
    default:
      return std::nullopt;
  }
}

/// Full quality report for a sparsification outcome.
inline Report build_report(const Matrix& a, const SparsifyOutcome& outcome,
                           const SparsifyParams& params) {
  Report rep;
  rep.m = a.rows();
  rep.n = a.cols();
  rep.rank = outcome.spectral.rank;
  rep.kappa_a = outcome.spectral.kappa;
  rep.nnz_a = nnz_exact(a);
  rep.nnz_x = nnz_exact(outcome.x);
  rep.density_x = static_cast<double>(rep.nnz_x) /
                  static_cast<double>(rep.m * rep.n);
  rep.j_min = outcome.j_min;

  const Matrix a_pinv = pseudoinverse(outcome.spectral);
  const double tol = outcome.spectral.rank_tol;
  if (rep.nnz_x > 0) {
    rep.cond_x = detail::generalized_condition_opt(outcome.x, tol);
    rep.cond_pinva_x = detail::generalized_condition_opt(
        a_pinv * outcome.x, default_rank_tol(rep.n, rep.n));
    rep.cond_x_pinva = detail::generalized_condition_opt(
        outcome.x * a_pinv, default_rank_tol(rep.m, rep.m));
  }

  const ClusteringCheck cl = clustering_check(outcome.x, a_pinv, rep.j_min);
  rep.cluster_radius = cl.radius;
  rep.max_eig_distance = cl.max_distance;
  rep.clustering_ok = cl.ok;

  const ConditionBoundCheck cb =
      condition_bound_check(outcome.x, outcome.spectral, a_pinv, rep.j_min);
  if (cb.applicable) {
    rep.cond_bound = cb.bound;
    rep.cond_bound_ok = cb.ok;
  }

  // The Thm 4.1 / Thm 4.3 bounds are defined for p in [1, inf] only.
  if (params.p >= 1.0) {
    const AprioriCheck ap =
        apriori_perturbation_check(a, params.p, params.q, outcome.pattern);
    rep.apriori_lhs = ap.lhs;
    rep.apriori_rhs = ap.rhs;
    rep.apriori_bound_ok = ap.ok;
    const MisfitBoundCheck mb =
        misfit_bound_check(a, params.p, params.q, rep.j_min);
    if (mb.applicable) {
      rep.misfit_bound = mb.bound;
      rep.misfit_bound_ok = mb.ok;
    }
  }

  if (outcome.spectral.rank > 0) {
    rep.rel_inv_diff = rel_inverse_diff(outcome.x, a, tol);
  }
  rep.subspace_residuals = subspace_residuals(outcome.x);
  return rep;
}

}  // namespace sparsix
