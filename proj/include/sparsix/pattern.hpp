#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "sparsix/spectral.hpp"
#include "sparsix/types.hpp"

namespace sparsix {

/// A sparsity mask: true entries are free, false entries are forced to zero
/// in the sparsified output.
class Pattern {
 public:
  Pattern() = default;
  Pattern(Index rows, Index cols)
      : mask_(BoolArray::Constant(rows, cols, false)), nnz_(0) {}
  explicit Pattern(BoolArray mask)
      : mask_(std::move(mask)), nnz_(mask_.count()) {}

  Index rows() const { return mask_.rows(); }
  Index cols() const { return mask_.cols(); }
  Index nnz() const { return nnz_; }
  double density() const {
    return static_cast<double>(nnz_) /
           static_cast<double>(mask_.rows() * mask_.cols());
  }

  bool operator()(Index i, Index j) const { return mask_(i, j); }
  void set(Index i, Index j, bool value) {
    if (mask_(i, j) != value) nnz_ += value ? 1 : -1;
    mask_(i, j) = value;
  }

  const BoolArray& mask() const { return mask_; }

  bool operator==(const Pattern& other) const {
    return rows() == other.rows() && cols() == other.cols() &&
           (mask_ == other.mask_).all();
  }

 private:
  BoolArray mask_;
  Index nnz_ = 0;
};

inline Pattern pattern_transpose(const Pattern& z) {
  return Pattern(BoolArray(z.mask().transpose()));
}

inline Pattern pattern_or(const Pattern& z1, const Pattern& z2) {
  if (z1.rows() != z2.rows() || z1.cols() != z2.cols()) {
    throw shape_error("pattern_or: shape mismatch");
  }
  return Pattern(BoolArray(z1.mask() || z2.mask()));
}

/// Parameters of the Lp-norm pattern selection.
struct LpParams {
  double p = 1.0;        // in [0, inf]
  double q = 0.8;        // in [0, 1]
  Index n_row = 1;       // minimum kept nonzeros per row
  Index n_col = 1;       // minimum kept nonzeros per column
};

namespace detail {

inline void validate_pq(double p, double q, const char* who) {
  if (std::isnan(p) || p < 0.0) {
    throw invalid_parameter_error(std::string(who) +
                                  ": p must be in [0, inf]");
  }
  if (std::isnan(q) || q < 0.0 || q > 1.0) {
    throw invalid_parameter_error(std::string(who) + ": q must be in [0, 1]");
  }
}

/// Lp measure over a list of moduli. For p in (0,1) the un-rooted power sum
/// is used, matching the measure that defines the elimination threshold.
inline double lp_measure_moduli(const double* mod, Index size, double p) {
  if (p == 0.0) {
    Index count = 0;
    for (Index i = 0; i < size; ++i) count += mod[i] != 0.0;
    return static_cast<double>(count);
  }
  if (std::isinf(p)) {
    double mx = 0.0;
    for (Index i = 0; i < size; ++i) mx = std::max(mx, mod[i]);
    return mx;
  }
  double sum = 0.0;
  for (Index i = 0; i < size; ++i) sum += std::pow(mod[i], p);
  return p < 1.0 ? sum : std::pow(sum, 1.0 / p);
}

/// Pattern of a single vector, given entry moduli. Zeros always get mask 0.
/// Among the nonzeros sorted ascending by (modulus, index), the largest
/// count is eliminated whose Lp measure stays within (1-q) of the whole
/// vector's measure while at least n_min nonzeros remain.
inline BoolVectorArray vector_pattern_moduli(const Eigen::ArrayXd& mod,
                                             double p, double q, Index n_min) {
  validate_pq(p, q, "vector_pattern");
  const Index size = mod.size();
  BoolVectorArray mask = BoolVectorArray::Constant(size, false);

  std::vector<Index> order;
  order.reserve(static_cast<size_t>(size));
  for (Index i = 0; i < size; ++i) {
    if (mod[i] != 0.0) order.push_back(i);
  }
  const Index nnz = static_cast<Index>(order.size());
  if (n_min < 0 || n_min > nnz) {
    throw invalid_parameter_error(
        "vector_pattern: n_min exceeds the number of nonzeros");
  }
  if (nnz == 0) return mask;  // zero vector: all-zero mask

  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (mod[a] != mod[b]) return mod[a] < mod[b];
    return a < b;
  });

  // Total measure accumulated in the same ascending order as the
  // elimination sweep, so the q = 0 extreme eliminates everything exactly.
  std::vector<double> sorted_mod(order.size());
  for (size_t k = 0; k < order.size(); ++k) sorted_mod[k] = mod[order[k]];
  const double total =
      lp_measure_moduli(sorted_mod.data(), nnz, p);
  const double threshold = (1.0 - q) * total;

  Index k = 0;
  double run_sum = 0.0;  // power sum, count, or running max depending on p
  while (k < nnz - n_min) {
    const double v = sorted_mod[static_cast<size_t>(k)];
    double measure;
    if (p == 0.0) {
      measure = static_cast<double>(k + 1);
    } else if (std::isinf(p)) {
      run_sum = std::max(run_sum, v);
      measure = run_sum;
    } else {
      run_sum += std::pow(v, p);
      measure = p < 1.0 ? run_sum : std::pow(run_sum, 1.0 / p);
    }
    if (measure > threshold) break;
    ++k;
  }
  for (Index j = k; j < nnz; ++j) mask[order[static_cast<size_t>(j)]] = true;
  return mask;
}

/// Row/column OR pattern over an array of entry moduli.
inline Pattern matrix_pattern_moduli(const Eigen::ArrayXXd& mod,
                                     const LpParams& params) {
  validate_pq(params.p, params.q, "matrix_pattern");
  const Index m = mod.rows();
  const Index n = mod.cols();
  if (params.n_row < 0 || params.n_row > n || params.n_col < 0 ||
      params.n_col > m) {
    throw invalid_parameter_error(
        "matrix_pattern: n_row must be <= cols and n_col <= rows");
  }
  BoolArray result = BoolArray::Constant(m, n, false);
  for (Index i = 0; i < m; ++i) {
    const Eigen::ArrayXd row = mod.row(i).transpose();
    const Index row_nnz = (row != 0.0).count();
    const BoolVectorArray rmask = vector_pattern_moduli(
        row, params.p, params.q, std::min(params.n_row, row_nnz));
    for (Index j = 0; j < n; ++j) result(i, j) = result(i, j) || rmask[j];
  }
  for (Index j = 0; j < n; ++j) {
    const Eigen::ArrayXd col = mod.col(j);
    const Index col_nnz = (col != 0.0).count();
    const BoolVectorArray cmask = vector_pattern_moduli(
        col, params.p, params.q, std::min(params.n_col, col_nnz));
    for (Index i = 0; i < m; ++i) result(i, j) = result(i, j) || cmask[i];
  }
  return Pattern(std::move(result));
}

}  // namespace detail

/// Lp "norm" of a vector: the usual norm for p in [1, inf], the un-rooted
/// power sum for p in (0, 1), the nonzero count for p = 0.
inline double lp_measure(const Vector& x, double p) {
  detail::validate_pq(p, 0.0, "lp_measure");
  const Eigen::ArrayXd mod = x.cwiseAbs().array();
  return detail::lp_measure_moduli(mod.data(), mod.size(), p);
}

/// Sparsity pattern of a vector: keep everything the Lp elimination rule
/// cannot discard. The zero vector yields the all-zero mask.
inline BoolVectorArray vector_pattern(const Vector& x, double p, double q,
                                      Index n_min) {
  detail::require_finite(x, "vector_pattern");
  return detail::vector_pattern_moduli(x.cwiseAbs().array(), p, q, n_min);
}

/// Sparsity pattern of a matrix: per-row patterns OR'd with the transpose of
/// per-column patterns. The per-row (per-column) minimum count is clamped to
/// that row's (column's) nonzero count, so structurally zero rows never fail.
inline Pattern matrix_pattern(const Matrix& a, const LpParams& params) {
  detail::require_finite(a, "matrix_pattern");
  return detail::matrix_pattern_moduli(a.cwiseAbs().array(), params);
}

/// Fast path for matrices whose entrywise modulus is symmetric: computes the
/// row pattern only and ORs it with its own transpose. Bit-identical to
/// matrix_pattern on such inputs when n_row == n_col.
inline Pattern matrix_pattern_symmetric(const Matrix& a,
                                        const LpParams& params) {
  detail::require_finite(a, "matrix_pattern_symmetric");
  if (a.rows() != a.cols()) {
    throw shape_error("matrix_pattern_symmetric: matrix must be square");
  }
  if (params.n_row != params.n_col) {
    throw invalid_parameter_error(
        "matrix_pattern_symmetric: requires n_row == n_col");
  }
  detail::validate_pq(params.p, params.q, "matrix_pattern_symmetric");
  const Eigen::ArrayXXd mod = a.cwiseAbs().array();
  const Index n = a.rows();
  if (params.n_row > n) {
    throw invalid_parameter_error(
        "matrix_pattern_symmetric: n_row must be <= cols");
  }
  BoolArray rows = BoolArray::Constant(n, n, false);
  for (Index i = 0; i < n; ++i) {
    const Eigen::ArrayXd row = mod.row(i).transpose();
    const Index row_nnz = (row != 0.0).count();
    const BoolVectorArray rmask = detail::vector_pattern_moduli(
        row, params.p, params.q, std::min(params.n_row, row_nnz));
    for (Index j = 0; j < n; ++j) rows(i, j) = rmask[j];
  }
  return Pattern(BoolArray(rows || rows.transpose()));
}

/// Minimum nonzeros per row/column that keep the null-space constraints from
/// forcing whole rows or columns to zero: (min(n, pR + 1), min(m, pL + 1)).
inline std::pair<Index, Index> default_min_nonzeros(const SpectralData& f) {
  const Index m = f.rows();
  const Index n = f.cols();
  return {std::min(n, f.right_nullity() + 1),
          std::min(m, f.left_nullity() + 1)};
}

}  // namespace sparsix
