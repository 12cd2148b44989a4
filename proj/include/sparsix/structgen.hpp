#pragma once

#include <cmath>
#include <cstdint>
#include <string>

#include "sparsix/spectral.hpp"
#include "sparsix/types.hpp"

namespace sparsix {

/// xoshiro256++ with splitmix64 seeding. Fixed and portable so that seeded
/// fixtures are bit-identical across platforms and standard libraries.
class RandomStream {
 public:
  explicit RandomStream(uint64_t seed) {
    uint64_t x = seed;
    for (auto& word : state_) {
      // splitmix64
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      word = z ^ (z >> 31);
    }
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform double in [-1, 1).
  double uniform() { return 2.0 * uniform01() - 1.0; }

  Complex uniform_complex() {
    const double re = uniform();
    const double im = uniform();
    return {re, im};
  }

  /// Unit-modulus complex number with uniform phase.
  Complex unit_phase() {
    const double theta = 2.0 * M_PI * uniform01();
    return {std::cos(theta), std::sin(theta)};
  }

 private:
  static uint64_t rotl(uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
  uint64_t state_[4] = {};
};

enum class Kind {
  cos40,
  exchange,
  symplectic,
  cyclic_plus,
  cyclic_minus,
  centrosymmetric,
  skew_centrosymmetric,
  circulant,
  skew_circulant,
  complex_symmetric,
  skew_complex_symmetric,
  hamiltonian,
  skew_hamiltonian,
  hermitian,
  skew_hermitian,
  persymmetric,
  skew_persymmetric,
  symmetric_real,
  skew_symmetric_real,
  general,
  general_real,
};

inline const char* kind_name(Kind k) {
  switch (k) {
    case Kind::cos40: return "cos40";
    case Kind::exchange: return "exchange";
    case Kind::symplectic: return "symplectic";
    case Kind::cyclic_plus: return "cyclic-plus";
    case Kind::cyclic_minus: return "cyclic-minus";
    case Kind::centrosymmetric: return "centrosymmetric";
    case Kind::skew_centrosymmetric: return "skew-centrosymmetric";
    case Kind::circulant: return "circulant";
    case Kind::skew_circulant: return "skew-circulant";
    case Kind::complex_symmetric: return "complex-symmetric";
    case Kind::skew_complex_symmetric: return "skew-complex-symmetric";
    case Kind::hamiltonian: return "hamiltonian";
    case Kind::skew_hamiltonian: return "skew-hamiltonian";
    case Kind::hermitian: return "hermitian";
    case Kind::skew_hermitian: return "skew-hermitian";
    case Kind::persymmetric: return "persymmetric";
    case Kind::skew_persymmetric: return "skew-persymmetric";
    case Kind::symmetric_real: return "symmetric-real";
    case Kind::skew_symmetric_real: return "skew-symmetric-real";
    case Kind::general: return "general";
    case Kind::general_real: return "general-real";
  }
  return "unknown";
}

inline Kind kind_from_string(const std::string& name) {
  for (int k = 0; k <= static_cast<int>(Kind::general_real); ++k) {
    if (name == kind_name(static_cast<Kind>(k))) return static_cast<Kind>(k);
  }
  throw invalid_parameter_error("unknown generator kind: " + name);
}

struct GenSpec {
  Kind kind = Kind::general;
  Index size = 40;
  uint64_t seed = 0;
  Index rank_deficiency = 0;
};

/// The deterministic test matrix A(i, j) = cos(3^(1/4) i^(1/2) j)^5 with
/// 1-based indices.
inline Matrix cos_test_matrix(Index n) {
  if (n < 1) throw invalid_parameter_error("cos_test_matrix: n must be >= 1");
  const double c = std::pow(3.0, 0.25);
  RealMatrix a(n, n);
  for (Index i = 0; i < n; ++i) {
    const double si = std::sqrt(static_cast<double>(i + 1));
    for (Index j = 0; j < n; ++j) {
      const double v = std::cos(c * si * static_cast<double>(j + 1));
      const double v2 = v * v;
      a(i, j) = v2 * v2 * v;
    }
  }
  return a.cast<Complex>();
}

/// Exchange matrix J_m: ones on the anti-diagonal. Symmetric, involutory.
inline Matrix exchange_matrix(Index m) {
  if (m < 1) throw invalid_parameter_error("exchange_matrix: m must be >= 1");
  Matrix j = Matrix::Zero(m, m);
  for (Index i = 0; i < m; ++i) j(i, m - 1 - i) = 1.0;
  return j;
}

/// Skew-symmetric K_m = [[0, I], [-I, 0]]; m must be even.
inline Matrix symplectic_matrix(Index m) {
  if (m < 2 || m % 2 != 0) {
    throw invalid_parameter_error("symplectic_matrix: m must be even");
  }
  const Index h = m / 2;
  Matrix k = Matrix::Zero(m, m);
  for (Index i = 0; i < h; ++i) {
    k(i, h + i) = 1.0;
    k(h + i, i) = -1.0;
  }
  return k;
}

/// Cyclic shift matrix C+/C-: identity on the superdiagonal block, +1 or -1
/// in the bottom-left corner.
inline Matrix cyclic_matrix(Index m, int sign) {
  if (m < 1) throw invalid_parameter_error("cyclic_matrix: m must be >= 1");
  if (sign != 1 && sign != -1) {
    throw invalid_parameter_error("cyclic_matrix: sign must be +1 or -1");
  }
  Matrix c = Matrix::Zero(m, m);
  for (Index i = 0; i + 1 < m; ++i) c(i, i + 1) = 1.0;
  c(m - 1, 0) = Complex(sign, 0);
  return c;
}

namespace detail {

inline Matrix random_dense(RandomStream& rs, Index rows, Index cols,
                           bool real) {
  Matrix g(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      g(i, j) = real ? Complex(rs.uniform(), 0.0) : rs.uniform_complex();
    }
  }
  return g;
}

inline Matrix flip_both(const Matrix& g) { return g.reverse(); }

}  // namespace detail

/// Zero the k smallest singular values of a (SVD truncation). Real inputs
/// stay exactly real.
inline Matrix inject_rank_deficiency(const Matrix& a, Index k) {
  detail::require_finite(a, "inject_rank_deficiency");
  if (k < 0 || k >= std::min(a.rows(), a.cols())) {
    throw invalid_parameter_error(
        "inject_rank_deficiency: k must satisfy 0 <= k < min(m, n)");
  }
  const auto rebuild = [k](auto typed) -> Matrix {
    using Mat = decltype(typed);
    Eigen::JacobiSVD<Mat> svd(typed,
                              Eigen::ComputeThinU | Eigen::ComputeThinV);
    RealVector sv = svd.singularValues();
    for (Index i = sv.size() - k; i < sv.size(); ++i) sv[i] = 0.0;
    Mat out = svd.matrixU() *
              sv.template cast<typename Mat::Scalar>().asDiagonal() *
              svd.matrixV().adjoint();
    return out.template cast<Complex>();
  };
  if (is_real(a)) return rebuild(RealMatrix(a.real()));
  return rebuild(Matrix(a));
}

/// Seeded random member of a structural matrix class (or one of the
/// deterministic special matrices, for which the seed is ignored). The
/// defining residual of the class holds exactly by construction.
inline Matrix random_member(const GenSpec& spec) {
  const Index n = spec.size;
  if (n < 1) throw invalid_parameter_error("random_member: size must be >= 1");
  const bool needs_even = spec.kind == Kind::hamiltonian ||
                          spec.kind == Kind::skew_hamiltonian ||
                          spec.kind == Kind::symplectic;
  if (needs_even && n % 2 != 0) {
    throw invalid_parameter_error(std::string("random_member: kind ") +
                                  kind_name(spec.kind) +
                                  " requires an even size");
  }
  if (spec.rank_deficiency < 0 || spec.rank_deficiency >= n) {
    throw invalid_parameter_error(
        "random_member: rank_deficiency must be < size");
  }

  RandomStream rs(spec.seed);
  Matrix a;
  switch (spec.kind) {
    case Kind::cos40:
      a = cos_test_matrix(n);
      break;
    case Kind::exchange:
      a = exchange_matrix(n);
      break;
    case Kind::symplectic:
      a = symplectic_matrix(n);
      break;
    case Kind::cyclic_plus:
      a = cyclic_matrix(n, +1);
      break;
    case Kind::cyclic_minus:
      a = cyclic_matrix(n, -1);
      break;
    case Kind::general:
      a = detail::random_dense(rs, n, n, false);
      break;
    case Kind::general_real:
      a = detail::random_dense(rs, n, n, true);
      break;
    case Kind::hermitian: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g + g.adjoint()) / 2.0;
      break;
    }
    case Kind::skew_hermitian: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g - g.adjoint()) / 2.0;
      break;
    }
    case Kind::complex_symmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g + g.transpose()) / 2.0;
      break;
    }
    case Kind::skew_complex_symmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g - g.transpose()) / 2.0;
      break;
    }
    case Kind::symmetric_real: {
      const Matrix g = detail::random_dense(rs, n, n, true);
      a = (g + g.transpose()) / 2.0;
      break;
    }
    case Kind::skew_symmetric_real: {
      const Matrix g = detail::random_dense(rs, n, n, true);
      a = (g - g.transpose()) / 2.0;
      break;
    }
    case Kind::centrosymmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g + detail::flip_both(g)) / 2.0;
      break;
    }
    case Kind::skew_centrosymmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      a = (g - detail::flip_both(g)) / 2.0;
      break;
    }
    case Kind::circulant: {
      Matrix c(n, n);
      std::vector<Complex> row(static_cast<size_t>(n));
      for (auto& v : row) v = rs.uniform_complex();
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          c(i, j) = row[static_cast<size_t>((j - i + n) % n)];
        }
      }
      a = c;
      break;
    }
    case Kind::skew_circulant: {
      // Polynomial in C-: wrapped entries (j < i) pick up a minus sign.
      Matrix c(n, n);
      std::vector<Complex> row(static_cast<size_t>(n));
      for (auto& v : row) v = rs.uniform_complex();
      for (Index i = 0; i < n; ++i) {
        for (Index j = 0; j < n; ++j) {
          const Complex v = row[static_cast<size_t>((j - i + n) % n)];
          c(i, j) = j >= i ? v : -v;
        }
      }
      a = c;
      break;
    }
    case Kind::hamiltonian: {
      // [[E, F], [G, -E^H]] with F, G Hermitian satisfies K A + A^H K = 0.
      const Index h = n / 2;
      const Matrix e = detail::random_dense(rs, h, h, false);
      const Matrix f0 = detail::random_dense(rs, h, h, false);
      const Matrix g0 = detail::random_dense(rs, h, h, false);
      Matrix m(n, n);
      m.topLeftCorner(h, h) = e;
      m.topRightCorner(h, h) = (f0 + f0.adjoint()) / 2.0;
      m.bottomLeftCorner(h, h) = (g0 + g0.adjoint()) / 2.0;
      m.bottomRightCorner(h, h) = -e.adjoint();
      a = m;
      break;
    }
    case Kind::skew_hamiltonian: {
      // [[E, F], [G, E^H]] with F, G skew-Hermitian: K A - A^H K = 0.
      const Index h = n / 2;
      const Matrix e = detail::random_dense(rs, h, h, false);
      const Matrix f0 = detail::random_dense(rs, h, h, false);
      const Matrix g0 = detail::random_dense(rs, h, h, false);
      Matrix m(n, n);
      m.topLeftCorner(h, h) = e;
      m.topRightCorner(h, h) = (f0 - f0.adjoint()) / 2.0;
      m.bottomLeftCorner(h, h) = (g0 - g0.adjoint()) / 2.0;
      m.bottomRightCorner(h, h) = e.adjoint();
      a = m;
      break;
    }
    case Kind::persymmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      const Matrix j = exchange_matrix(n);
      a = (g + j * g.adjoint() * j) / 2.0;
      break;
    }
    case Kind::skew_persymmetric: {
      const Matrix g = detail::random_dense(rs, n, n, false);
      const Matrix j = exchange_matrix(n);
      a = (g - j * g.adjoint() * j) / 2.0;
      break;
    }
  }
  if (spec.rank_deficiency > 0) {
    a = inject_rank_deficiency(a, spec.rank_deficiency);
  }
  return a;
}

}  // namespace sparsix
