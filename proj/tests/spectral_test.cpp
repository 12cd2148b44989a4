#include "sparsix/spectral.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <complex>

#include "sparsix/structgen.hpp"
#include "test_support.hpp"

using namespace sparsix;
using testsupport::random_complex;
using testsupport::random_real;

namespace {

void check_invariants(const Matrix& a, const SpectralData& f) {
  const Index m = a.rows();
  const Index n = a.cols();
  ASSERT_EQ(f.u1.cols() + f.u2.cols(), m);
  ASSERT_EQ(f.v1.cols() + f.v2.cols(), n);
  ASSERT_EQ(f.rank + f.right_nullity(), n);
  ASSERT_EQ(f.rank + f.left_nullity(), m);

  Matrix u(m, m);
  u << f.u1, f.u2;
  Matrix v(n, n);
  v << f.v1, f.v2;
  EXPECT_LE((u.adjoint() * u - Matrix::Identity(m, m)).norm(), 1e-12 * m);
  EXPECT_LE((v.adjoint() * v - Matrix::Identity(n, n)).norm(), 1e-12 * n);

  for (Index i = 0; i + 1 < f.sigma.size(); ++i) {
    EXPECT_GE(f.sigma[i], f.sigma[i + 1]);
  }
  const Matrix recon =
      f.u1 * f.sigma.cast<Complex>().asDiagonal() * f.v1.adjoint();
  EXPECT_LE((a - recon).norm(), 1e-12 * std::max(a.norm(), 1.0));
}

TEST(Factorize, Identity3) {
  const SpectralData f = factorize(Matrix::Identity(3, 3), 1e-12);
  EXPECT_EQ(f.rank, 3);
  EXPECT_EQ(f.right_nullity(), 0);
  EXPECT_EQ(f.left_nullity(), 0);
  for (Index i = 0; i < 3; ++i) EXPECT_NEAR(f.sigma[i], 1.0, 1e-14);
  ASSERT_TRUE(f.kappa.has_value());
  EXPECT_NEAR(*f.kappa, 1.0, 1e-12);
}

TEST(Factorize, ZeroMatrix) {
  const SpectralData f = factorize(Matrix::Zero(2, 4), 1e-12);
  EXPECT_EQ(f.rank, 0);
  EXPECT_EQ(f.right_nullity(), 4);
  EXPECT_EQ(f.left_nullity(), 2);
  EXPECT_FALSE(f.kappa.has_value());
  check_invariants(Matrix::Zero(2, 4), f);
}

TEST(Factorize, Cos40ConditionNumber) {
  const Matrix a = cos_test_matrix(40);
  const SpectralData f = factorize(a, default_rank_tol(a));
  EXPECT_EQ(f.rank, 40);
  ASSERT_TRUE(f.kappa.has_value());
  EXPECT_NEAR(*f.kappa, 621.0, 0.01 * 621.0);
  check_invariants(a, f);
}

TEST(Factorize, RejectsNonFinite) {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
  EXPECT_THROW(factorize(a, 0.0), invalid_input_error);
  EXPECT_THROW(factorize(Matrix::Identity(2, 2), -1.0),
               invalid_parameter_error);
}

TEST(Factorize, InvariantsOnRandomMatrices) {
  RandomStream rs(101);
  for (int trial = 0; trial < 20; ++trial) {
    const Index m = 2 + static_cast<Index>(rs.next_u64() % 59);
    const Index n = 2 + static_cast<Index>(rs.next_u64() % 59);
    Matrix a = trial % 2 == 0 ? random_complex(rs, m, n) : random_real(rs, m, n);
    if (trial % 3 == 0) {
      const Index def = 1 + static_cast<Index>(rs.next_u64() % 2);
      if (def < std::min(m, n)) a = inject_rank_deficiency(a, def);
    }
    const SpectralData f = factorize(a, default_rank_tol(a));
    check_invariants(a, f);
  }
}

TEST(Factorize, RealInputGivesRealBlocks) {
  RandomStream rs(7);
  const Matrix a = random_real(rs, 6, 4);
  const SpectralData f = factorize(a, default_rank_tol(a));
  EXPECT_TRUE(is_real(f.u1));
  EXPECT_TRUE(is_real(f.v2));
}

TEST(Factorize, ScaleConsistency) {
  RandomStream rs(55);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix a = random_complex(rs, 8, 5);
    const Complex alpha = 3.7 * rs.uniform_complex() + Complex(0.5, 0.0);
    const SpectralData fa = factorize(a, 0.0);
    const SpectralData fs = factorize(alpha * a, 0.0);
    ASSERT_EQ(fa.sigma.size(), fs.sigma.size());
    for (Index i = 0; i < fa.sigma.size(); ++i) {
      EXPECT_NEAR(fs.sigma[i], std::abs(alpha) * fa.sigma[i],
                  1e-12 * fs.sigma[0]);
    }
  }
}

TEST(Pseudoinverse, DiagonalAndZero) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const Matrix dp = pseudoinverse(factorize(d, 1e-12));
  EXPECT_NEAR(std::abs(dp(0, 0) - Complex(0.5)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dp(1, 1) - Complex(0.25)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(dp(0, 1)), 0.0, 1e-14);

  const Matrix zp = pseudoinverse(factorize(Matrix::Zero(2, 4), 1e-12));
  EXPECT_EQ(zp.rows(), 4);
  EXPECT_EQ(zp.cols(), 2);
  EXPECT_EQ(zp.norm(), 0.0);
}

TEST(Pseudoinverse, RankOneProjector) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const Matrix ap = pseudoinverse(factorize(a, 1e-12));
  EXPECT_LE((ap - a).norm(), 1e-14);
}

TEST(Pseudoinverse, MoorePenroseIdentities) {
  RandomStream rs(2024);
  for (int trial = 0; trial < 15; ++trial) {
    const Index m = 2 + static_cast<Index>(rs.next_u64() % 59);
    const Index n = 2 + static_cast<Index>(rs.next_u64() % 59);
    Matrix a = trial % 2 == 0 ? random_complex(rs, m, n) : random_real(rs, m, n);
    if (trial % 3 == 1 && std::min(m, n) > 2) {
      a = inject_rank_deficiency(a, 1 + static_cast<Index>(rs.next_u64() % 2));
    }
    const Matrix ap = pseudoinverse(factorize(a, default_rank_tol(a)));
    EXPECT_LE((a * ap * a - a).norm(), 1e-10 * a.norm());
    EXPECT_LE((ap * a * ap - ap).norm(), 1e-10 * ap.norm());
    EXPECT_LE(((a * ap).adjoint() - a * ap).norm(), 1e-10 * ap.norm() * a.norm());
    EXPECT_LE(((ap * a).adjoint() - ap * a).norm(), 1e-10 * ap.norm() * a.norm());
  }
}

TEST(GeneralizedCondition, BasicCases) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 10.0;
  EXPECT_NEAR(generalized_condition(d, 1e-12), 10.0, 1e-12);

  // Any unitary matrix has condition 1.
  RandomStream rs(3);
  const Matrix q =
      Eigen::HouseholderQR<Matrix>(testsupport::random_complex(rs, 5, 5))
          .householderQ();
  EXPECT_NEAR(generalized_condition(q, 1e-12), 1.0, 1e-12);

  EXPECT_THROW(generalized_condition(Matrix::Zero(3, 3), 1e-12),
               invalid_input_error);
}

TEST(NonzeroEigenvalues, BasicCases) {
  Matrix d = Matrix::Zero(2, 2);
  d(1, 1) = 3.0;
  auto ev = nonzero_eigenvalues(d, 1e-12);
  ASSERT_EQ(ev.size(), 1u);
  EXPECT_NEAR(std::abs(ev[0] - Complex(3.0)), 0.0, 1e-12);

  ev = nonzero_eigenvalues(Matrix::Identity(4, 4), 1e-12);
  EXPECT_EQ(ev.size(), 4u);
  for (const Complex& v : ev) EXPECT_NEAR(std::abs(v - Complex(1.0)), 0.0, 1e-12);

  Matrix rot = Matrix::Zero(2, 2);
  rot(0, 1) = 1.0;
  rot(1, 0) = -1.0;
  ev = nonzero_eigenvalues(rot, 1e-12);
  ASSERT_EQ(ev.size(), 2u);
  std::sort(ev.begin(), ev.end(),
            [](const Complex& a, const Complex& b) { return a.imag() < b.imag(); });
  EXPECT_NEAR(std::abs(ev[0] - Complex(0.0, -1.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(ev[1] - Complex(0.0, 1.0)), 0.0, 1e-12);

  EXPECT_THROW(nonzero_eigenvalues(Matrix::Zero(2, 3), 1e-12), shape_error);
}

}  // namespace
