#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triad/contractions.hpp"
#include "triad/tensor.hpp"

using namespace triad;

namespace {

Matrix pauli_x() {
  Matrix s = Matrix::Zero(2, 2);
  s(0, 1) = s(1, 0) = 1.0;
  return s;
}

}  // namespace

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ((kron(Matrix::Identity(2, 2), Matrix::Identity(2, 2)) - Matrix::Identity(4, 4)).norm(), 0.0);
}

TEST(Kron, ElementaryTensorHasSingleEntry) {
  const Matrix k = kron(oracle::unit(2, 2, 0, 0), oracle::unit(2, 2, 1, 1));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 1.0;
  EXPECT_EQ((k - expected).norm(), 0.0);
}

TEST(Kron, PauliXSquaredIsAntiDiagonal) {
  const Matrix k = kron(pauli_x(), pauli_x());
  Matrix expected = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) expected(i, 3 - i) = 1.0;
  EXPECT_EQ((k - expected).norm(), 0.0);
}

TEST(Kron, MatchesBlockOracleOnRandomFactors) {
  Rng rng(11);
  for (int k = 1; k <= 3; ++k) {
    const Matrix a = sample::random_complex(rng, k, k), b = sample::random_complex(rng, k + 1, k + 1);
    EXPECT_LT((kron(a, b) - oracle::kr(a, b)).norm(), 1e-14);
    const BipartiteOperator op = kron(LocalOperator(a), LocalOperator(b));
    EXPECT_EQ(op.dim_a(), k);
    EXPECT_EQ(op.dim_b(), k + 1);
  }
}

TEST(BipartiteOperator, IndexIsRowMajorComposite) {
  const BipartiteOperator g(2, 3, Matrix::Zero(6, 6));
  EXPECT_EQ(g.index(1, 2), 5);
  EXPECT_EQ(g.index(0, 1), 1);
  EXPECT_THROW(BipartiteOperator(2, 2, Matrix::Zero(3, 3)), Error);
}

TEST(HermitianEig, Identity) {
  const SpectralData s = hermitian_eig(Matrix::Identity(2, 2));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
}

TEST(HermitianEig, FlipHasSymmetricAndAntisymmetricSpectrum) {
  const SpectralData s = hermitian_eig(flip(2).matrix());
  ASSERT_EQ(s.eigenvalues.size(), 4);
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(3), -1.0, 1e-14);
}

TEST(HermitianEig, DiagonalIsSortedDescendingWithUnitVectors) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 3.0;
  const SpectralData s = hermitian_eig(d);
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(HermitianEig, ReconstructsRandomHermitian) {
  Rng rng(3);
  const Matrix h = sample::random_hermitian(rng, 6);
  const SpectralData s = hermitian_eig(h);
  EXPECT_LT((s.reconstruct() - h).norm(), 1e-12);
  EXPECT_LT((s.eigenvectors.adjoint() * s.eigenvectors - Matrix::Identity(6, 6)).norm(), 1e-12);
}

TEST(HermitianEig, RejectsNonHermitian) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 1) = 1.0;
  try {
    hermitian_eig(a);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotHermitian);
  }
}

TEST(Norms, Identity) {
  for (int k = 1; k <= 4; ++k) {
    const Norms n = norms(Matrix::Identity(k, k));
    EXPECT_NEAR(n.trace_norm, k, 1e-14);
    EXPECT_NEAR(n.frobenius_norm, std::sqrt(static_cast<double>(k)), 1e-14);
    EXPECT_NEAR(n.operator_norm, 1.0, 1e-14);
  }
}

TEST(Norms, RankOneUnitProjector) {
  Rng rng(5);
  Vector u = sample::random_vector(rng, 4);
  u /= u.norm();
  const Norms n = norms(u * u.transpose());
  EXPECT_NEAR(n.trace_norm, 1.0, 1e-14);
  EXPECT_NEAR(n.frobenius_norm, 1.0, 1e-14);
  EXPECT_NEAR(n.operator_norm, 1.0, 1e-14);
}

TEST(Norms, Flip) {
  const Norms n = norms(flip(2).matrix());
  EXPECT_NEAR(n.trace_norm, 4.0, 1e-14);
  EXPECT_NEAR(n.frobenius_norm, 2.0, 1e-14);
  EXPECT_NEAR(n.operator_norm, 1.0, 1e-14);
}

TEST(PsdCheck, Identity) {
  const PsdReport r = psd_check(Matrix::Identity(2, 2), 1e-9);
  EXPECT_TRUE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, 1.0, 1e-15);
}

TEST(PsdCheck, PartiallyTransposedBell) {
  Vector u = Vector::Zero(4);
  u(0) = u(3) = 1.0;
  const Matrix pt = oracle::partial_transpose(u * u.adjoint() / 2.0, 2, 2);
  const PsdReport r = psd_check(pt, 1e-9);
  EXPECT_FALSE(r.is_psd);
  EXPECT_NEAR(r.min_eigenvalue, -0.5, 1e-14);
}

TEST(PsdCheck, ZeroMatrix) {
  const PsdReport r = psd_check(Matrix::Zero(3, 3), 1e-9);
  EXPECT_TRUE(r.is_psd);
  EXPECT_EQ(r.min_eigenvalue, 0.0);
}

TEST(InvSqrtPsd, Identity) {
  EXPECT_LT((inv_sqrt_psd(LocalOperator::identity(2)).matrix() - Matrix::Identity(2, 2)).norm(), 1e-15);
}

TEST(InvSqrtPsd, Diagonal) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  d(1, 1) = 1.0;
  const Matrix r = inv_sqrt_psd(LocalOperator(d)).matrix();
  EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(r(1, 1).real(), 1.0, 1e-15);
}

TEST(InvSqrtPsd, PseudoInverseOnKernel) {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 4.0;
  const Matrix r = inv_sqrt_psd(LocalOperator(d)).matrix();
  EXPECT_NEAR(r(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r(1, 1)), 0.0, 1e-15);
}

TEST(InvSqrtPsd, SquaresToInverseOnRandomPd) {
  Rng rng(8);
  const Matrix p = sample::random_psd(rng, 4, 4);
  const Matrix r = inv_sqrt_psd(LocalOperator(p)).matrix();
  EXPECT_LT((r * p * r - Matrix::Identity(4, 4)).norm(), 1e-9);
}

TEST(Rank, RangeProjectionIsIdempotent) {
  Rng rng(9);
  const Matrix p = sample::random_psd(rng, 5, 2);
  EXPECT_EQ(numerical_rank(p), 2);
  const Matrix q = range_projection(p);
  EXPECT_LT((q * q - q).norm(), 1e-12);
  EXPECT_LT((q * p - p).norm(), 1e-12);
  EXPECT_EQ(range_basis(p).cols(), 2);
}

TEST(Mixture, SumsWeightedProducts) {
  Rng rng(10);
  const LocalOperator a(sample::random_psd(rng, 2, 1)), b(sample::random_psd(rng, 3, 1));
  const BipartiteOperator m = mixture({{0.25, a, b}, {0.75, a, b}});
  EXPECT_EQ(m.dim_a(), 2);
  EXPECT_EQ(m.dim_b(), 3);
  EXPECT_LT((m.matrix() - oracle::kr(a.matrix(), b.matrix())).norm(), 1e-15);
  EXPECT_THROW(mixture({{0.25, a, b}, {0.75, b, a}}), Error);
}
