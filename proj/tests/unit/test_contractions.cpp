#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triad/contractions.hpp"

using namespace triad;

namespace {

BipartiteOperator random_op(Rng& rng, int k, int m) {
  return BipartiteOperator(k, m, sample::random_complex(rng, k * m, k * m));
}

Matrix bell_projector(int k) {
  Vector u = Vector::Zero(k * k);
  for (int i = 0; i < k; ++i) u(i * k + i) = 1.0;
  return u * u.adjoint();
}

}  // namespace

TEST(PartialTranspose, ProductTransposesSecondFactor) {
  Rng rng(1);
  const Matrix a = sample::random_complex(rng, 2, 2), b = sample::random_complex(rng, 3, 3);
  const BipartiteOperator g(2, 3, oracle::kr(a, b));
  EXPECT_LT((partial_transpose(g).matrix() - oracle::kr(a, b.transpose())).norm(), 1e-14);
}

TEST(PartialTranspose, BellBecomesHalfFlip) {
  const BipartiteOperator g(2, 2, bell_projector(2) / 2.0);
  EXPECT_LT((partial_transpose(g).matrix() - oracle::flip(2) / 2.0).norm(), 1e-15);
}

TEST(PartialTranspose, DiagonalIsFixed) {
  Rng rng(2);
  const Matrix d = sample::random_complex(rng, 9, 1).col(0).asDiagonal();
  EXPECT_EQ((partial_transpose(BipartiteOperator(3, 3, d)).matrix() - d).norm(), 0.0);
}

TEST(PartialTranspose, MatchesOracleOnRectangularShapes) {
  Rng rng(3);
  for (auto [k, m] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 2}, std::pair{3, 3}}) {
    const BipartiteOperator g = random_op(rng, k, m);
    EXPECT_LT((partial_transpose(g).matrix() - oracle::partial_transpose(g.matrix(), k, m)).norm(), 1e-13);
  }
}

TEST(LeftTranspose, ProductTransposesFirstFactor) {
  Rng rng(4);
  const Matrix a = sample::random_complex(rng, 3, 3), b = sample::random_complex(rng, 2, 2);
  const BipartiteOperator g(3, 2, oracle::kr(a, b));
  EXPECT_LT((left_transpose(g).matrix() - oracle::kr(a.transpose(), b)).norm(), 1e-14);
}

TEST(LeftTranspose, HermitianInputGivesConjugatedPartialTranspose) {
  Rng rng(5);
  const BipartiteOperator g(3, 3, sample::random_hermitian(rng, 9));
  EXPECT_LT((left_transpose(g).matrix() - partial_transpose(g).matrix().conjugate()).norm(), 1e-14);
  EXPECT_EQ((left_transpose(BipartiteOperator::identity(2, 2)).matrix() - Matrix::Identity(4, 4)).norm(), 0.0);
}

TEST(Realign, ElementaryTensor) {
  const BipartiteOperator g(2, 2, oracle::kr(oracle::unit(2, 2, 0, 0), oracle::unit(2, 2, 1, 1)));
  const Matrix expected = oracle::kr(oracle::unit(2, 2, 0, 1), oracle::unit(2, 2, 0, 1));
  EXPECT_EQ((realign(g).matrix() - expected).norm(), 0.0);
}

TEST(Realign, IdentityAndBellSwap) {
  const BipartiteOperator id = BipartiteOperator::identity(2, 2);
  EXPECT_EQ((realign(id).matrix() - bell_projector(2)).norm(), 0.0);
  EXPECT_EQ((realign(BipartiteOperator(2, 2, bell_projector(2))).matrix() - Matrix::Identity(4, 4)).norm(), 0.0);
}

TEST(Realign, MatchesVecOracle) {
  Rng rng(6);
  for (int k = 2; k <= 3; ++k) {
    const BipartiteOperator g = random_op(rng, k, k);
    EXPECT_LT((realign(g).matrix() - oracle::realign(g.matrix(), k, k)).norm(), 1e-13);
  }
  const BipartiteOperator r = random_op(rng, 2, 3);
  EXPECT_LT((realign_rectangular(r) - oracle::realign(r.matrix(), 2, 3)).norm(), 1e-13);
  EXPECT_THROW(realign(r), Error);
}

TEST(Flip, SwapsMiddleIndices) {
  const Matrix f = flip(2).matrix();
  Matrix expected = Matrix::Identity(4, 4);
  expected.row(1).swap(expected.row(2));
  EXPECT_EQ((f - expected).norm(), 0.0);
}

TEST(Flip, SwapsProductFactors) {
  Rng rng(7);
  for (int k = 2; k <= 3; ++k) {
    const Matrix a = sample::random_complex(rng, k, k), b = sample::random_complex(rng, k, k);
    const Matrix f = flip(k).matrix();
    EXPECT_LT((f * oracle::kr(a, b) * f - oracle::kr(b, a)).norm(), 1e-13);
    EXPECT_NEAR(f.trace().real(), k, 0.0);
    EXPECT_LT((f - oracle::flip(k)).norm(), 1e-15);
  }
}

TEST(StarProduct, IdentityTimesIdentity) {
  const BipartiteOperator id = BipartiteOperator::identity(2, 2);
  EXPECT_LT((star_product(id, id).matrix() - 2.0 * Matrix::Identity(4, 4)).norm(), 1e-14);
}

TEST(StarProduct, ProductFormula) {
  Rng rng(8);
  const int k = 3;
  const Matrix a = sample::random_complex(rng, k, k), b = sample::random_complex(rng, k, k);
  const Matrix c = sample::random_complex(rng, k, k), d = sample::random_complex(rng, k, k);
  const BipartiteOperator s = star_product(BipartiteOperator(k, k, oracle::kr(a, b)), BipartiteOperator(k, k, oracle::kr(c, d)));
  EXPECT_LT((s.matrix() - (b * c.transpose()).trace() * oracle::kr(a, d)).norm(), 1e-12);
}

TEST(StarProduct, MatchesSandwichOracle) {
  Rng rng(9);
  for (int k = 2; k <= 3; ++k) {
    const BipartiteOperator g = random_op(rng, k, k), d = random_op(rng, k, k);
    EXPECT_LT((star_product(g, d).matrix() - oracle::star(g.matrix(), d.matrix(), k)).norm(), 1e-12);
  }
}

TEST(StarProduct, TraceIdentityOnPsdPairs) {
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    const int k = 2 + t % 2;
    const BipartiteOperator g(k, k, sample::random_psd(rng, k * k, 3)), d(k, k, sample::random_psd(rng, k * k, 2));
    const Complex lhs = star_product(g, d).matrix().trace();
    const Complex rhs = (oracle::trace_a(g.matrix(), k, k) * oracle::trace_b(d.matrix(), k, k).transpose()).trace();
    EXPECT_LT(std::abs(lhs - rhs), 1e-13);
  }
}

TEST(SlotPermutation, ParseAndCompose) {
  EXPECT_EQ(SlotPermutation::parse("e"), SlotPermutation::identity());
  EXPECT_EQ(SlotPermutation::parse("(34)"), SlotPermutation::transposition(3, 4));
  EXPECT_EQ(SlotPermutation::parse("(34)").to_string(), "(34)");
  EXPECT_EQ(SlotPermutation::all().size(), 24u);
  const SlotPermutation c = SlotPermutation::parse("(123)");
  EXPECT_EQ(c.compose(c).compose(c), SlotPermutation::identity());
  EXPECT_THROW(SlotPermutation::parse("(15)"), Error);
}

TEST(Contraction, IdentityPermutation) {
  Rng rng(11);
  const BipartiteOperator g = random_op(rng, 2, 2);
  EXPECT_EQ((contraction_by_permutation(SlotPermutation::identity(), g).matrix() - g.matrix()).norm(), 0.0);
}

TEST(Contraction, NamedTranspositions) {
  Rng rng(12);
  for (int k = 2; k <= 3; ++k) {
    const BipartiteOperator g = random_op(rng, k, k);
    const Matrix f = flip(k).matrix();
    EXPECT_LT((contraction_by_permutation(SlotPermutation::transposition(3, 4), g).matrix() - partial_transpose(g).matrix()).norm(), 1e-14);
    EXPECT_LT((contraction_by_permutation(SlotPermutation::transposition(1, 2), g).matrix() - left_transpose(g).matrix()).norm(), 1e-14);
    EXPECT_LT((contraction_by_permutation(SlotPermutation::transposition(2, 3), g).matrix() - realign(g).matrix()).norm(), 1e-14);
    EXPECT_LT((contraction_by_permutation(SlotPermutation::transposition(2, 4), g).matrix() - g.matrix() * f).norm(), 1e-13);
  }
}

TEST(Contraction, AllPermutationsMatchTensorOracle) {
  Rng rng(13);
  const BipartiteOperator g = random_op(rng, 2, 2);
  for (const SlotPermutation& p : SlotPermutation::all()) {
    EXPECT_LT((contraction_by_permutation(p, g).matrix() - oracle::contraction(p.images(), g.matrix(), 2)).norm(), 1e-13)
        << p.to_string();
  }
}

TEST(Contraction, CompositionActsInReverseOrder) {
  Rng rng(14);
  const BipartiteOperator g = random_op(rng, 2, 2);
  for (const SlotPermutation& s : SlotPermutation::all()) {
    for (const SlotPermutation& t : SlotPermutation::all()) {
      const Matrix once = contraction_by_permutation(s.compose(t), g).matrix();
      const Matrix twice = contraction_by_permutation(t, contraction_by_permutation(s, g)).matrix();
      ASSERT_LT((once - twice).norm(), 1e-13) << s.to_string() << " " << t.to_string();
    }
  }
}

TEST(Reshape, RoundTrip) {
  Rng rng(15);
  const Vector v = sample::random_vector(rng, 9);
  const Matrix m = reshape_to_matrix(v, 3);
  EXPECT_EQ(m(1, 2), v(5));
  EXPECT_EQ((reshape_to_vector(m) - v).norm(), 0.0);
}

TEST(RealignmentIdentities, HoldOnRandomInputs) {
  Rng rng(16);
  for (int k = 2; k <= 3; ++k) {
    IdentityInputs in{random_op(rng, k, k), random_op(rng, k, k),
                      LocalOperator(sample::random_complex(rng, k, k)), LocalOperator(sample::random_complex(rng, k, k)),
                      LocalOperator(sample::random_complex(rng, k, k)), LocalOperator(sample::random_complex(rng, k, k)),
                      sample::random_vector(rng, k * k), sample::random_vector(rng, k * k)};
    const auto checks = realignment_identities(in);
    ASSERT_EQ(checks.size(), 9u);
    for (const IdentityCheck& c : checks) EXPECT_LT(c.residual, 1e-11) << c.name;
  }
}
