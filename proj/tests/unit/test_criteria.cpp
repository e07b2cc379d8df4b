#include <gtest/gtest.h>

#include "oracles.hpp"
#include "triad/contractions.hpp"
#include "triad/criteria.hpp"
#include "triad/generators.hpp"

using namespace triad;

TEST(Classify, ClassicalDiagonalIsInAllClasses) {
  const TriadClassification c = classify(canonical("classical_diag", 2));
  EXPECT_TRUE(c.is_state);
  EXPECT_TRUE(c.ppt);
  EXPECT_TRUE(c.spc);
  EXPECT_TRUE(c.invariant);
  EXPECT_NEAR(c.ccnr_value, 1.0, 1e-12);
}

TEST(Classify, Bell) {
  const TriadClassification c = classify(canonical("bell", 2));
  EXPECT_TRUE(c.is_state);
  EXPECT_FALSE(c.ppt);
  EXPECT_NEAR(c.min_eig_partial_transpose, -0.5, 1e-10);
  EXPECT_NEAR(c.ccnr_value, 2.0, 1e-9);
}

TEST(Classify, IdentityPlusU) {
  const TriadClassification c = classify(canonical("identity_plus_u", 2));
  EXPECT_TRUE(c.invariant);
  EXPECT_TRUE(c.ppt);
  EXPECT_LT(c.invariance_residual, 1e-15);
}

TEST(Classify, RejectsRectangularInput) {
  EXPECT_THROW(classify(BipartiteOperator::identity(2, 3)), Error);
}

TEST(Classify, NonStateIsFlagged) {
  const TriadClassification c = classify(BipartiteOperator(2, 2, -Matrix::Identity(4, 4)));
  EXPECT_FALSE(c.is_state);
}

TEST(Ccnr, FlagsBellOnly) {
  EXPECT_TRUE(ccnr_entanglement_flag(canonical("bell", 2)));
  EXPECT_FALSE(ccnr_entanglement_flag(canonical("classical_diag", 3)));
  Rng rng(1);
  const Matrix rho = sample::random_psd(rng, 2, 2), sigma = sample::random_psd(rng, 2, 1);
  EXPECT_FALSE(ccnr_entanglement_flag(BipartiteOperator(2, 2, oracle::kr(rho, sigma))));
  EXPECT_THROW(ccnr_entanglement_flag(BipartiteOperator(2, 2, -Matrix::Identity(4, 4))), Error);
}

TEST(BoundGammaPt, MaximallyMixed) {
  for (int k = 2; k <= 3; ++k) {
    const BoundReport b = bound_gamma_pt(BipartiteOperator(k, k, Matrix::Identity(k * k, k * k) / (k * k)));
    EXPECT_NEAR(b.lhs, 1.0 / (k * k), 1e-15);
    EXPECT_NEAR(b.rhs, 1.0 / k, 1e-15);
    EXPECT_TRUE(b.bound_holds);
  }
}

TEST(BoundGammaPt, BellIsTight) {
  const BoundReport b = bound_gamma_pt(canonical("bell", 2));
  EXPECT_NEAR(b.lhs, 0.5, 1e-14);
  EXPECT_NEAR(b.op_norm_a, 0.5, 1e-14);
  EXPECT_NEAR(b.op_norm_b, 0.5, 1e-14);
  EXPECT_NEAR(b.op_norm_realign, 0.5, 1e-14);
  EXPECT_TRUE(b.bound_holds);
  EXPECT_NEAR(b.margin, 0.0, 1e-14);
}

TEST(BoundGammaPt, RandomStatesSatisfyIt) {
  for (int s = 0; s < 100; ++s) {
    const BoundReport b = bound_gamma_pt(random_density(3, 1 + s % 9, 500 + static_cast<std::uint64_t>(s)));
    EXPECT_TRUE(b.bound_holds) << s;
  }
  EXPECT_THROW(bound_gamma_pt(BipartiteOperator(2, 2, -Matrix::Identity(4, 4))), Error);
}

TEST(BoundRealignSq, ProductState) {
  Rng rng(2);
  const Matrix rho = sample::random_psd(rng, 2, 2), sigma = sample::random_psd(rng, 2, 2);
  const BoundReport b = bound_realign_sq(BipartiteOperator(2, 2, oracle::kr(rho, sigma)));
  EXPECT_NEAR(b.lhs, rho.squaredNorm() * sigma.squaredNorm(), 1e-13);
  EXPECT_LE(b.lhs, operator_norm(rho) * operator_norm(sigma) + 1e-14);
  EXPECT_TRUE(b.bound_holds);
}

TEST(BoundRealignSq, BellEquality) {
  const BoundReport b = bound_realign_sq(canonical("bell", 2));
  EXPECT_NEAR(b.lhs, 0.25, 1e-14);
  EXPECT_NEAR(b.rhs, 0.25, 1e-14);
  EXPECT_TRUE(b.bound_holds);
}

TEST(BoundRealignSq, RandomStatesSatisfyIt) {
  for (int s = 0; s < 100; ++s) {
    EXPECT_TRUE(bound_realign_sq(random_density(3, 1 + s % 9, 900 + static_cast<std::uint64_t>(s))).bound_holds) << s;
  }
}

TEST(BoundTriad, EqualityCases) {
  const BipartiteOperator cd = canonical("classical_diag", 2);
  const BoundReport b = bound_triad(cd, classify(cd));
  EXPECT_NEAR(b.lhs, 0.5, 1e-14);
  EXPECT_NEAR(b.rhs, 0.5, 1e-14);
  EXPECT_TRUE(b.bound_holds);

  const BipartiteOperator ip = canonical("identity_plus_u", 2);
  const BoundReport c = bound_triad(ip, classify(ip));
  EXPECT_NEAR(c.lhs, 0.5, 1e-14);
  EXPECT_NEAR(c.op_norm_a, 0.5, 1e-14);
  EXPECT_NEAR(c.op_norm_realign, 0.5, 1e-14);
  EXPECT_TRUE(c.bound_holds);
}

TEST(BoundTriad, RandomSpcStates) {
  for (int s = 0; s < 50; ++s) {
    const BipartiteOperator g = random_spc(3, 40 + static_cast<std::uint64_t>(s));
    const BoundReport b = bound_triad(g, classify(g));
    EXPECT_GE(b.margin, -1e-9);
    EXPECT_TRUE(b.bound_holds);
  }
}

TEST(BoundTriad, RequiresTriadClass) {
  const BipartiteOperator bell = canonical("bell", 2);
  try {
    bound_triad(bell, classify(bell));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionNotMet);
  }
}

TEST(PptPair, Fixtures) {
  for (const char* name : {"identity_plus_u", "classical_diag"}) {
    const PptPairReport r = ppt_pair_forces_invariance(canonical(name, 2));
    EXPECT_TRUE(r.both_ppt) << name;
    EXPECT_LT(r.realign_distance, 1e-15) << name;
  }
  EXPECT_FALSE(ppt_pair_forces_invariance(canonical("bell", 2)).both_ppt);
}
