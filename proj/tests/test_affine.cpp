#include <gtest/gtest.h>

#include "nilaffine/io/json_io.hpp"
#include "support.hpp"

using namespace nilaffine;
using namespace testing_support;

namespace {

AffineRep r3_to_h3() {
  // D_X row 3 = (x2/2, -x1/2, 0)
  ScalarMatrix d1(3, 3), d2(3, 3), d3(3, 3);
  d1(2, 1) = Rational(-1, 2);
  d2(2, 0) = Rational(1, 2);
  std::vector<ScalarVector> t{unit_vector<Scalar>(3, 0), unit_vector<Scalar>(3, 1), unit_vector<Scalar>(3, 2)};
  return AffineRep(abelian_algebra(3), heisenberg3(), t, {d1, d2, d3});
}

ScalarMatrix random_automorphism(std::mt19937_64& rng, const LieAlgebra& l) {
  if (l.is_abelian()) return random_invertible(rng, l.dim());
  // exp(ad x) is an automorphism of a nilpotent algebra.
  return exp_nilpotent(l.ad(random_vector(rng, l.dim())));
}

}  // namespace

TEST(AffineRep, TrivialRepsPass) {
  for (const auto& g : catalog()) {
    auto v = check_simply_transitive(trivial_rep(g));
    EXPECT_TRUE(v.overall()) << g.name();
  }
}

TEST(AffineRep, AbelianToHeisenbergPasses) {
  auto rep = r3_to_h3();
  auto v = check_simply_transitive(rep);
  EXPECT_TRUE(v.homomorphism.ok());
  EXPECT_TRUE(v.t_bijective);
  EXPECT_TRUE(v.linear_parts_nilpotent);
  ASSERT_TRUE(v.flag.has_value());
  for (const auto& d : rep.d()) EXPECT_TRUE(flag_is_strict_for(*v.flag, d));
  EXPECT_TRUE(is_nilpotent_matrix(rep.linear_part({1, 0, 0})));
}

TEST(AffineRep, FlippedEntryFailsAtFirstPair) {
  auto rep = r3_to_h3();
  auto d = rep.d();
  d[1](2, 0) = Rational(-1, 2);
  AffineRep bad(rep.source(), rep.target(), rep.t(), d);
  auto h = check_homomorphism(bad);
  ASSERT_FALSE(h.ok());
  EXPECT_EQ(h.violation->i, 0u);
  EXPECT_EQ(h.violation->j, 1u);
  // X3 - X3/2 + X3/2 no longer cancels; residual is lhs - rhs.
  EXPECT_EQ(h.violation->translation_residual, ScalarVector({0, 0, -1}));
  EXPECT_FALSE(check_simply_transitive(bad).overall());
}

TEST(AffineRep, ZeroTranslationIsNotBijective) {
  auto g = heisenberg3_plus_r();
  auto triv = trivial_rep(g);
  std::vector<ScalarVector> t(4, ScalarVector(4));
  AffineRep rep(g, g, t, triv.d());
  auto v = check_simply_transitive(rep);
  EXPECT_FALSE(v.t_bijective);
  EXPECT_EQ(v.t_rank, 0u);
  EXPECT_FALSE(v.overall());
}

TEST(AffineRep, DimensionMismatchOnlyFailsBijectivity) {
  std::vector<ScalarVector> t{unit_vector<Scalar>(3, 0), unit_vector<Scalar>(3, 1)};
  AffineRep rep(abelian_algebra(2), heisenberg3(), t, {ScalarMatrix(3, 3), ScalarMatrix(3, 3)});
  auto v = check_simply_transitive(rep);
  EXPECT_FALSE(v.dims_match);
  EXPECT_FALSE(v.t_bijective);
  EXPECT_TRUE(v.linear_parts_nilpotent);
}

TEST(AffineRep, NonNilpotentLinearPartIsReported) {
  // R1 has no bracket pairs, so any linear part is a homomorphism.
  auto g = abelian_algebra(1);
  AffineRep rep(g, g, {unit_vector<Scalar>(1, 0)}, {ScalarMatrix::identity(1)});
  auto v = check_simply_transitive(rep);
  EXPECT_TRUE(v.homomorphism.ok());
  EXPECT_FALSE(v.linear_parts_nilpotent);
  ASSERT_TRUE(v.non_nilpotent_combination.has_value());
  EXPECT_FALSE(is_nilpotent_matrix(rep.linear_part(*v.non_nilpotent_combination)));
}

TEST(AffineRep, RejectsNonDerivation) {
  ScalarMatrix bad = ScalarMatrix::identity(3);
  std::vector<ScalarVector> t(3, ScalarVector(3));
  try {
    AffineRep(abelian_algebra(3), heisenberg3(), t, {bad, ScalarMatrix(3, 3), ScalarMatrix(3, 3)});
    FAIL() << "expected RepError";
  } catch (const RepError& e) {
    EXPECT_EQ(e.d_index(), 0u);
    EXPECT_NE(std::string(e.what()).find("D1 is not a derivation"), std::string::npos);
  }
}

TEST(AffineRep, RejectsForeignIrrationals) {
  ScalarMatrix d(2, 2);
  d(1, 0) = Scalar::sqrt_d(2);
  std::vector<ScalarVector> t{unit_vector<Scalar>(2, 0), unit_vector<Scalar>(2, 1)};
  EXPECT_THROW(AffineRep(abelian_algebra(2), abelian_algebra(2), t, {d, ScalarMatrix(2, 2)}, 3), RepError);
}

class CorpusRep : public ::testing::TestWithParam<std::string> {};

TEST_P(CorpusRep, IsSimplyTransitive) {
  auto rep = io::load_rep(corpus(GetParam()));
  auto v = check_simply_transitive(rep);
  EXPECT_TRUE(v.homomorphism.ok());
  EXPECT_TRUE(v.t_bijective);
  EXPECT_TRUE(v.linear_parts_nilpotent);
}

TEST_P(CorpusRep, LinearPartsFormAHomomorphism) {
  // [D_i, D_j] = sum_k c^k_ij D_k, checked without the semidirect machinery.
  auto rep = io::load_rep(corpus(GetParam()));
  const auto& g = rep.source();
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) {
      ScalarMatrix rhs(rep.target().dim(), rep.target().dim());
      for (std::size_t k = 0; k < g.dim(); ++k) rhs += rep.d()[k] * g.structure_constant(i, j, k);
      EXPECT_EQ(commutator(rep.d()[i], rep.d()[j]), rhs);
    }
}

TEST_P(CorpusRep, SeededCombinationsAreNilpotent) {
  auto rep = io::load_rep(corpus(GetParam()));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) ASSERT_TRUE(is_nilpotent_matrix(rep.linear_part(random_vector(rng, rep.source().dim()))));
}

TEST_P(CorpusRep, InvariantUnderSourceBasisChange) {
  auto rep = io::load_rep(corpus(GetParam()));
  std::mt19937_64 rng(13);
  for (int k = 0; k < 3; ++k) {
    auto moved = change_source_basis(rep, random_invertible(rng, rep.source().dim()));
    EXPECT_TRUE(check_simply_transitive(moved).overall());
  }
}

TEST_P(CorpusRep, InvariantUnderTargetAutomorphism) {
  auto rep = io::load_rep(corpus(GetParam()));
  std::mt19937_64 rng(19);
  for (int k = 0; k < 3; ++k) {
    auto a = random_automorphism(rng, rep.target());
    auto moved = compose_target_automorphism(rep, a);
    EXPECT_TRUE(check_simply_transitive(moved).overall());
  }
}

INSTANTIATE_TEST_SUITE_P(Corpus, CorpusRep, ::testing::ValuesIn(corpus_reps()), [](const auto& info) {
  std::string name = info.param;
  for (auto& c : name)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return name;
});

TEST(AffineRep, ExactSqrtThreeCase) {
  auto rep = io::load_rep(corpus("reps/h3+R2_to_g5_6.json"));
  EXPECT_EQ(rep.field_d(), 3);
  EXPECT_EQ(rep.t()[2][2], Scalar(0, Rational(1, 3), 3));
  // x1/(-3+sqrt3) at (2,1)
  EXPECT_EQ(rep.d()[0](1, 0) * Scalar(-3, 1, 3), Scalar(1));
  EXPECT_TRUE(check_simply_transitive(rep).overall());
}
