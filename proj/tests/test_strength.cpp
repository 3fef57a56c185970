#include <gtest/gtest.h>

#include "brauer/error.hpp"
#include "brauer/rng.hpp"
#include "brauer/strength.hpp"
#include "support.hpp"

using namespace brauer;
using namespace brauer::testing;

namespace {

// Every nonzero linear form in n variables.
std::vector<Form> linear_forms(const FieldPtr& fp, int n) {
  std::vector<Form> out;
  odometer(*fp, n, [&](const Vec& c) {
    if (!is_zero_vec(c)) out.push_back(Form::linear(fp, c));
    return false;
  });
  return out;
}

// Least s <= 2 with f = sum_{i<s} l_i m_i over linear forms, or 3.
int quadric_strength_brute(const Form& f) {
  if (f.is_zero()) return 0;
  auto lin = linear_forms(f.field_ptr(), f.nvars());
  std::vector<Form> products;
  for (std::size_t i = 0; i < lin.size(); ++i)
    for (std::size_t j = i; j < lin.size(); ++j) products.push_back(lin[i] * lin[j]);
  for (const auto& p : products)
    if (p == f) return 1;
  for (const auto& p : products) {
    Form rest = f - p;
    for (const auto& p2 : products)
      if (p2 == rest) return 2;
  }
  return 3;
}

}  // namespace

TEST(Strength, SingleProduct) {
  FieldPtr fp = FqField::make(2);
  Form f = parse_form(fp, "x1*x2");
  StrengthResult r = strength_exhaustive(f);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.value, 1);
  ASSERT_EQ(r.witness.size(), 1u);
  EXPECT_TRUE(verify_decomposition(f, r.witness));
}

TEST(Strength, HyperbolicPairOverF2) {
  FieldPtr fp = FqField::make(2);
  Form f = parse_form(fp, "x1*x2+x3*x4");
  StrengthResult r = strength_exhaustive(f);
  EXPECT_TRUE(r.exact());
  EXPECT_EQ(r.value, 2);
  EXPECT_EQ(quadric_strength_brute(f), 2);
  EXPECT_TRUE(verify_decomposition(f, r.witness));
}

TEST(Strength, LinearFormsAreInfinite) {
  FieldPtr fp = FqField::make(3);
  StrengthResult r = strength_exhaustive(parse_form(fp, "x1+2*x2"));
  EXPECT_TRUE(r.infinite());
  EXPECT_TRUE(r.exact());
}

TEST(Strength, ZeroFormIsZero) {
  FieldPtr fp = FqField::make(3);
  StrengthResult r = strength_exhaustive(Form(fp, 3, 2));
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(r.witness.empty());
}

TEST(Strength, MatchesBruteForceOnSmallQuadrics) {
  Rng rng(11);
  for (std::uint32_t q : {2u, 3u}) {
    FieldPtr fp = FqField::make(q);
    for (int t = 0; t < 25; ++t) {
      Form f = random_form(fp, q == 2 ? 4 : 3, 2, rng);
      StrengthResult r = strength_exhaustive(f);
      ASSERT_TRUE(r.exact());
      int brute = quadric_strength_brute(f);
      if (brute <= 2) EXPECT_EQ(r.value, brute) << format_infix(f);
      EXPECT_EQ(static_cast<int>(r.witness.size()), r.value);
      EXPECT_TRUE(verify_decomposition(f, r.witness));
    }
  }
}

TEST(Strength, CubicWitnessesVerify) {
  Rng rng(12);
  FieldPtr fp = FqField::make(2);
  for (int t = 0; t < 10; ++t) {
    Form f = random_form(fp, 3, 3, rng);
    StrengthResult r = strength_exhaustive(f);
    if (!r.exact() || r.infinite()) continue;
    EXPECT_EQ(static_cast<int>(r.witness.size()), r.value);
    EXPECT_TRUE(verify_decomposition(f, r.witness)) << format_infix(f);
  }
}

TEST(Strength, TinyBudgetGivesLowerBound) {
  FieldPtr fp = FqField::make(3);
  Budget b;
  b.strength_nodes = 5;
  StrengthResult r = strength_exhaustive(parse_form(fp, "x1*x2+x3*x4+x5*x6"), b);
  EXPECT_FALSE(r.exact());
  EXPECT_LE(r.value, 3);
}

TEST(Strength, RestrictionInequality) {
  // str(f) <= str(f|W) + codim W, exhaustively on both sides.
  Rng rng(13);
  FieldPtr fp = FqField::make(2);
  int equality = 0;
  for (int t = 0; t < 30; ++t) {
    Form f = random_form(fp, 4, 2, rng);
    Mat basis;
    int k = 2 + static_cast<int>(rng.below(2));
    while (true) {
      basis.clear();
      for (int i = 0; i < k; ++i) {
        Vec v(4);
        for (auto& x : v) x = fp->from_code(static_cast<std::uint32_t>(rng.below(2)));
        basis.push_back(v);
      }
      if (independent(*fp, basis, 4)) break;
    }
    StrengthResult whole = strength_exhaustive(f);
    StrengthResult part = strength_exhaustive(pullback(f, basis));
    ASSERT_TRUE(whole.exact() && part.exact());
    if (part.infinite()) continue;
    EXPECT_LE(whole.value, part.value + (4 - k));
    if (whole.value == part.value + (4 - k)) ++equality;
  }
  EXPECT_GT(equality, 0);
}

// Tuples -------------------------------------------------------------------------

TEST(TupleStrength, EmptyIsInfinite) {
  EXPECT_TRUE(tuple_strength(FormTuple(FqField::make(2), 3, {})).infinite());
}

TEST(TupleStrength, RepeatedMemberGivesZero) {
  FieldPtr fp = FqField::make(2);
  Form f = parse_form(fp, "x1*x2");
  StrengthResult r = tuple_strength(FormTuple(fp, 2, {f, f}));
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(r.exact());
}

TEST(TupleStrength, SquaresOverF3) {
  FieldPtr fp = FqField::make(3);
  Form a = parse_form(fp, "x1^2", 2), b = parse_form(fp, "x2^2", 2);
  // Minimum over all eight nontrivial combinations, by brute force.
  int brute = 99;
  for (int c1 = 0; c1 < 3; ++c1)
    for (int c2 = 0; c2 < 3; ++c2) {
      if (!c1 && !c2) continue;
      brute = std::min(brute, quadric_strength_brute(a.scaled(fp->from_int(c1)) + b.scaled(fp->from_int(c2))));
    }
  StrengthResult r = tuple_strength(FormTuple(fp, 2, {a, b}));
  EXPECT_EQ(brute, 1);
  EXPECT_EQ(r.value, brute);
  ASSERT_EQ(r.combination.size(), 2u);
}

// Diagonal bound -------------------------------------------------------------------

TEST(DiagonalBound, SixCubesOverF7) {
  FieldPtr fp = FqField::make(7);
  EXPECT_EQ(diagonal_rank_bound(parse_form(fp, "x1^3+x2^3+x3^3+x4^3+x5^3+x6^3")), 3);
}

TEST(DiagonalBound, Errors) {
  FieldPtr f3 = FqField::make(3);
  try {
    diagonal_rank_bound(parse_form(f3, "x1^3"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CharDividesDegree);
  }
  try {
    diagonal_rank_bound(parse_form(f3, "x1*x2"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotDiagonal);
  }
}

TEST(DiagonalBound, ConsistentWithExhaustiveStrength) {
  Rng rng(14);
  for (std::uint32_t q : {3u, 5u}) {
    FieldPtr fp = FqField::make(q);
    for (int n = 1; n <= 4; ++n) {
      Form f = random_diagonal(fp, n, 2, rng);
      StrengthResult r = strength_exhaustive(f);
      if (r.exact()) EXPECT_GE(r.value, diagonal_rank_bound(f)) << format_infix(f);
    }
  }
}

// Jacobian probe ---------------------------------------------------------------------

TEST(JacobianProbe, SingleSquare) {
  CodimEstimate c = jacobian_codim_probe(parse_form(FqField::make(5), "x1^2", 4), 200);
  EXPECT_EQ(c.codim, 1);
  EXPECT_TRUE(c.exact_linear);
  EXPECT_FALSE(c.certified);
}

TEST(JacobianProbe, FullRankQuadric) {
  FieldPtr fp = FqField::make(7);
  CodimEstimate c = jacobian_codim_probe(parse_form(fp, "x1^2+2*x2^2+3*x3^2+x4*x5"), 200);
  EXPECT_EQ(c.codim, 5);
}

TEST(JacobianProbe, ProductIsLow) {
  FieldPtr fp = FqField::make(5);
  CodimEstimate c = jacobian_codim_probe(parse_form(fp, "x1*x2", 6), 200);
  EXPECT_EQ(c.codim, 2);
}

TEST(JacobianProbe, CubicEstimateIsBounded) {
  FieldPtr fp = FqField::make(3);
  CodimEstimate c = jacobian_codim_probe(parse_form(fp, "x1*x2*x3+x4^2*x5"), 300, 2);
  EXPECT_FALSE(c.exact_linear);
  EXPECT_GE(c.codim, 0);
  EXPECT_LE(c.codim, 5);
  EXPECT_EQ(c.trials, 300);
}
