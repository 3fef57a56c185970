#include <gtest/gtest.h>

#include "brauer/error.hpp"
#include "brauer/ortho.hpp"
#include "brauer/search.hpp"
#include "support.hpp"

using namespace brauer;
using namespace brauer::testing;

namespace {

bool is_common_zero(const std::vector<Form>& forms, const Vec& x) {
  if (is_zero_vec(x)) return false;
  for (const auto& f : forms)
    if (f.eval(x).code != 0) return false;
  return true;
}

}  // namespace

TEST(BrauerSolve, LinearForm) {
  FieldPtr fp = FqField::make(5);
  std::vector<Form> fs = {parse_form(fp, "x1+2*x2+3*x3")};
  Vec x = brauer_solve(fp, 3, fs);
  EXPECT_TRUE(is_common_zero(fs, x));
}

TEST(BrauerSolve, SumOfThreeSquaresOverF3) {
  FieldPtr fp = FqField::make(3);
  Vec x = brauer_solve(fp, 3, {parse_form(fp, "x1^2+x2^2+x3^2")});
  EXPECT_EQ(x, (Vec{fp->one(), fp->one(), fp->one()}));
}

TEST(BrauerSolve, ProvesAbsenceBySmallExhaustion) {
  FieldPtr fp = FqField::make(5);
  try {
    brauer_solve(fp, 2, {parse_form(fp, "x1^2+2*x2^2")});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSolution);
  }
}

TEST(BrauerSolve, AgreesWithEnumerationOnSmallSystems) {
  Rng rng(21);
  FieldPtr fp = FqField::make(2, 2);
  int solved = 0;
  for (int t = 0; t < 20; ++t) {
    int n = 3 + static_cast<int>(rng.below(4));
    std::vector<Form> fs = {random_form(fp, n, 2, rng), random_form(fp, n, 2, rng)};
    bool exists = odometer(*fp, n, [&](const Vec& x) { return is_common_zero(fs, x); });
    try {
      Vec x = brauer_solve(fp, n, fs);
      EXPECT_TRUE(exists);
      EXPECT_TRUE(is_common_zero(fs, x));
      ++solved;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::NoSolution) << e.what();
      EXPECT_FALSE(exists);
    }
  }
  EXPECT_GT(solved, 0);
}

TEST(BrauerSolve, DiagonalSolvablePairsOverF4) {
  Rng rng(22);
  FieldPtr fp = FqField::make(2, 2);
  for (int t = 0; t < 10; ++t) {
    std::vector<Form> fs = {random_form(fp, 10, 2, rng), random_form(fp, 10, 2, rng)};
    Vec x = brauer_solve(fp, 10, fs);
    EXPECT_TRUE(is_common_zero(fs, x));
  }
}

TEST(BrauerSolve, MixedDegreesWithoutLeaf) {
  Rng rng(23);
  FieldPtr fp = FqField::make(7);
  SolveOptions opts;
  opts.use_leaf = false;
  for (int t = 0; t < 5; ++t) {
    std::vector<Form> fs = {random_diagonal(fp, 12, 3, rng), random_form(fp, 12, 1, rng)};
    Vec x = brauer_solve(fp, 12, fs, Budget{}, opts);
    EXPECT_TRUE(is_common_zero(fs, x));
  }
}

TEST(FindPoint, HonoursNonvanishingConditions) {
  FieldPtr fp = FqField::make(5);
  PointQuery q;
  q.zeros = {parse_form(fp, "x1^2-x2^2")};
  q.nonzero = {parse_form(fp, "x1", 2)};
  Rng rng(1);
  auto x = find_point(fp, 2, q, Budget{}, rng);
  ASSERT_TRUE(x.has_value());
  EXPECT_TRUE(satisfies(q, *x));
  EXPECT_NE((*x)[0].code, 0u);
}

TEST(FindPoint, AcceptPredicateIsApplied) {
  FieldPtr fp = FqField::make(3);
  PointQuery q;
  q.zeros = {parse_form(fp, "x1+x2+x3")};
  q.accept = [](const Vec& x) { return x[2].code == 2; };
  Rng rng(2);
  auto x = find_point(fp, 3, q, Budget{}, rng);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[2].code, 2u);
  EXPECT_TRUE(satisfies(q, *x));
}

TEST(FindPoint, ImpossibleQueryReturnsNothing) {
  FieldPtr fp = FqField::make(3);
  PointQuery q;
  q.zeros = {parse_form(fp, "x1", 2), parse_form(fp, "x2", 2)};
  Rng rng(3);
  EXPECT_FALSE(find_point(fp, 2, q, Budget{}, rng).has_value());
}

TEST(FindPoint, DeterministicForAFixedSeed) {
  FieldPtr fp = FqField::make(7);
  Rng r0(4);
  PointQuery q;
  q.zeros = {random_form(fp, 8, 3, r0)};
  q.nonzero = {parse_form(fp, "x1", 8)};
  Rng a(9), b(9);
  EXPECT_EQ(find_point(fp, 8, q, Budget{}, a), find_point(fp, 8, q, Budget{}, b));
}

TEST(Sweep, LowSupportOrder) {
  FieldPtr fp = FqField::make(3);
  std::vector<Vec> seen;
  sweep_low_support(*fp, 4, 2, 1000, [&](const Vec& v) {
    seen.push_back(v);
    return false;
  });
  // 4 weight-one vectors, then C(4,2) * 2 of weight two.
  ASSERT_EQ(seen.size(), 4u + 6u * 2u);
  auto weight = [](const Vec& v) {
    int w = 0;
    for (Elem x : v) w += x.code != 0;
    return w;
  };
  for (std::size_t k = 1; k < seen.size(); ++k) EXPECT_LE(weight(seen[k - 1]), weight(seen[k]));
  for (const auto& v : seen) {
    std::size_t lead = 0;
    while (v[lead].code == 0) ++lead;
    EXPECT_EQ(v[lead], fp->one());
  }
}

TEST(Sweep, ProjectiveCountAndCap) {
  FieldPtr fp = FqField::make(3);
  long count = 0;
  sweep_projective(*fp, 3, 1000, [&](const Vec&) {
    ++count;
    return false;
  });
  EXPECT_EQ(count, 13);
  try {
    sweep_projective(*fp, 8, 100, [](const Vec&) { return false; });
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
