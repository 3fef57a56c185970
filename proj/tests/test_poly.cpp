#include <gtest/gtest.h>

#include "brauer/error.hpp"
#include "brauer/poly.hpp"
#include "brauer/rng.hpp"
#include "support.hpp"

using namespace brauer;
using namespace brauer::testing;

namespace {

Vec random_vec(const FqField& F, int n, Rng& rng) {
  Vec v(n);
  for (auto& x : v) x = F.from_code(static_cast<std::uint32_t>(rng.below(F.q())));
  return v;
}

Mat random_independent(const FieldPtr& fp, int k, int n, Rng& rng) {
  while (true) {
    Mat m;
    for (int i = 0; i < k; ++i) m.push_back(random_vec(*fp, n, rng));
    if (independent(*fp, m, n)) return m;
  }
}

}  // namespace

// Forms ----------------------------------------------------------------------

TEST(Form, TermsStayHomogeneousAndCanonical) {
  FieldPtr fp = FqField::make(5);
  Form f = parse_form(fp, "x1^2 + 3*x1*x2 + 2*x1^2", 3);
  EXPECT_EQ(f.degree(), 2);
  EXPECT_EQ(f.nvars(), 3);
  EXPECT_EQ(f.coeff({2, 0, 0}), fp->from_int(3));
  f.add_term({1, 1, 0}, fp->from_int(2));  // 3 + 2 = 0 drops the term
  EXPECT_EQ(f.size(), 1u);
  Form sq = f * f;
  for (const auto& [e, c] : sq.terms()) {
    int s = 0;
    for (auto x : e) s += x;
    EXPECT_EQ(s, 4);
    EXPECT_NE(c.code, 0u);
  }
}

TEST(Form, RejectsInhomogeneousInput) {
  FieldPtr fp = FqField::make(3);
  EXPECT_THROW(parse_form(fp, "x1^2 + x2"), Error);
  Form f(fp, 2, 2);
  EXPECT_THROW(f.add_term({1, 0}, fp->one()), Error);
}

TEST(Form, EvalMatchesProductOfEvaluations) {
  Rng rng(1);
  FieldPtr fp = FqField::make(7);
  for (int t = 0; t < 20; ++t) {
    Form f = random_form(fp, 4, 2, rng), g = random_form(fp, 4, 3, rng);
    Vec x = random_vec(*fp, 4, rng);
    EXPECT_EQ((f * g).eval(x), fp->mul(f.eval(x), g.eval(x)));
    Form h = random_form(fp, 4, 2, rng);
    EXPECT_EQ((f + h).eval(x), fp->add(f.eval(x), h.eval(x)));
    EXPECT_EQ((f - f).size(), 0u);
  }
}

TEST(Form, CanonicalTextRoundTrip) {
  Rng rng(2);
  for (std::uint32_t q : {2u, 5u, 9u}) {
    FieldPtr fp = field_of_order(q);
    for (int d = 1; d <= 3; ++d) {
      Form f = random_form(fp, 4, d, rng);
      EXPECT_EQ(parse_form(fp, format_form(f)), f);
      EXPECT_EQ(parse_form(fp, format_infix(f), 4), f);
      EXPECT_EQ(format_form(parse_form(fp, format_form(f))), format_form(f));
    }
  }
}

TEST(Form, InfixRendering) {
  FieldPtr fp = FqField::make(5);
  EXPECT_EQ(format_infix(parse_form(fp, "2*x2*x1 + x1^2")), "x1^2+2*x1*x2");
}

TEST(System, ParseAndFormatRoundTrip) {
  System sys = parse_system("field GF(3)\nnvars 4\nx1*x2 + x3^2\nx1 + x4\n");
  ASSERT_EQ(sys.forms.size(), 2u);
  EXPECT_EQ(sys.nvars, 4);
  System again = parse_system(format_system(sys));
  EXPECT_EQ(again.forms, sys.forms);
  EXPECT_EQ(again.nvars, 4);
}

// Multi-degrees ---------------------------------------------------------------

TEST(MultiDegree, SortedAndLexicographic) {
  MultiDegree a({2, 3, 1});
  EXPECT_EQ(a.entries(), (std::vector<int>{3, 2, 1}));
  EXPECT_LT(MultiDegree({3, 2}), MultiDegree({3, 2, 1}));
  EXPECT_LT(MultiDegree({2, 2, 2, 2}), MultiDegree({3}));
  EXPECT_LT(MultiDegree({3, 1}), MultiDegree({3, 2}));
  EXPECT_THROW(MultiDegree({2, 0}), Error);
}

TEST(MultiDegree, RandomDescentTerminates) {
  // Replace one entry by any number of strictly smaller ones: the split step
  // used by regularization. Every such chain must end.
  Rng rng(9);
  for (int t = 0; t < 50; ++t) {
    std::vector<int> cur = {4, 3, 3};
    int steps = 0;
    while (!cur.empty() && steps < 100000) {
      MultiDegree before(cur);
      std::size_t k = rng.below(cur.size());
      int d = cur[k];
      cur.erase(cur.begin() + static_cast<long>(k));
      if (d > 1) {
        int pieces = static_cast<int>(rng.below(4));
        for (int j = 0; j < pieces; ++j) cur.push_back(1 + static_cast<int>(rng.below(d - 1)));
      }
      if (!cur.empty()) EXPECT_LT(MultiDegree(cur), before);
      ++steps;
    }
    EXPECT_TRUE(cur.empty());
  }
}

// Restriction -------------------------------------------------------------------

TEST(Restrict, DiagonalLine) {
  FieldPtr fp = FqField::make(3);
  Form f = parse_form(fp, "x1^2 + x2^2");
  Form r = restrict(f, Subspace(fp, 2, {{fp->one(), fp->one()}}));
  EXPECT_EQ(r, parse_form(fp, "2*x1^2"));
}

TEST(Restrict, FullSpaceIsIdentity) {
  Rng rng(4);
  FieldPtr fp = FqField::make(5);
  Form f = random_form(fp, 3, 3, rng);
  EXPECT_EQ(restrict(f, Subspace::full(fp, 3)), f);
}

TEST(Restrict, Functorial) {
  Rng rng(5);
  FieldPtr fp = FqField::make(7);
  for (int t = 0; t < 10; ++t) {
    Form f = random_form(fp, 5, 3, rng);
    Mat outer = random_independent(fp, 3, 5, rng);
    Mat inner = random_independent(fp, 2, 3, rng);
    Mat composite;
    for (const auto& c : inner) composite.push_back(combine(*fp, outer, c, 5));
    EXPECT_EQ(pullback(pullback(f, outer), inner), pullback(f, composite));
  }
}

TEST(Subspace, DirectSumRejectsOverlap) {
  FieldPtr fp = FqField::make(3);
  Subspace a(fp, 3, {{fp->one(), fp->zero(), fp->zero()}});
  Subspace b(fp, 3, {{fp->from_int(2), fp->zero(), fp->zero()}});
  try {
    a.direct_sum(b);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DependentVectors);
  }
  EXPECT_THROW(Subspace(fp, 3, {{fp->one(), fp->one(), fp->zero()}, {fp->from_int(2), fp->from_int(2), fp->zero()}}),
               Error);
}

// Plane coefficients and the D operators ---------------------------------------

TEST(PlaneCoeffs, Examples) {
  FieldPtr fp = FqField::make(5);
  Form xy2 = parse_form(fp, "x1*x2^2");
  Vec e1 = {fp->one(), fp->zero()}, e2 = {fp->zero(), fp->one()};
  Vec c = plane_coeffs(xy2, e1, e2);
  EXPECT_EQ(c, (Vec{fp->zero(), fp->one(), fp->zero(), fp->zero()}));
  Vec c2 = plane_coeffs(parse_form(fp, "x2^3"), e1, e2);
  EXPECT_EQ(c2, (Vec{fp->one(), fp->zero(), fp->zero(), fp->zero()}));
}

TEST(PlaneCoeffs, SumsAndEndpoints) {
  Rng rng(6);
  FieldPtr fp = FqField::make(7);
  for (int t = 0; t < 20; ++t) {
    Form f = random_form(fp, 4, 3, rng);
    Mat vw = random_independent(fp, 2, 4, rng);
    const Vec &v = vw[0], &w = vw[1];
    Vec c = plane_coeffs(f, v, w);
    Elem s = fp->zero();
    for (Elem x : c) s = fp->add(s, x);
    EXPECT_EQ(s, f.eval(added(*fp, v, w)));
    EXPECT_EQ(c[3], f.eval(v));
    EXPECT_EQ(c[0], f.eval(w));
  }
}

TEST(DOperator, CrossTermOfASquare) {
  FieldPtr fp = FqField::make(5);
  Form f = parse_form(fp, "x1^2");
  EXPECT_EQ(d_operator(f), parse_form(fp, "2*x1*x2", 2));
}

TEST(DOperator, VanishesOnPthPowers) {
  FieldPtr fp = FqField::make(3);
  EXPECT_TRUE(d_operator(parse_form(fp, "x1^3 + 2*x2^3")).is_zero());
}

TEST(DOperator, Linear) {
  Rng rng(7);
  FieldPtr fp = FqField::make(5);
  for (int t = 0; t < 10; ++t) {
    Form f = random_form(fp, 3, 3, rng), g = random_form(fp, 3, 3, rng);
    EXPECT_EQ(d_operator(f + g), d_operator(f) + d_operator(g));
    EXPECT_EQ(d2_operator(f + g), d2_operator(f) + d2_operator(g));
  }
}

TEST(DOperator, EvaluationIsTheLinearCoefficient) {
  // Df(v, w) is the coefficient of t in f(t v + w) = sum_e c_e t^e.
  Rng rng(8);
  FieldPtr fp = FqField::make(7);
  for (int t = 0; t < 20; ++t) {
    Form f = random_form(fp, 3, 4, rng);
    Mat pair = random_independent(fp, 2, 3, rng);
    const Vec &v = pair[0], &w = pair[1];
    Vec vw = v;
    vw.insert(vw.end(), w.begin(), w.end());
    Vec c = plane_coeffs(f, v, w);
    EXPECT_EQ(d_operator(f).eval(vw), c[1]);
    EXPECT_EQ(d2_operator(f).eval(vw), c[2]);
  }
}

TEST(D2Operator, QuarticExample) {
  FieldPtr fp = FqField::make(7);
  EXPECT_EQ(d2_operator(parse_form(fp, "x1^4")), parse_form(fp, "6*x1^2*x2^2", 2));
}

TEST(D2Operator, VanishesOnSumsOfPPlusOnePowers) {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    FieldPtr fp = FqField::make(p);
    Form f(fp, 4, static_cast<int>(p) + 1);
    for (int i = 0; i < 4; ++i) f.add_term(unit_exponents(4, i, static_cast<int>(p) + 1), fp->one());
    EXPECT_TRUE(d2_operator(f).is_zero()) << p;
    EXPECT_FALSE(d_operator(f).is_zero()) << p;
  }
}

// Misc helpers --------------------------------------------------------------------

TEST(Poly, InitialFormPicksMinimalWeight) {
  FieldPtr fp = FqField::make(5);
  Form f = parse_form(fp, "x1*x2 + x2^2 + x3^2");
  std::vector<int> w = {1, 1, 2};
  EXPECT_EQ(initial_form(f, w), parse_form(fp, "x1*x2 + x2^2", 3));
}

TEST(Poly, PartialDerivative) {
  FieldPtr fp = FqField::make(5);
  EXPECT_EQ(partial(parse_form(fp, "x1^3 + x1*x2^2"), 0), parse_form(fp, "3*x1^2 + x2^2"));
}

TEST(Poly, MonomialCount) {
  EXPECT_EQ(monomials(4, 3).size(), 20u);
  EXPECT_EQ(monomials(1, 5).size(), 1u);
}
