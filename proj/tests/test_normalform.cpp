#include <gtest/gtest.h>

#include <set>

#include "brauer/error.hpp"
#include "brauer/normalform.hpp"
#include "support.hpp"

using namespace brauer;
using namespace brauer::testing;

namespace {

bool on_zero_set(const FormTuple& ft, const Vec& x) {
  for (const auto& f : ft.forms())
    if (f.eval(x).code != 0) return false;
  return true;
}

Mat identity(const FqField& F, int n) {
  Mat m(n, Vec(n, F.zero()));
  for (int i = 0; i < n; ++i) m[i][i] = F.one();
  return m;
}

// x1 x2 + x3^2 over F5 read directly as a normal form with a = 0, b = 1.
NormalFormData handmade_quadric() {
  FieldPtr fp = FqField::make(5);
  NormalFormData nf;
  nf.ft = FormTuple(fp, 3, {parse_form(fp, "x1*x2+x3^2")});
  nf.basis = identity(*fp, 3);
  nf.degrees = {2};
  nf.a = {fp->zero()};
  nf.b = {fp->one()};
  nf.h = {Form(fp, 3, 2)};
  nf.witness = Vec(3, fp->zero());
  return nf;
}

}  // namespace

// Sections ---------------------------------------------------------------------

TEST(Section, AvoidsTheSideCondition) {
  FieldPtr fp = FqField::make(5);
  FormTuple ft(fp, 2, {parse_form(fp, "x1^2-x2^2")});
  Form g = parse_form(fp, "x1", 2);
  Rng rng(1);
  Section s = nonvanishing_section(ft, g, Budget{}, rng);
  EXPECT_EQ(s.F.dim(), 1);
  EXPECT_TRUE(on_zero_set(ft, s.witness));
  EXPECT_NE(g.eval(s.witness).code, 0u);
  EXPECT_TRUE(in_span(*fp, s.F.basis(), s.witness, 2));
}

TEST(Section, ConstantSideConditionGivesZeroSpace) {
  FieldPtr fp = FqField::make(3);
  FormTuple ft(fp, 3, {parse_form(fp, "x1^2+x2^2+x3^2")});
  Rng rng(2);
  Section s = nonvanishing_section(ft, Form::constant(fp, 3, fp->one()), Budget{}, rng);
  EXPECT_EQ(s.F.dim(), 0);
}

TEST(Section, SideConditionVanishingOnZ) {
  FieldPtr fp = FqField::make(3);
  FormTuple ft(fp, 3, {parse_form(fp, "x1", 3)});
  Rng rng(3);
  try {
    nonvanishing_section(ft, parse_form(fp, "2*x1", 3), Budget{}, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoWitness);
  }
}

// Normal forms -------------------------------------------------------------------

TEST(NormalForm, DiagonalCubicOverF7) {
  FieldPtr fp = FqField::make(7);
  Rng gen(4);
  for (int t = 0; t < 3; ++t) {
    FormTuple ft(fp, 12, {random_diagonal(fp, 12, 3, gen)});
    Rng rng(5 + t);
    NormalFormData nf = normal_form(ft, parse_form(fp, "x1", 12), Budget{}, rng);
    EXPECT_TRUE(check_normal_form(nf).empty());
    EXPECT_TRUE(check_initial_forms(nf));
    EXPECT_NE(nf.b[0].code, 0u);
    EXPECT_EQ(nf.m(), nf.dim() - 3);
    Vec w = combine(*fp, nf.basis, nf.witness, 12);
    EXPECT_TRUE(on_zero_set(ft, w));
    EXPECT_NE(w[0].code, 0u);
  }
}

TEST(NormalForm, DeterministicForAFixedSeed) {
  FieldPtr fp = FqField::make(7);
  Rng gen(6);
  FormTuple ft(fp, 12, {random_diagonal(fp, 12, 3, gen)});
  Form g = parse_form(fp, "x2", 12);
  Rng a(7), b(7);
  NormalFormData x = normal_form(ft, g, Budget{}, a), y = normal_form(ft, g, Budget{}, b);
  EXPECT_EQ(x.basis, y.basis);
  EXPECT_EQ(x.a, y.a);
  EXPECT_EQ(x.b, y.b);
}

TEST(NormalForm, TamperedDataIsReported) {
  FieldPtr fp = FqField::make(7);
  Rng gen(8);
  FormTuple ft(fp, 12, {random_diagonal(fp, 12, 3, gen)});
  Rng rng(9);
  NormalFormData nf = normal_form(ft, parse_form(fp, "x1", 12), Budget{}, rng);
  NormalFormData bad = nf;
  bad.b[0] = fp->add(bad.b[0], fp->one());
  auto failed = check_normal_form(bad);
  ASSERT_FALSE(failed.empty());
  EXPECT_EQ(failed.front(), "f1 template");
  bad = nf;
  bad.b[0] = fp->zero();
  failed = check_normal_form(bad);
  EXPECT_NE(std::find(failed.begin(), failed.end(), "f1 b nonzero"), failed.end());
}

TEST(NormalForm, StageFailureNamesTheStage) {
  FieldPtr fp = FqField::make(7);
  Rng gen(10);
  FormTuple ft(fp, 12, {random_diagonal(fp, 12, 3, gen)});
  Budget tiny;
  tiny.dim = 1;
  tiny.tries = 1;
  tiny.enum_points = 1;
  Rng rng(11);
  try {
    normal_form(ft, Form::constant(fp, 12, fp->one()), tiny, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("stage E_1"), std::string::npos) << e.what();
  }
}

// Charts ---------------------------------------------------------------------------

TEST(Chart, SolvesForX) {
  NormalFormData nf = handmade_quadric();
  const FqField& F = nf.ft.field();
  ASSERT_TRUE(check_normal_form(nf).empty());
  auto p = chart_point(nf, {F.one(), F.one()});
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(p->coords, (Vec{F.neg(F.one()), F.one(), F.one()}));
  EXPECT_EQ(p->point, p->coords);
  EXPECT_FALSE(chart_point(nf, {F.zero(), F.one()}).has_value());
  EXPECT_THROW(chart_point(nf, {F.one()}), Error);
}

TEST(Chart, CountAndDistinctnessOverF3) {
  FieldPtr fp = FqField::make(3);
  FormTuple ft(fp, 8, {parse_form(fp, "x1^2+x2^2+x3*x4+x5^2+2*x6^2+x7*x8")});
  Rng rng(12);
  NormalFormData nf = normal_form(ft, Form::constant(fp, 8, fp->one()), Budget{}, rng);
  ASSERT_TRUE(check_normal_form(nf).empty());
  long expected = 2;
  for (int k = 0; k < 1 + nf.m(); ++k) expected *= 3;
  auto pts = chart_points(nf, 1L << 20);
  EXPECT_EQ(static_cast<long>(pts.size()), expected);
  std::set<Vec> seen;
  for (const auto& p : pts) {
    EXPECT_TRUE(on_zero_set(ft, p.point));
    EXPECT_NE(p.coords[nf.y_index(0)].code, 0u);
    seen.insert(p.point);
  }
  EXPECT_EQ(seen.size(), pts.size());
}

TEST(Chart, SweepHonoursLimitAndStop) {
  NormalFormData nf = handmade_quadric();
  EXPECT_EQ(chart_points(nf, 3).size(), 3u);
  EXPECT_EQ(chart_points(nf, 1000).size(), 4u * 5u);
  long n = sweep_chart(nf, 1000, [](const ChartPoint& p) { return p.params[1].code == 2; });
  EXPECT_EQ(n, 3);
}

// Dense points -----------------------------------------------------------------------

TEST(DensePoint, SumOfSquaresOverF7) {
  FieldPtr fp = FqField::make(7);
  Form f(fp, 10, 2);
  for (int i = 0; i < 10; ++i) f.add_term(unit_exponents(10, i, 2), fp->one());
  FormTuple ft(fp, 10, {f});
  Form g = parse_form(fp, "x1", 10);
  Rng rng(13);
  DensePoint dp = dense_point(ft, g, Budget{}, rng);
  EXPECT_TRUE(on_zero_set(ft, dp.chart.point));
  EXPECT_NE(dp.chart.point[0].code, 0u);
  EXPECT_GE(dp.visited, 1);
}

TEST(DensePoint, PencilOverF3) {
  FieldPtr fp = FqField::make(3);
  Rng gen(14);
  for (int t = 0; t < 3; ++t) {
    FormTuple ft(fp, 24, {random_block_form(fp, 24, 2, gen), random_block_form(fp, 24, 2, gen)});
    Form g = parse_form(fp, "x1", 24);
    Rng rng(15 + t);
    DensePoint dp = dense_point(ft, g, Budget{}, rng);
    EXPECT_TRUE(on_zero_set(ft, dp.chart.point));
    EXPECT_NE(dp.chart.point[0].code, 0u);
  }
}

TEST(AffineDiagonal, HitsOne) {
  Rng rng(16);
  for (std::uint32_t q : {5u, 7u, 9u}) {
    FieldPtr fp = field_of_order(q);
    for (int t = 0; t < 5; ++t) {
      Vec a(8);
      for (auto& x : a) x = fp->from_code(1 + static_cast<std::uint32_t>(rng.below(q - 1)));
      Vec x = solve_affine_diagonal(fp, a, 2, Budget{}, rng);
      EXPECT_EQ(eval_diagonal(*fp, a, x, 2), fp->one());
    }
  }
}

// Lower-degree tails ------------------------------------------------------------------

TEST(LowDeg, EmptyTail) {
  FieldPtr fp = FqField::make(7);
  Rng gen(17);
  FormTuple ft(fp, 12, {random_diagonal(fp, 12, 3, gen)});
  Form g = parse_form(fp, "x1^2+x2^2", 12);
  Rng rng(18);
  Vec x = lowdeg_point(ft, g, 1, Budget{}, rng);
  EXPECT_TRUE(on_zero_set(ft, x));
  EXPECT_NE(g.eval(x).code, 0u);
}

TEST(LowDeg, ProductTail) {
  FieldPtr fp = FqField::make(7);
  Rng gen(19);
  Form head = random_diagonal(fp, 12, 3, gen);
  FormTuple ft(fp, 12, {head, parse_form(fp, "x1*x2", 12)});
  Form g = parse_form(fp, "x3^3+x4^3+x5^3", 12);
  Rng rng(20);
  Vec x = lowdeg_point(ft, g, 1, Budget{}, rng);
  EXPECT_TRUE(on_zero_set(ft, x));
  EXPECT_NE(g.eval(x).code, 0u);
}

TEST(LowDeg, RejectsBadSplitIndex) {
  FieldPtr fp = FqField::make(7);
  FormTuple ft(fp, 4, {parse_form(fp, "x1^3+x2^3+x3^3+x4^3"), parse_form(fp, "x1*x2", 4)});
  Rng rng(21);
  EXPECT_THROW(lowdeg_point(ft, parse_form(fp, "x1^3+x2^3", 4), 2, Budget{}, rng), Error);
  Budget flat;
  flat.max_depth = 0;
  try {
    lowdeg_point(ft, parse_form(fp, "x1^3+x2^3", 4), 1, flat, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}
