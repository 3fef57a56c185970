#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "brauer/error.hpp"
#include "brauer/field.hpp"
#include "brauer/rng.hpp"
#include "support.hpp"

using namespace brauer;
using namespace brauer::testing;

namespace {

const std::vector<std::uint32_t> kSmallOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27,
                                                 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 61, 64};

Vec elems(const FqField& F, std::initializer_list<int> xs) {
  Vec out;
  for (int x : xs) out.push_back(F.from_int(x));
  return out;
}

}  // namespace

TEST(Field, ArithmeticAxiomsOnSmallFields) {
  for (std::uint32_t q : {2u, 4u, 8u, 9u, 25u, 27u}) {
    FieldPtr fp = field_of_order(q);
    const FqField& F = *fp;
    auto all = F.elements();
    ASSERT_EQ(all.size(), q);
    for (Elem a : all) {
      EXPECT_EQ(F.add(a, F.neg(a)), F.zero());
      if (a.code) EXPECT_EQ(F.mul(a, F.inv(a)), F.one());
      EXPECT_EQ(F.pow(a, q), a);
      for (Elem b : all) {
        EXPECT_EQ(F.add(a, b), F.add(b, a));
        EXPECT_EQ(F.mul(a, b), F.mul(b, a));
        Elem c = F.from_code((a.code * 7 + b.code * 3) % q);
        EXPECT_EQ(F.mul(a, F.add(b, c)), F.add(F.mul(a, b), F.mul(a, c)));
      }
    }
  }
}

TEST(Field, FrobeniusIsAdditiveAndPthRootInverts) {
  FieldPtr fp = FqField::make(3, 3);
  const FqField& F = *fp;
  for (Elem a : F.elements()) {
    EXPECT_EQ(F.frobenius(F.pth_root(a)), a);
    for (Elem b : F.elements()) EXPECT_EQ(F.frobenius(F.add(a, b)), F.add(F.frobenius(a), F.frobenius(b)));
  }
}

TEST(Field, PrimitiveElementGeneratesTheUnitGroup) {
  for (std::uint32_t q : kSmallOrders) {
    FieldPtr fp = field_of_order(q);
    EXPECT_EQ(fp->order(fp->primitive()), q - 1) << q;
  }
}

TEST(Field, DescriptorRoundTrip) {
  for (const char* d : {"GF(2)", "GF(7)", "GF(9)", "GF(3^2)", "GF(64)", "GF(9; x^2+1)", "GF(9; x^2+x+2)"}) {
    FieldPtr fp = FqField::parse(d);
    FieldPtr again = FqField::parse(fp->descriptor());
    EXPECT_TRUE(fp->same_as(*again)) << d;
  }
  EXPECT_EQ(FqField::parse("GF(3^2)")->q(), 9u);
  EXPECT_TRUE(FqField::parse("GF(9; x^2+1)")->default_modulus());
  EXPECT_FALSE(FqField::parse("GF(9; x^2+x+2)")->default_modulus());
  EXPECT_EQ(FqField::parse("GF(9; x^2+x+2)")->descriptor(), "GF(9; x^2+x+2)");
}

TEST(Field, DescriptorRejectsBadInput) {
  for (const char* d : {"GF(6)", "GF(9; x^2+x+1)", "GF(", "F(5)", "GF(1)"}) {
    try {
      FqField::parse(d);
      ADD_FAILURE() << d;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::ParseError) << d << ": " << e.what();
    }
  }
}

TEST(Field, ElementFormatRoundTrip) {
  FieldPtr fp = FqField::make(3, 2);
  for (Elem a : fp->elements()) EXPECT_EQ(fp->parse_elem(fp->format(a)), a);
  EXPECT_EQ(fp->format(fp->from_int(2)), "[0,2]");
  Vec v = elems(*fp, {1, 0, 2});
  EXPECT_EQ(parse_vec(*fp, format_vec(*fp, v)), v);
}

TEST(Field, ElementOrderIsCodeOrder) {
  FieldPtr fp = FqField::make(5);
  auto all = fp->elements();
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Field, IrreducibilityByTrialDivision) {
  EXPECT_TRUE(is_irreducible(3, std::vector<std::uint32_t>{1, 0, 1}));   // x^2+1
  EXPECT_FALSE(is_irreducible(2, std::vector<std::uint32_t>{1, 0, 1}));  // (x+1)^2
  EXPECT_TRUE(is_irreducible(2, std::vector<std::uint32_t>{1, 1, 0, 1}));
}

// Power classes ------------------------------------------------------------

TEST(PowerClasses, SquaresModFive) {
  FieldPtr fp = FqField::make(5);
  PowerClassTable t = power_classes(*fp, 2);
  ASSERT_EQ(t.count(), 2);
  EXPECT_EQ(t.reps, elems(*fp, {1, 2}));
  EXPECT_EQ(t.class_of[1], t.class_of[4]);
  EXPECT_EQ(t.class_of[2], t.class_of[3]);
  EXPECT_NE(t.class_of[1], t.class_of[2]);
}

TEST(PowerClasses, FirstPowersFormOneClass) {
  for (std::uint32_t q : {2u, 7u, 9u}) {
    PowerClassTable t = power_classes(*field_of_order(q), 1);
    EXPECT_EQ(t.count(), 1);
  }
}

TEST(PowerClasses, CountIsGcdAndWitnessesAreExact) {
  for (std::uint32_t q : kSmallOrders) {
    FieldPtr fp = field_of_order(q);
    const FqField& F = *fp;
    for (int d = 1; d <= 6; ++d) {
      PowerClassTable t = power_classes(F, d);
      EXPECT_EQ(t.count(), static_cast<int>(std::gcd<std::uint32_t>(d, q - 1))) << q << " " << d;
      EXPECT_EQ(t.reps, power_class_reps_brute(F, d)) << q << " " << d;
      for (Elem a : F.elements()) {
        if (a.code == 0) continue;
        Elem rebuilt = F.mul(t.reps[t.class_of[a.code]], F.pow(t.witness[a.code], d));
        ASSERT_EQ(rebuilt, a);
      }
    }
  }
}

// Level --------------------------------------------------------------------

TEST(Level, Examples) {
  FieldPtr f5 = FqField::make(5), f3 = FqField::make(3), f7 = FqField::make(7);
  LevelWitness w5 = level_witness(*f5, 2);
  ASSERT_EQ(w5.m(), 1);
  EXPECT_EQ(f5->pow(w5.terms[0], 2), f5->from_int(-1));
  EXPECT_EQ(level_witness(*f3, 2).m(), 2);

  // Minimal number of nonzero cubes summing to -1 in F_7, by search.
  std::set<Elem> cubes;
  for (Elem x : f7->elements())
    if (x.code) cubes.insert(f7->pow(x, 3));
  int brute = 0;
  std::set<Elem> sums{f7->zero()};
  while (!sums.count(f7->from_int(-1))) {
    std::set<Elem> next;
    for (Elem s : sums)
      for (Elem c : cubes) next.insert(f7->add(s, c));
    sums = next;
    ++brute;
  }
  EXPECT_EQ(level_witness(*f7, 3).m(), brute);
}

TEST(Level, WitnessesSumToMinusOneAndLevelIsAtMostTwo) {
  for (std::uint32_t q : kSmallOrders) {
    FieldPtr fp = field_of_order(q);
    const FqField& F = *fp;
    for (int d = 1; d <= 5; ++d) {
      LevelWitness w = level_witness(F, d);
      Elem s = F.zero();
      for (Elem t : w.terms) {
        EXPECT_NE(t.code, 0u);
        s = F.add(s, F.pow(t, d));
      }
      EXPECT_EQ(s, F.from_int(-1)) << q << " " << d;
    }
    EXPECT_LE(level_witness(F, 2).m(), 2) << q;
  }
}

// nkd ----------------------------------------------------------------------

TEST(Nkd, ExactValues) {
  EXPECT_EQ(nkd_exact(*FqField::make(2), 2, 6), 1);
  EXPECT_EQ(nkd_exact(*FqField::make(3), 2, 6), 2);
}

TEST(Nkd, MatchesBruteForceOnSmallFields) {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u})
    for (int d = 1; d <= 4; ++d) EXPECT_EQ(nkd_exact(*field_of_order(q), d, d + 2), nkd_brute(*field_of_order(q), d));
}

TEST(Nkd, AtMostDegreeUpToSixtyFour) {
  for (std::uint32_t q : kSmallOrders)
    for (int d = 1; d <= 6; ++d) EXPECT_LE(nkd_exact(*field_of_order(q), d, d + 1), d) << q << " " << d;
}

// Diagonal solver ------------------------------------------------------------

TEST(Diagonal, ThreeOnesOverF3) {
  FieldPtr fp = FqField::make(3);
  EXPECT_EQ(solve_diagonal(*fp, elems(*fp, {1, 1, 1}), 2), elems(*fp, {1, 1, 1}));
}

TEST(Diagonal, ZeroCoefficientGivesUnitVector) {
  FieldPtr fp = FqField::make(7);
  EXPECT_EQ(solve_diagonal(*fp, elems(*fp, {3, 0, 5}), 3), elems(*fp, {0, 1, 0}));
}

TEST(Diagonal, NonSquareRatioHasNoSolution) {
  FieldPtr fp = FqField::make(5);
  Vec a = elems(*fp, {1, 2});
  EXPECT_FALSE(try_solve_diagonal(*fp, a, 2).has_value());
  try {
    solve_diagonal(*fp, a, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoSolution);
  }
}

TEST(Diagonal, PigeonholeAndExhaustionAgree) {
  DiagonalOptions pigeon_only;
  pigeon_only.use_exhaustive = false;
  DiagonalOptions exhaust_only;
  exhaust_only.use_pigeonhole = false;
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    FieldPtr fp = field_of_order(q);
    for (int d = 1; d <= 4; ++d) {
      std::vector<Elem> alphabet = power_class_reps_brute(*fp, d);
      alphabet.insert(alphabet.begin(), fp->zero());
      for (int n = 1; n <= 6; ++n)
        for_each_multiset(alphabet, n, [&](const Vec& a) {
          auto ex = try_solve_diagonal(*fp, a, d, exhaust_only);
          auto pg = try_solve_diagonal(*fp, a, d, pigeon_only);
          if (pg) {
            EXPECT_TRUE(ex.has_value());
            EXPECT_EQ(eval_diagonal(*fp, a, *pg, d), fp->zero());
          }
          if (ex) EXPECT_EQ(eval_diagonal(*fp, a, *ex, d), fp->zero());
        });
    }
  }
}

TEST(Diagonal, RandomLargeInstancesVerify) {
  Rng rng(3);
  for (std::uint32_t q : {11u, 13u, 16u, 25u}) {
    FieldPtr fp = field_of_order(q);
    for (int d = 2; d <= 5; ++d) {
      Vec a(d + 1);
      for (auto& c : a) c = fp->from_code(1 + static_cast<std::uint32_t>(rng.below(q - 1)));
      Vec x = solve_diagonal(*fp, a, d);
      EXPECT_FALSE(is_zero_vec(x));
      EXPECT_EQ(eval_diagonal(*fp, a, x, d), fp->zero());
    }
  }
}

// Extensions -----------------------------------------------------------------

TEST(Extension, EmbeddingIsAHomomorphism) {
  FieldExtension ext = make_extension(FqField::make(2), 3);
  const FqField& B = ext.base();
  const FqField& E = ext.ext();
  EXPECT_EQ(E.q(), 8u);
  for (Elem a : B.elements())
    for (Elem b : B.elements()) {
      EXPECT_EQ(ext.embedding(B.add(a, b)), E.add(ext.embedding(a), ext.embedding(b)));
      EXPECT_EQ(ext.embedding(B.mul(a, b)), E.mul(ext.embedding(a), ext.embedding(b)));
    }
  for (Elem x : E.elements()) {
    Elem back = E.zero();
    for (int k = 0; k < ext.degree; ++k)
      back = E.add(back, E.mul(ext.embedding(ext.coords[x.code][k]), ext.basis[k]));
    EXPECT_EQ(back, x);
  }
}

TEST(Extension, DiagonalOverF9WithBaseSolution) {
  FieldPtr f3 = FqField::make(3);
  FieldExtension ext = make_extension(f3, 2);
  Vec a(3, ext.ext().one());
  Vec x = solve_diagonal_ext(ext, a, 2);
  ASSERT_EQ(x.size(), 3u);
  EXPECT_FALSE(is_zero_vec(x));
  Vec lifted;
  for (Elem xi : x) lifted.push_back(ext.embedding(xi));
  EXPECT_EQ(eval_diagonal(ext.ext(), a, lifted, 2), ext.ext().zero());
}

TEST(Extension, CubicOverF4WithF2Solution) {
  FieldExtension ext = make_extension(FqField::make(2), 2);
  const FqField& E = ext.ext();
  Elem w = E.primitive();
  Vec a = {E.one(), w, E.mul(w, w)};
  Vec x = solve_diagonal_ext(ext, a, 3);
  Vec lifted;
  for (Elem xi : x) lifted.push_back(ext.embedding(xi));
  EXPECT_FALSE(is_zero_vec(x));
  EXPECT_EQ(eval_diagonal(E, a, lifted, 3), E.zero());

  // Exhaustion over F_2^3 agrees that a base-field solution exists.
  bool found = odometer(ext.base(), 3, [&](const Vec& y) {
    if (is_zero_vec(y)) return false;
    Vec ly;
    for (Elem yi : y) ly.push_back(ext.embedding(yi));
    return eval_diagonal(E, a, ly, 3).code == 0;
  });
  EXPECT_TRUE(found);
}
