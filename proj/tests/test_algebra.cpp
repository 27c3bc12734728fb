#include <gtest/gtest.h>

#include "generators.hpp"
#include "iqcl/algebra.hpp"

using namespace iqcl;

namespace {

UnitValue uv(long n, unsigned long d) { return UnitValue(n, d); }
Rational q(long n, unsigned long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Truncation of t to `bits` binary digits, computed digit by digit.
Rational truncate_bits(Rational t, unsigned bits) {
  if (t == 1) return t;
  Rational out = 0, place(1, 2);
  for (unsigned i = 0; i < bits; ++i, place /= 2) {
    t *= 2;
    if (t >= 1) {
      out += place;
      t -= 1;
    }
  }
  return out;
}

}  // namespace

TEST(UnitValue, RejectsValuesOutsideUnitInterval) {
  EXPECT_THROW(UnitValue(Rational(-1, 3)), std::out_of_range);
  EXPECT_THROW(UnitValue(Rational(4, 3)), std::out_of_range);
  EXPECT_NO_THROW(UnitValue(Rational(1)));
}

TEST(MvOps, Examples) {
  EXPECT_EQ(mv_oplus(uv(1, 2), uv(3, 4)), UnitValue::one());
  EXPECT_EQ(mv_oplus(uv(1, 4), uv(1, 4)), uv(1, 2));
  EXPECT_EQ(mv_oplus(UnitValue::zero(), uv(2, 7)), uv(2, 7));
  EXPECT_EQ(mv_neg(uv(1, 4)), uv(3, 4));
  EXPECT_EQ(mv_neg(UnitValue::zero()), UnitValue::one());
  EXPECT_EQ(mv_neg(uv(1, 2)), uv(1, 2));
  EXPECT_EQ(mv_odot(uv(1, 2), uv(3, 4)), uv(1, 4));
  EXPECT_EQ(mv_implies(uv(4, 5), uv(3, 10)), uv(1, 2));
  EXPECT_EQ(mv_implies(uv(5, 9), uv(5, 9)), UnitValue::one());
  EXPECT_EQ(pmv_product(uv(1, 2), uv(1, 2)), uv(1, 4));
  EXPECT_EQ(pmv_product(UnitValue::one(), uv(3, 7)), uv(3, 7));
  EXPECT_EQ(pmv_product(UnitValue::zero(), uv(3, 7)), UnitValue::zero());
}

TEST(MvOps, LatticeOpsMatchDefiningTerms) {
  gen::Gen g(1);
  for (int i = 0; i < 2000; ++i) {
    UnitValue x(g.unit_rational()), y(g.unit_rational());
    EXPECT_EQ(mv_meet(x, y), mv_odot(x, mv_implies(x, y)));
    EXPECT_EQ(mv_join(x, y), mv_implies(mv_implies(x, y), y));
  }
}

TEST(MvOps, MvAxiomsHoldExactly) {
  gen::Gen g(2);
  for (int i = 0; i < 5000; ++i) {
    UnitValue x(g.unit_rational()), y(g.unit_rational()), z(g.unit_rational());
    EXPECT_EQ(mv_oplus(x, mv_oplus(y, z)), mv_oplus(mv_oplus(x, y), z));
    EXPECT_EQ(mv_oplus(x, y), mv_oplus(y, x));
    EXPECT_EQ(mv_oplus(x, UnitValue::zero()), x);
    EXPECT_EQ(mv_neg(mv_neg(x)), x);
    EXPECT_EQ(mv_oplus(x, mv_neg(UnitValue::zero())), mv_neg(UnitValue::zero()));
    EXPECT_EQ(mv_oplus(mv_neg(mv_oplus(mv_neg(x), y)), y), mv_oplus(mv_neg(mv_oplus(mv_neg(y), x)), x));
  }
}

TEST(PmvOps, DistributionSandwichAndMonotonicity) {
  gen::Gen g(3);
  for (int i = 0; i < 5000; ++i) {
    UnitValue x(g.unit_rational()), y(g.unit_rational()), z(g.unit_rational());
    EXPECT_EQ(pmv_product(x, mv_odot(y, mv_neg(z))), mv_odot(pmv_product(x, y), mv_neg(pmv_product(x, z))));
    EXPECT_LE(mv_odot(x, y), pmv_product(x, y));
    EXPECT_LE(pmv_product(x, y), mv_meet(x, y));
    UnitValue a = std::min(x, y), b = std::max(x, y);
    EXPECT_LE(pmv_product(a, z), pmv_product(b, z));
  }
}

TEST(SConstant, StoredInLowestTerms) {
  SConstant s(Integer(12), 5);
  EXPECT_EQ(s.numerator(), 3);
  EXPECT_EQ(s.exponent(), 3u);
  EXPECT_EQ(SConstant(Integer(0), 7), SConstant::bottom());
  EXPECT_EQ(SConstant(Integer(16), 4), SConstant::top());
  EXPECT_THROW(SConstant(Integer(5), 2), std::invalid_argument);
  EXPECT_THROW(SConstant::from_rational(q(1, 3)), std::invalid_argument);
  EXPECT_EQ(SConstant::from_rational(q(6, 16)), SConstant(Integer(3), 3));
}

TEST(SConstant, ClosedUnderOperations) {
  gen::Gen g(4);
  for (int i = 0; i < 3000; ++i) {
    Rational x = g.dyadic(10).value(), y = g.dyadic(10).value();
    for (const Rational& r : {mv::oplus(x, y), mv::odot(x, y), mv::neg(x), mv::product(x, y), mv::implies(x, y)}) {
      EXPECT_TRUE(is_dyadic(r));
      EXPECT_GE(r, 0);
      EXPECT_LE(r, 1);
    }
  }
}

TEST(SApproximate, Examples) {
  EXPECT_EQ(s_approximate(q(1, 3), q(1, 16)).value(), q(21, 64));
  EXPECT_EQ(truncate_bits(q(1, 3), 6), q(21, 64));
  EXPECT_EQ(s_approximate(q(1, 2), q(1, 1000)).value(), q(1, 2));
  EXPECT_EQ(s_approximate(q(1, 2), q(1, 3)).value(), q(1, 2));
  EXPECT_EQ(s_approximate(q(9, 10), q(1, 8)).value(), q(7, 8));
  EXPECT_EQ(truncate_bits(q(9, 10), 3), q(7, 8));
  EXPECT_EQ(s_approximate(0.9, 0.125).value(), s_approximate(rational_from_double(0.9), q(1, 8)).value());
}

TEST(SApproximate, MatchesDigitTruncationAndErrorBound) {
  gen::Gen g(5);
  for (int i = 0; i < 1000; ++i) {
    Rational t = g.unit_rational(1000);
    Rational eps(1, g.integer(1, 1 << 20));
    SConstant s = s_approximate(t, eps);
    EXPECT_EQ(s.value(), truncate_bits(t, static_cast<unsigned>(s_approximation_bits(eps))));
    Rational err = t - s.value();
    EXPECT_GE(err, 0);
    EXPECT_LT(err, eps);
  }
}

TEST(SApproximate, RejectsBadArguments) {
  EXPECT_THROW(s_approximate(q(1, 2), q(0, 1)), std::invalid_argument);
  EXPECT_THROW(s_approximate(q(3, 2), q(1, 4)), std::invalid_argument);
}

TEST(Q5Bound, ExactComparison) {
  EXPECT_TRUE(s_above_q5_bound(SConstant(Integer(7), 4)));
  EXPECT_FALSE(s_above_q5_bound(SConstant(Integer(3), 3)));
  EXPECT_TRUE(s_above_q5_bound(SConstant::top()));
  // the bound is (2 + sqrt 2)/8 = 0.4267766...
  SConstant least = least_dyadic_above_q5_bound(8);
  EXPECT_EQ(least.value(), q(110, 256));
  EXPECT_FALSE(s_above_q5_bound(SConstant(Integer(109), 8)));
  EXPECT_GT(to_double(least.value()), q5_bound_approx());
  EXPECT_LT(to_double(q(109, 256)), q5_bound_approx());
}

TEST(Q5Bound, AgreesWithFloatingComparisonAwayFromTheBound) {
  for (long k = 0; k <= 4096; ++k) {
    SConstant s(Integer(k), 12);
    double v = to_double(s.value());
    if (std::abs(v - q5_bound_approx()) > 1e-9) {
      EXPECT_EQ(s_above_q5_bound(s), v >= q5_bound_approx()) << k;
    }
  }
}

TEST(Rationals, ParsingForms) {
  EXPECT_EQ(parse_rational("3/8"), q(3, 8));
  EXPECT_EQ(parse_rational("0.125"), q(1, 8));
  EXPECT_EQ(parse_rational("0.1"), q(1, 10));
  EXPECT_EQ(parse_rational("-2/4"), q(-1, 2));
  EXPECT_EQ(parse_rational("7"), q(7, 1));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_EQ(to_string(q(6, 8)), "3/4");
  EXPECT_EQ(to_string(q(2, 1)), "2");
}
