#pragma once

// MV- and PMV-algebra arithmetic on the rational unit interval, and the
// dyadic constant algebra generated by 1/2.

#include <compare>
#include <string>

#include "iqcl/rational.hpp"

namespace iqcl {

/// Scalar-generic Łukasiewicz operations on [0,1]. Used with Rational for
/// exact evaluation and with double inside the numeric search.
namespace mv {

template <class T>
T oplus(const T& x, const T& y) {
  T s = x + y;
  return s > T(1) ? T(1) : s;
}

template <class T>
T neg(const T& x) {
  return T(1) - x;
}

template <class T>
T odot(const T& x, const T& y) {
  T s = x + y - T(1);
  return s < T(0) ? T(0) : s;
}

template <class T>
T implies(const T& x, const T& y) {
  T s = T(1) - x + y;
  return s > T(1) ? T(1) : s;
}

template <class T>
T meet(const T& x, const T& y) {
  return y < x ? T(y) : T(x);
}

template <class T>
T join(const T& x, const T& y) {
  return x < y ? T(y) : T(x);
}

template <class T>
T product(const T& x, const T& y) {
  return x * y;
}

}  // namespace mv

/// An exact rational in [0,1].
class UnitValue {
 public:
  UnitValue() = default;
  /// Throws std::out_of_range when `value` is outside [0,1].
  explicit UnitValue(Rational value);
  UnitValue(long num, unsigned long den) : UnitValue(Rational(num, den)) {}

  static UnitValue zero() { return UnitValue(); }
  static UnitValue one() { return UnitValue(Rational(1)); }

  const Rational& value() const { return value_; }
  double to_double() const { return value_.get_d(); }

  friend bool operator==(const UnitValue& a, const UnitValue& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const UnitValue& a, const UnitValue& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Rational value_{0};
};

std::string to_string(const UnitValue& x);

UnitValue mv_oplus(const UnitValue& x, const UnitValue& y);
UnitValue mv_neg(const UnitValue& x);
UnitValue mv_odot(const UnitValue& x, const UnitValue& y);
UnitValue mv_implies(const UnitValue& x, const UnitValue& y);
UnitValue mv_meet(const UnitValue& x, const UnitValue& y);
UnitValue mv_join(const UnitValue& x, const UnitValue& y);
UnitValue pmv_product(const UnitValue& x, const UnitValue& y);

/// True iff the reduced denominator of `q` is a power of two.
bool is_dyadic(const Rational& q);

/// A dyadic rational numerator/2^exponent in [0,1], kept in lowest terms.
class SConstant {
 public:
  SConstant() = default;
  /// Throws std::invalid_argument if numerator > 2^exponent.
  SConstant(Integer numerator, unsigned long exponent);
  /// Throws std::invalid_argument unless `q` is a dyadic rational in [0,1].
  static SConstant from_rational(const Rational& q);

  static SConstant bottom() { return SConstant(0, 0); }
  static SConstant top() { return SConstant(1, 0); }
  static SConstant half() { return SConstant(1, 1); }

  const Integer& numerator() const { return numerator_; }
  unsigned long exponent() const { return exponent_; }
  Rational value() const;
  UnitValue unit() const { return UnitValue(value()); }

  bool is_zero() const { return numerator_ == 0; }
  bool is_one() const { return exponent_ == 0 && numerator_ == 1; }

  friend bool operator==(const SConstant& a, const SConstant& b) {
    return a.exponent_ == b.exponent_ && a.numerator_ == b.numerator_;
  }
  friend std::strong_ordering operator<=>(const SConstant& a, const SConstant& b);

 private:
  Integer numerator_{0};
  unsigned long exponent_ = 0;
};

/// `k/2^m` rendering: `0`, `1`, `3/8`.
std::string to_string(const SConstant& s);

/// Element of S within `epsilon` of `target`, obtained by truncating the
/// binary expansion of `target` to floor(log2(1/epsilon)) + 2 bits.
/// Throws std::invalid_argument unless epsilon > 0 and target is in [0,1].
SConstant s_approximate(const Rational& target, const Rational& epsilon);
SConstant s_approximate(double target, double epsilon);

/// Number of bits s_approximate keeps for a given epsilon.
unsigned long s_approximation_bits(const Rational& epsilon);

/// s >= (2 + sqrt 2)/8, decided without floating point:
/// 8s - 2 >= 0 and (8s - 2)^2 >= 2.
bool s_above_q5_bound(const SConstant& s);

/// The least dyadic k/2^bits that satisfies s_above_q5_bound.
SConstant least_dyadic_above_q5_bound(unsigned long bits);

/// (2 + sqrt 2)/8 as a double, for numeric reporting only.
double q5_bound_approx();

}  // namespace iqcl
