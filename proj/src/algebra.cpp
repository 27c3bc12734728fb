#include "iqcl/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace iqcl {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { throw std::invalid_argument("malformed number '" + s + "'"); };
  if (s.empty()) fail();
  auto all_digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = s;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    q = Rational(Integer(std::string(num)), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto ip = body.substr(0, dot);
    auto fp = body.substr(dot + 1);
    if ((!ip.empty() && !all_digits(ip)) || !all_digits(fp)) fail();
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip));
    q = Rational(whole * scale + Integer(std::string(fp)), scale);
  } else {
    if (!all_digits(body)) fail();
    q = Rational(Integer(std::string(body)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
  Rational q(x);  // mpq_set_d is exact
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

UnitValue::UnitValue(Rational value) : value_(std::move(value)) {
  value_.canonicalize();
  if (value_ < 0 || value_ > 1)
    throw std::out_of_range("unit value out of [0,1]: " + iqcl::to_string(value_));
}

std::string to_string(const UnitValue& x) { return to_string(x.value()); }

UnitValue mv_oplus(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::oplus(x.value(), y.value()));
}
UnitValue mv_neg(const UnitValue& x) { return UnitValue(mv::neg(x.value())); }
UnitValue mv_odot(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::odot(x.value(), y.value()));
}
UnitValue mv_implies(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::implies(x.value(), y.value()));
}
UnitValue mv_meet(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::meet(x.value(), y.value()));
}
UnitValue mv_join(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::join(x.value(), y.value()));
}
UnitValue pmv_product(const UnitValue& x, const UnitValue& y) {
  return UnitValue(mv::product(x.value(), y.value()));
}

bool is_dyadic(const Rational& q) {
  const Integer& d = q.get_den();
  // a positive integer is a power of two iff it has a single set bit
  return d > 0 && mpz_popcount(d.get_mpz_t()) == 1;
}

SConstant::SConstant(Integer numerator, unsigned long exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, exponent_);
  if (numerator_ < 0 || numerator_ > denom)
    throw std::invalid_argument("constant " + numerator_.get_str() + "/2^" +
                                std::to_string(exponent_) + " is outside [0,1]");
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  while (exponent_ > 0 && mpz_even_p(numerator_.get_mpz_t())) {
    numerator_ /= 2;
    --exponent_;
  }
}

SConstant SConstant::from_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c < 0 || c > 1)
    throw std::invalid_argument("constant " + to_string(c) + " is outside [0,1]");
  if (!is_dyadic(c))
    throw std::invalid_argument("constant " + to_string(c) + " is not dyadic");
  unsigned long exponent = mpz_sizeinbase(c.get_den().get_mpz_t(), 2) - 1;
  return SConstant(c.get_num(), exponent);
}

Rational SConstant::value() const {
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, exponent_);
  Rational q(numerator_, denom);
  q.canonicalize();
  return q;
}

std::strong_ordering operator<=>(const SConstant& a, const SConstant& b) {
  int c = cmp(a.value(), b.value());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::string to_string(const SConstant& s) { return to_string(s.value()); }

unsigned long s_approximation_bits(const Rational& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  // largest k with 2^k * epsilon <= 1
  unsigned long k = 0;
  Rational scaled = epsilon;
  if (scaled > 1) return 1;  // floor(log2(1/eps)) < 0; one bit is already within eps
  while (scaled * 2 <= 1) {
    scaled *= 2;
    ++k;
  }
  return k + 2;
}

SConstant s_approximate(const Rational& target, const Rational& epsilon) {
  if (target < 0 || target > 1) throw std::invalid_argument("target outside [0,1]");
  unsigned long bits = s_approximation_bits(epsilon);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
  Rational scaled = target * scale;
  Integer truncated;
  mpz_fdiv_q(truncated.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  return SConstant(truncated, bits);
}

SConstant s_approximate(double target, double epsilon) {
  return s_approximate(rational_from_double(target), rational_from_double(epsilon));
}

bool s_above_q5_bound(const SConstant& s) {
  Rational t = s.value() * 8 - 2;
  return t >= 0 && t * t >= 2;
}

SConstant least_dyadic_above_q5_bound(unsigned long bits) {
  Integer denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 2, bits);
  // start from the floating estimate and correct exactly in both directions
  Integer k(static_cast<unsigned long>(std::floor(q5_bound_approx() * denom.get_d())));
  while (k > 0 && s_above_q5_bound(SConstant(k - 1, bits))) --k;
  while (!s_above_q5_bound(SConstant(k, bits))) ++k;
  return SConstant(k, bits);
}

double q5_bound_approx() { return (2.0 + std::sqrt(2.0)) / 8.0; }

}  // namespace iqcl
