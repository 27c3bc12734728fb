#include "iqcl/qmix.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "iqcl/algebra.hpp"

namespace iqcl {

BlochQmix::BlochQmix(double r1, double r2, double r3) : r1_(r1), r2_(r2), r3_(r3) {
  double n2 = r1 * r1 + r2 * r2 + r3 * r3;
  if (!(n2 <= 1 + kBallTolerance))
    throw std::invalid_argument("Bloch vector outside the unit ball: " + to_string(*this));
}

DiagonalQmix::DiagonalQmix(double lambda) : lambda_(lambda) {
  if (!(lambda >= 0 && lambda <= 1))
    throw std::invalid_argument("diagonal qmix parameter outside [0,1]");
}

double prob(const BlochQmix& rho) { return (1 - rho.r3()) / 2; }
double sqrt_prob(const BlochQmix& rho) { return (1 - rho.r2()) / 2; }

// sigma_x conjugation flips the y and z axes.
BlochQmix gate_not(const BlochQmix& rho) { return {rho.r1(), -rho.r2(), -rho.r3()}; }

// Conjugation by [[1+i, 1-i], [1-i, 1+i]]/2: a quarter turn about x.
BlochQmix gate_sqrt_not(const BlochQmix& rho) { return {rho.r1(), -rho.r3(), rho.r2()}; }

namespace {
// Rounding can push a probability a hair outside [0,1] near the poles.
double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }
}  // namespace

DiagonalQmix iand(const BlochQmix& tau, const BlochQmix& nu) {
  return DiagonalQmix(clamp01(mv::product(prob(tau), prob(nu))));
}

DiagonalQmix luk_oplus(const BlochQmix& tau, const BlochQmix& nu) {
  return DiagonalQmix(clamp01(mv::oplus(prob(tau), prob(nu))));
}

DiagonalQmix q_odot(const BlochQmix& tau, const BlochQmix& nu) {
  return DiagonalQmix(prob(gate_not(luk_oplus(gate_not(tau), gate_not(nu)))));
}

DiagonalQmix q_implies(const BlochQmix& tau, const BlochQmix& nu) {
  return luk_oplus(gate_not(tau), nu);
}

DiagonalQmix q_meet(const BlochQmix& tau, const BlochQmix& nu) {
  return q_odot(tau, q_implies(tau, nu));
}

DiagonalQmix q_join(const BlochQmix& tau, const BlochQmix& nu) {
  return q_implies(q_implies(tau, nu), nu);
}

BlochQmix parse_qmix(std::string_view text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  auto bad = [&] { return std::invalid_argument("malformed qmix literal '" + std::string(text) + "'"); };
  auto number = [&](const std::string& t) {
    if (t.find('/') != std::string::npos) {
      try {
        return to_double(parse_rational(t));
      } catch (const std::invalid_argument&) {
        throw bad();
      }
    }
    // strtod rounds to nearest, so printed values read back exactly
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (t.empty() || end != t.c_str() + t.size()) throw bad();
    return v;
  };
  if (s.rfind("rho(", 0) == 0 && s.back() == ')')
    return DiagonalQmix(number(s.substr(4, s.size() - 5))).bloch();
  if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw bad();
  std::string body = s.substr(1, s.size() - 2);
  auto c1 = body.find(',');
  auto c2 = c1 == std::string::npos ? c1 : body.find(',', c1 + 1);
  if (c2 == std::string::npos || body.find(',', c2 + 1) != std::string::npos) throw bad();
  return BlochQmix(number(body.substr(0, c1)), number(body.substr(c1 + 1, c2 - c1 - 1)),
                   number(body.substr(c2 + 1)));
}

std::string to_string(const BlochQmix& rho) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", rho.r1(), rho.r2(), rho.r3());
  return buf;
}

}  // namespace iqcl
