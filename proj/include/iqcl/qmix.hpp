#pragma once

// Single-qbit density operators in Bloch coordinates and the gate algebra
// built on them (NOT, sqrt NOT, IAND, Lukasiewicz sum and derived ops).

#include <string>
#include <string_view>

namespace iqcl {

inline constexpr double kBallTolerance = 1e-12;

/// rho = (I + r1 sx + r2 sy + r3 sz) / 2 with r1^2 + r2^2 + r3^2 <= 1.
class BlochQmix {
 public:
  BlochQmix() = default;
  /// Throws std::invalid_argument when the point lies outside the unit ball
  /// by more than kBallTolerance.
  BlochQmix(double r1, double r2, double r3);

  static BlochQmix falsity() { return {0, 0, 1}; }  // P0
  static BlochQmix truth() { return {0, 0, -1}; }   // P1
  static BlochQmix mixed() { return {0, 0, 0}; }

  double r1() const { return r1_; }
  double r2() const { return r2_; }
  double r3() const { return r3_; }

  friend bool operator==(const BlochQmix&, const BlochQmix&) = default;

 private:
  double r1_ = 0, r2_ = 0, r3_ = 0;
};

/// rho_lambda = (1 - lambda) P0 + lambda P1.
class DiagonalQmix {
 public:
  DiagonalQmix() = default;
  /// Throws std::invalid_argument unless 0 <= lambda <= 1.
  explicit DiagonalQmix(double lambda);

  double lambda() const { return lambda_; }
  BlochQmix bloch() const { return {0, 0, 1 - 2 * lambda_}; }
  operator BlochQmix() const { return bloch(); }

 private:
  double lambda_ = 0;
};

double prob(const BlochQmix& rho);
double sqrt_prob(const BlochQmix& rho);

BlochQmix gate_not(const BlochQmix& rho);
BlochQmix gate_sqrt_not(const BlochQmix& rho);

DiagonalQmix iand(const BlochQmix& tau, const BlochQmix& nu);
DiagonalQmix luk_oplus(const BlochQmix& tau, const BlochQmix& nu);
DiagonalQmix q_odot(const BlochQmix& tau, const BlochQmix& nu);
DiagonalQmix q_implies(const BlochQmix& tau, const BlochQmix& nu);
DiagonalQmix q_meet(const BlochQmix& tau, const BlochQmix& nu);
DiagonalQmix q_join(const BlochQmix& tau, const BlochQmix& nu);

/// Reads `(r1, r2, r3)` or `rho(lambda)`. Throws std::invalid_argument.
BlochQmix parse_qmix(std::string_view text);
std::string to_string(const BlochQmix& rho);

}  // namespace iqcl
