#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>

#include "generators.hpp"
#include "iqcl/qmix.hpp"

using namespace iqcl;

namespace {

using M2 = Eigen::Matrix2cd;
using C = std::complex<double>;

M2 density(const BlochQmix& b) {
  M2 m;
  m << C(1 + b.r3(), 0), C(b.r1(), -b.r2()), C(b.r1(), b.r2()), C(1 - b.r3(), 0);
  return m / 2.0;
}

BlochQmix coords(const M2& m) {
  return BlochQmix(2 * m(0, 1).real(), -2 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
}

M2 sigma_x() {
  M2 m;
  m << 0, 1, 1, 0;
  return m;
}

M2 root_not() {
  M2 m;
  m << C(0.5, 0.5), C(0.5, -0.5), C(0.5, -0.5), C(0.5, 0.5);
  return m;
}

void expect_near(const BlochQmix& a, const BlochQmix& b, double tol) {
  EXPECT_NEAR(a.r1(), b.r1(), tol);
  EXPECT_NEAR(a.r2(), b.r2(), tol);
  EXPECT_NEAR(a.r3(), b.r3(), tol);
}

}  // namespace

TEST(BlochQmix, BallMembership) {
  EXPECT_NO_THROW(BlochQmix(0, 0, 1 + 1e-13));
  EXPECT_THROW(BlochQmix(0, 0.8, 0.8), std::invalid_argument);
  EXPECT_THROW(DiagonalQmix(1.5), std::invalid_argument);
}

TEST(Probabilities, Examples) {
  EXPECT_EQ(prob(BlochQmix::falsity()), 0);
  EXPECT_EQ(prob(BlochQmix::truth()), 1);
  EXPECT_EQ(prob(BlochQmix(0, 0.5, 0)), 0.5);
  EXPECT_EQ(sqrt_prob(BlochQmix::truth()), 0.5);
  EXPECT_EQ(sqrt_prob(BlochQmix(0, 1, 0)), 0);
  EXPECT_EQ(sqrt_prob(BlochQmix(0, -1, 0)), 1);
}

TEST(Gates, NotExamples) {
  EXPECT_EQ(gate_not(BlochQmix::falsity()), BlochQmix::truth());
  EXPECT_EQ(gate_not(BlochQmix(0, 0.3, 0.4)), BlochQmix(0, -0.3, -0.4));
  BlochQmix r(0.1, -0.2, 0.3);
  EXPECT_EQ(gate_not(gate_not(r)), r);
}

TEST(Gates, SqrtNotExamples) {
  EXPECT_EQ(gate_sqrt_not(BlochQmix::truth()), BlochQmix(0, 1, 0));
  EXPECT_EQ(gate_sqrt_not(gate_sqrt_not(BlochQmix(0, 0.25, -0.5))), BlochQmix(0, -0.25, 0.5));
  EXPECT_EQ(gate_sqrt_not(BlochQmix::mixed()), BlochQmix::mixed());
}

TEST(Gates, BlochMapsMatchMatrixConjugation) {
  gen::Gen g(10);
  for (int i = 0; i < 1000; ++i) {
    BlochQmix b = g.ball_point();
    M2 rho = density(b);
    expect_near(gate_not(b), coords(sigma_x() * rho * sigma_x().adjoint()), 1e-14);
    expect_near(gate_sqrt_not(b), coords(root_not() * rho * root_not().adjoint()), 1e-14);
  }
}

TEST(Gates, IrreversibleOperationExamples) {
  BlochQmix half = DiagonalQmix(0.5);
  EXPECT_DOUBLE_EQ(iand(half, half).lambda(), 0.25);
  BlochQmix tau(0.2, -0.4, 0.1);
  EXPECT_EQ(iand(tau, BlochQmix::falsity()).lambda(), 0);
  EXPECT_DOUBLE_EQ(iand(tau, BlochQmix::truth()).lambda(), prob(tau));
  EXPECT_EQ(luk_oplus(half, DiagonalQmix(0.75)).lambda(), 1);
  EXPECT_DOUBLE_EQ(luk_oplus(BlochQmix::falsity(), tau).lambda(), prob(tau));
  EXPECT_EQ(luk_oplus(BlochQmix::truth(), tau).lambda(), 1);
  EXPECT_DOUBLE_EQ(q_implies(BlochQmix::truth(), tau).lambda(), prob(tau));
  EXPECT_DOUBLE_EQ(q_meet(DiagonalQmix(0.25), DiagonalQmix(0.75)).lambda(), 0.25);
  EXPECT_EQ(q_implies(tau, tau).lambda(), 1);
}

TEST(Gates, ProbabilityLaws) {
  gen::Gen g(11);
  for (int i = 0; i < 1000; ++i) {
    BlochQmix t = g.ball_point(), n = g.ball_point(), s = g.ball_point();
    EXPECT_EQ(prob(iand(t, n)), prob(iand(n, t)));
    EXPECT_NEAR(prob(iand(iand(t, n), s)), prob(iand(t, iand(n, s))), 1e-15);
    EXPECT_NEAR(prob(iand(t, n)), prob(t) * prob(n), 1e-15);
    EXPECT_NEAR(prob(luk_oplus(t, n)), std::min(1.0, prob(t) + prob(n)), 1e-15);
    EXPECT_EQ(gate_sqrt_not(gate_not(t)), gate_not(gate_sqrt_not(t)));
    EXPECT_EQ(gate_sqrt_not(gate_sqrt_not(t)), gate_not(t));
    EXPECT_EQ(sqrt_prob(iand(t, n).bloch()), 0.5);
    EXPECT_EQ(sqrt_prob(luk_oplus(t, n).bloch()), 0.5);
    EXPECT_NEAR(prob(q_meet(t, n)), std::min(prob(t), prob(n)), 1e-15);
    EXPECT_NEAR(prob(q_join(t, n)), std::max(prob(t), prob(n)), 1e-15);
  }
}

TEST(Gates, QuarterSumBound) {
  gen::Gen g(12);
  const double bound = (2 + std::sqrt(2.0)) / 8;
  for (int i = 0; i < 20000; ++i) {
    BlochQmix s = g.ball_point();
    EXPECT_LE(prob(s) / 4 + sqrt_prob(s) / 4, bound + 1e-15);
    EXPECT_LE(std::min(1.0, prob(s) / 4 + 0.125), 0.375);
  }
  BlochQmix best(0, -1 / std::sqrt(2.0), -1 / std::sqrt(2.0));
  EXPECT_NEAR(prob(best) / 4 + sqrt_prob(best) / 4, bound, 1e-6);
}

TEST(Literals, ParseAndPrint) {
  EXPECT_EQ(parse_qmix("(0, 0.5, -0.25)"), BlochQmix(0, 0.5, -0.25));
  EXPECT_EQ(parse_qmix("rho(1/4)"), BlochQmix(0, 0, 0.5));
  BlochQmix b(0.1, 0.2, -0.3);
  EXPECT_EQ(parse_qmix(to_string(b)), b);
  EXPECT_THROW(parse_qmix("(1, 2)"), std::invalid_argument);
  EXPECT_THROW(parse_qmix("(1, 1, 1)"), std::invalid_argument);
  EXPECT_THROW(parse_qmix("rho(2)"), std::invalid_argument);
}
