#include <gtest/gtest.h>

#include "generators.hpp"
#include "iqcl/nqubit_sim.hpp"

using namespace iqcl;
using namespace iqcl::sim;

namespace {

Matrix ket(int n, std::uint64_t index) {
  Matrix v = Matrix::Zero(Eigen::Index{1} << n, 1);
  v(index, 0) = 1;
  return v;
}

// The basis image of a permutation gate, by brute force.
std::uint64_t image(const GateMatrix& g, std::uint64_t index) {
  Matrix out = g.matrix() * ket(g.qubits(), index);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    if (std::abs(out(i, 0) - Complex(1)) < 1e-15) return static_cast<std::uint64_t>(i);
  return ~0ULL;
}

DensityMatrix diagonal(double lambda) { return bloch_embed(DiagonalQmix(lambda)); }

}  // namespace

TEST(Projectors, ProbabilityOfBasisStates) {
  EXPECT_EQ(prob_n(DensityMatrix::basis(2, 0b11)), 1);
  EXPECT_EQ(prob_n(DensityMatrix::basis(2, 0b10)), 0);
  for (double l : {0.0, 0.3, 0.5, 1.0}) EXPECT_NEAR(prob_n(diagonal(l)), l, 1e-15);
}

TEST(Projectors, NormalisedProjectorsHaveUnitTrace) {
  for (int n = 1; n <= 6; ++n) {
    double k = projector_normalization(n);
    EXPECT_NEAR((k * projector_p1(n)).trace().real(), 1, 1e-15);
    EXPECT_NEAR((k * projector_p0(n)).trace().real(), 1, 1e-15);
    EXPECT_NO_THROW(DensityMatrix(k * projector_p1(n)));
  }
  EXPECT_THROW(projector_p1(7), std::invalid_argument);
}

TEST(Gates, RegisterNegation) {
  EXPECT_EQ(image(not_j(1, 1), 0), 1u);
  EXPECT_EQ(image(not_j(2, 1), 0b01), 0b11u);
  EXPECT_EQ(image(not_j(3, 3), 0b100), 0b101u);
  EXPECT_THROW(not_j(2, 3), std::invalid_argument);
  EXPECT_THROW(sqrt_not_j(2, 0), std::invalid_argument);
}

TEST(Gates, SqrtNotSquaresToNot) {
  for (int n = 1; n <= 3; ++n)
    for (int j = 1; j <= n; ++j) {
      Matrix sq = sqrt_not_j(n, j).matrix() * sqrt_not_j(n, j).matrix();
      EXPECT_LE((sq - not_j(n, j).matrix()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(Gates, ToffoliTruthTable) {
  GateMatrix t = toffoli(1, 1);
  EXPECT_EQ(image(t, 0b110), 0b111u);
  EXPECT_EQ(image(t, 0b100), 0b100u);
  EXPECT_EQ(image(t, 0b111), 0b110u);
  // general sizes: target flips iff the last qbit of each register is 1
  for (int n = 1; n <= 3; ++n)
    for (int m = 1; n + m + 1 <= 6; ++m) {
      GateMatrix g = toffoli(n, m);
      for (std::uint64_t i = 0; i < (1ULL << (n + m + 1)); ++i) {
        std::uint64_t x_last = (i >> m >> 1) & 1, y_last = (i >> 1) & 1;
        EXPECT_EQ(image(g, i), i ^ (x_last & y_last));
      }
    }
  EXPECT_THROW(toffoli(3, 3), std::invalid_argument);
}

TEST(Gates, AllBuildersAreUnitary) {
  for (int n = 1; n <= 4; ++n)
    for (int j = 1; j <= n; ++j) {
      Matrix a = not_j(n, j).matrix(), b = sqrt_not_j(n, j).matrix();
      Matrix id = Matrix::Identity(a.rows(), a.cols());
      EXPECT_LE((a * a.adjoint() - id).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_LE((b * b.adjoint() - id).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Gates, NegatingLastRegisterFlipsTruth) {
  gen::Gen g(20);
  for (int i = 0; i < 50; ++i) {
    DensityMatrix rho = tensor(bloch_embed(g.ball_point()), bloch_embed(g.ball_point()));
    EXPECT_NEAR(prob_n(not_j(2, 2).apply(rho)), 1 - prob_n(rho), 1e-14);
  }
}

TEST(AndGate, Examples) {
  DensityMatrix p1 = bloch_embed(BlochQmix::truth()), p0 = bloch_embed(BlochQmix::falsity());
  EXPECT_NEAR(prob_n(and_gate(p1, p1)), 1, 1e-15);
  EXPECT_NEAR(prob_n(and_gate(p0, bloch_embed(BlochQmix(0.3, 0.2, 0.1)))), 0, 1e-15);
  EXPECT_NEAR(prob_n(and_gate(diagonal(0.5), diagonal(0.5))), 0.25, 1e-15);
}

TEST(AndGate, PartialTraceEqualsIrreversibleAnd) {
  gen::Gen g(21);
  for (int i = 0; i < 100; ++i) {
    BlochQmix t = g.ball_point(), n = g.ball_point();
    BlochQmix got = bloch_extract(partial_trace(and_gate(bloch_embed(t), bloch_embed(n)), 1));
    BlochQmix want = iand(t, n);
    EXPECT_NEAR(got.r1(), want.r1(), 1e-10);
    EXPECT_NEAR(got.r2(), want.r2(), 1e-10);
    EXPECT_NEAR(got.r3(), want.r3(), 1e-10);
  }
}

TEST(PartialTrace, ProductAndBellStates) {
  BlochQmix a(0.1, 0.2, 0.3), b(-0.5, 0.1, 0.4);
  BlochQmix got = bloch_extract(partial_trace(tensor(bloch_embed(a), bloch_embed(b)), 1));
  EXPECT_NEAR(got.r1(), b.r1(), 1e-15);
  EXPECT_NEAR(got.r2(), b.r2(), 1e-15);
  EXPECT_NEAR(got.r3(), b.r3(), 1e-15);

  Matrix bell = (ket(2, 0) + ket(2, 3)) / std::sqrt(2.0);
  BlochQmix mixed = bloch_extract(partial_trace(DensityMatrix(bell * bell.adjoint()), 1));
  EXPECT_NEAR(mixed.r1(), 0, 1e-15);
  EXPECT_NEAR(mixed.r2(), 0, 1e-15);
  EXPECT_NEAR(mixed.r3(), 0, 1e-15);

  gen::Gen g(22);
  DensityMatrix big = tensor(tensor(bloch_embed(g.ball_point()), bloch_embed(g.ball_point())), bloch_embed(g.ball_point()));
  for (int k = 1; k <= 3; ++k) EXPECT_NEAR(partial_trace(big, k).matrix().trace().real(), 1, 1e-14);
  EXPECT_THROW(partial_trace(big, 4), std::invalid_argument);
}

TEST(Measurement, DistributionAndSampling) {
  auto d = meas_distribution(diagonal(0.3));
  EXPECT_NEAR(d.first, 0.7, 1e-15);
  EXPECT_NEAR(d.second, 0.3, 1e-15);
  d = meas_distribution(bloch_embed(BlochQmix::falsity()));
  EXPECT_EQ(d.first, 1);
  EXPECT_EQ(d.second, 0);
  d = meas_distribution(bloch_embed(BlochQmix::mixed()));
  EXPECT_EQ(d.first, 0.5);
  std::uint64_t ones = sample_measurements(diagonal(0.3), 100000, 7);
  EXPECT_NEAR(ones / 100000.0, 0.3, 0.01);
  EXPECT_EQ(ones, sample_measurements(diagonal(0.3), 100000, 7));
}

TEST(Bloch, EmbedExtractRoundTrip) {
  EXPECT_LE((bloch_embed(BlochQmix::falsity()).matrix() - Matrix(Eigen::Matrix2cd{{1, 0}, {0, 0}})).cwiseAbs().maxCoeff(), 0);
  EXPECT_LE((bloch_embed(BlochQmix::mixed()).matrix() - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 0);
  gen::Gen g(23);
  for (int i = 0; i < 1000; ++i) {
    BlochQmix b = g.ball_point();
    BlochQmix back = bloch_extract(bloch_embed(b));
    EXPECT_NEAR(back.r1(), b.r1(), 1e-12);
    EXPECT_NEAR(back.r2(), b.r2(), 1e-12);
    EXPECT_NEAR(back.r3(), b.r3(), 1e-12);
  }
  EXPECT_THROW(bloch_extract(DensityMatrix::basis(2, 0)), std::invalid_argument);
}

TEST(Validation, RejectsInvalidMatrices) {
  Matrix m(2, 2);
  m << 1, 0.5, 0, 0;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
  m << 2, 0, 0, -1;
  EXPECT_THROW(DensityMatrix{m}, std::invalid_argument);
  m << 1, 1, 0, 1;
  EXPECT_THROW(GateMatrix{m}, std::invalid_argument);
  EXPECT_THROW(DensityMatrix{Matrix::Identity(3, 3) / 3.0}, std::invalid_argument);
}
