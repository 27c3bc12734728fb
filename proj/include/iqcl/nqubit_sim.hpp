#pragma once

// Dense density-matrix simulator for the n-qbit gates: NOT and sqrt NOT on
// one register, Toffoli, the reversible AND, partial trace and measurement.
// Qbit 1 is the leftmost tensor factor (most significant index bit).

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <utility>

#include "iqcl/qmix.hpp"

namespace iqcl::sim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

inline constexpr int kDefaultMaxQubits = 6;

/// Tolerances for validating matrices built or supplied by callers.
struct SimTolerance {
  double hermitian = 1e-12;
  double trace = 1e-12;
  double psd = 1e-10;
  double unitary = 1e-12;
};

class DensityMatrix {
 public:
  /// Throws std::invalid_argument if `m` is not a 2^n square matrix that is
  /// Hermitian, of unit trace and positive semidefinite within `tol`.
  explicit DensityMatrix(Matrix m, SimTolerance tol = {});

  /// |index><index| on n qbits.
  static DensityMatrix basis(int n, std::uint64_t index);

  int qubits() const { return n_; }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
  int n_ = 0;
};

class GateMatrix {
 public:
  /// Throws std::invalid_argument unless `m` is a 2^n unitary within tol.
  explicit GateMatrix(Matrix m, SimTolerance tol = {});

  int qubits() const { return n_; }
  const Matrix& matrix() const { return m_; }

  /// U rho U^dagger.
  DensityMatrix apply(const DensityMatrix& rho) const;

 private:
  Matrix m_;
  int n_ = 0;
};

/// Projector onto basis states whose last qbit is 1.
Matrix projector_p1(int n, int max_qubits = kDefaultMaxQubits);
Matrix projector_p0(int n, int max_qubits = kDefaultMaxQubits);
/// 1/2^(n-1), the factor that turns projector_p0/p1 into density operators.
double projector_normalization(int n);

/// Tr(P1 rho), clamped to [0,1] when within 1e-10 of it.
double prob_n(const DensityMatrix& rho);

GateMatrix not_j(int n, int j, int max_qubits = kDefaultMaxQubits);
GateMatrix sqrt_not_j(int n, int j, int max_qubits = kDefaultMaxQubits);
/// On n+m+1 qbits: the last qbit is XORed with (qbit n) AND (qbit n+m).
GateMatrix toffoli(int n, int m, int max_qubits = kDefaultMaxQubits);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// T (tau (x) nu (x) P0) T with T = toffoli(n, m).
DensityMatrix and_gate(const DensityMatrix& tau, const DensityMatrix& nu,
                       int max_qubits = kDefaultMaxQubits);

/// Traces out all but the last `keep_last` qbits.
DensityMatrix partial_trace(const DensityMatrix& rho, int keep_last);

/// (1 - p, p) with p = prob_n(rho).
std::pair<double, double> meas_distribution(const DensityMatrix& rho);
/// Reads the last qbit `shots` times with a seeded generator; returns the
/// number of ones.
std::uint64_t sample_measurements(const DensityMatrix& rho, std::uint64_t shots,
                                  std::uint64_t seed);

DensityMatrix bloch_embed(const BlochQmix& b);
/// Throws std::invalid_argument unless rho has one qbit.
BlochQmix bloch_extract(const DensityMatrix& rho);

}  // namespace iqcl::sim
