#include "iqcl/nqubit_sim.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace iqcl::sim {

namespace {

int qubits_for_dimension(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n == 0)
    throw std::invalid_argument("matrix dimension " + std::to_string(dim) + " is not 2^n");
  return n;
}

void check_size(int n, int max_qubits) {
  if (n < 1 || n > max_qubits)
    throw std::invalid_argument("qbit count " + std::to_string(n) + " outside 1.." +
                                std::to_string(max_qubits));
}

Matrix sigma_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Matrix sqrt_not_1() {
  const Complex a(0.5, 0.5), b(0.5, -0.5);
  Matrix m(2, 2);
  m << a, b, b, a;
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// I (x) ... (x) g (x) ... (x) I with g at slot j.
Matrix single_slot(int n, int j, const Matrix& g, int max_qubits) {
  check_size(n, max_qubits);
  if (j < 1 || j > n)
    throw std::invalid_argument("register index " + std::to_string(j) + " outside 1.." +
                                std::to_string(n));
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 1; k <= n; ++k) out = kron(out, k == j ? g : Matrix::Identity(2, 2));
  return out;
}

Matrix diagonal_projector(int n, int last_bit, int max_qubits) {
  check_size(n, max_qubits);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix p = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    if ((i & 1) == last_bit) p(i, i) = 1;
  return p;
}

}  // namespace

DensityMatrix::DensityMatrix(Matrix m, SimTolerance tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("density matrix is not square");
  n_ = qubits_for_dimension(m_.rows());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol.hermitian)
    throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(m_.trace() - Complex(1)) > tol.trace)
    throw std::invalid_argument("density matrix trace is not 1");
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol.psd)
    throw std::invalid_argument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::basis(int n, std::uint64_t index) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  if (static_cast<Eigen::Index>(index) >= dim) throw std::invalid_argument("basis index out of range");
  Matrix m = Matrix::Zero(dim, dim);
  m(index, index) = 1;
  return DensityMatrix(std::move(m));
}

GateMatrix::GateMatrix(Matrix m, SimTolerance tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw std::invalid_argument("gate matrix is not square");
  n_ = qubits_for_dimension(m_.rows());
  Matrix id = Matrix::Identity(m_.rows(), m_.cols());
  if ((m_ * m_.adjoint() - id).cwiseAbs().maxCoeff() > tol.unitary)
    throw std::invalid_argument("gate matrix is not unitary");
}

DensityMatrix GateMatrix::apply(const DensityMatrix& rho) const {
  if (rho.qubits() != n_) throw std::invalid_argument("gate and state sizes differ");
  Matrix out = m_ * rho.matrix() * m_.adjoint();
  return DensityMatrix(std::move(out));
}

Matrix projector_p1(int n, int max_qubits) { return diagonal_projector(n, 1, max_qubits); }
Matrix projector_p0(int n, int max_qubits) { return diagonal_projector(n, 0, max_qubits); }

double projector_normalization(int n) { return 1.0 / static_cast<double>(std::uint64_t{1} << (n - 1)); }

double prob_n(const DensityMatrix& rho) {
  double p = 0;
  const Matrix& m = rho.matrix();
  for (Eigen::Index i = 1; i < m.rows(); i += 2) p += m(i, i).real();
  if (p < -1e-10 || p > 1 + 1e-10) throw std::logic_error("probability outside [0,1]");
  return std::clamp(p, 0.0, 1.0);
}

GateMatrix not_j(int n, int j, int max_qubits) {
  return GateMatrix(single_slot(n, j, sigma_x(), max_qubits));
}

GateMatrix sqrt_not_j(int n, int j, int max_qubits) {
  return GateMatrix(single_slot(n, j, sqrt_not_1(), max_qubits));
}

GateMatrix toffoli(int n, int m, int max_qubits) {
  const int total = n + m + 1;
  if (n < 1 || m < 1) throw std::invalid_argument("toffoli needs n, m >= 1");
  check_size(total, max_qubits);
  const Eigen::Index dim = Eigen::Index{1} << total;
  // qbit n is bit m+1 of the index, qbit n+m is bit 1, the target is bit 0
  Matrix t = Matrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    bool flip = ((i >> (m + 1)) & 1) && ((i >> 1) & 1);
    t(flip ? (i ^ 1) : i, i) = 1;
  }
  return GateMatrix(std::move(t));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

DensityMatrix and_gate(const DensityMatrix& tau, const DensityMatrix& nu, int max_qubits) {
  GateMatrix t = toffoli(tau.qubits(), nu.qubits(), max_qubits);
  return t.apply(tensor(tensor(tau, nu), DensityMatrix::basis(1, 0)));
}

DensityMatrix partial_trace(const DensityMatrix& rho, int keep_last) {
  const int n = rho.qubits();
  if (keep_last < 1 || keep_last > n)
    throw std::invalid_argument("cannot keep " + std::to_string(keep_last) + " of " +
                                std::to_string(n) + " qbits");
  const Eigen::Index kept = Eigen::Index{1} << keep_last;
  const Eigen::Index traced = Eigen::Index{1} << (n - keep_last);
  const Matrix& m = rho.matrix();
  Matrix out = Matrix::Zero(kept, kept);
  for (Eigen::Index a = 0; a < kept; ++a)
    for (Eigen::Index b = 0; b < kept; ++b)
      for (Eigen::Index e = 0; e < traced; ++e)
        out(a, b) += m((e << keep_last) | a, (e << keep_last) | b);
  return DensityMatrix(std::move(out));
}

std::pair<double, double> meas_distribution(const DensityMatrix& rho) {
  double p = prob_n(rho);
  return {1 - p, p};
}

std::uint64_t sample_measurements(const DensityMatrix& rho, std::uint64_t shots,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution one(prob_n(rho));
  std::uint64_t ones = 0;
  for (std::uint64_t k = 0; k < shots; ++k) ones += one(rng);
  return ones;
}

DensityMatrix bloch_embed(const BlochQmix& b) {
  Matrix m(2, 2);
  m << Complex(1 + b.r3(), 0), Complex(b.r1(), -b.r2()),
      Complex(b.r1(), b.r2()), Complex(1 - b.r3(), 0);
  return DensityMatrix(m / 2.0);
}

BlochQmix bloch_extract(const DensityMatrix& rho) {
  if (rho.qubits() != 1) throw std::invalid_argument("Bloch extraction needs one qbit");
  const Matrix& m = rho.matrix();
  return BlochQmix(2 * m(0, 1).real(), -2 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real());
}

}  // namespace iqcl::sim
