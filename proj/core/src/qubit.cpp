#include "qfe/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qfe {

namespace {

void require_dim(std::size_t dim) {
  if (dim == 0 || dim > kMaxDim) {
    throw InvalidArgument("matrix dimension " + std::to_string(dim) +
                          " outside supported range 1..8");
  }
}

}  // namespace

// ---------------------------------------------------------------- PureState

PureState::PureState(Complex amp0, Complex amp1) : amp_{amp0, amp1} {
  const double n = std::norm(amp0) + std::norm(amp1);
  if (!(std::abs(n - 1.0) <= kNormTolerance)) {
    throw InvalidArgument("pure state is not normalized (norm^2 = " + std::to_string(n) +
                          ")");
  }
}

PureState PureState::basis(Bit b) {
  return b ? PureState(0.0, 1.0) : PureState(1.0, 0.0);
}

PureState PureState::normalized(Complex amp0, Complex amp1) {
  const double n = std::sqrt(std::norm(amp0) + std::norm(amp1));
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  return PureState(amp0 / n, amp1 / n);
}

double max_abs_diff(const PureState& a, const PureState& b) {
  return std::max(std::abs(a.amp0() - b.amp0()), std::abs(a.amp1() - b.amp1()));
}

// ----------------------------------------------------------------- Unitary2

double unitarity_defect(const std::array<Complex, 4>& m) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      Complex udu = 0.0;  // (U^dagger U)_ij
      Complex uud = 0.0;  // (U U^dagger)_ij
      for (std::size_t k = 0; k < 2; ++k) {
        udu += std::conj(m[k * 2 + i]) * m[k * 2 + j];
        uud += m[i * 2 + k] * std::conj(m[j * 2 + k]);
      }
      const Complex id = i == j ? 1.0 : 0.0;
      worst = std::max({worst, std::abs(udu - id), std::abs(uud - id)});
    }
  }
  return worst;
}

Unitary2::Unitary2(Complex u00, Complex u01, Complex u10, Complex u11)
    : m_{u00, u01, u10, u11} {
  const double defect = qfe::unitarity_defect(m_);
  if (!(defect <= kUnitaryRejectTolerance)) {
    throw NotUnitary("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
}

Unitary2 Unitary2::identity() { return Unitary2(1.0, 0.0, 0.0, 1.0); }

double Unitary2::unitarity_defect() const noexcept { return qfe::unitarity_defect(m_); }

PureState apply(const Unitary2& u, const PureState& psi) {
  const Complex a0 = u(0, 0) * psi.amp0() + u(0, 1) * psi.amp1();
  const Complex a1 = u(1, 0) * psi.amp0() + u(1, 1) * psi.amp1();
  return PureState(a0, a1);
}

Unitary2 dagger(const Unitary2& u) {
  return Unitary2(std::conj(u(0, 0)), std::conj(u(1, 0)), std::conj(u(0, 1)),
                  std::conj(u(1, 1)));
}

Unitary2 multiply(const Unitary2& a, const Unitary2& b) {
  return Unitary2(a(0, 0) * b(0, 0) + a(0, 1) * b(1, 0), a(0, 0) * b(0, 1) + a(0, 1) * b(1, 1),
                  a(1, 0) * b(0, 0) + a(1, 1) * b(1, 0), a(1, 0) * b(0, 1) + a(1, 1) * b(1, 1));
}

// -------------------------------------------------------------- measurement

Bit measure_computational(const PureState& psi, double tol) {
  if (psi.probability(kZero) >= 1.0 - tol) return kZero;
  if (psi.probability(kOne) >= 1.0 - tol) return kOne;
  throw AmbiguousState("state is not a computational basis state (p0 = " +
                       std::to_string(psi.probability(kZero)) +
                       ", p1 = " + std::to_string(psi.probability(kOne)) + ")");
}

Bit sample_measure(const PureState& psi, Rng& rng) {
  return uniform_unit(rng) < psi.probability(kOne) ? kOne : kZero;
}

// ------------------------------------------------------------------- Matrix

Matrix::Matrix(std::size_t dim) : dim_(dim), e_(dim * dim, Complex(0.0)) { require_dim(dim); }

Matrix::Matrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), e_(std::move(entries)) {
  require_dim(dim);
  if (e_.size() != dim * dim) {
    throw InvalidArgument("matrix of dimension " + std::to_string(dim) + " needs " +
                          std::to_string(dim * dim) + " entries");
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::outer(const PureState& psi) {
  Matrix m(2);
  const std::array<Complex, 2> v{psi.amp0(), psi.amp1()};
  for (std::size_t r = 0; r < 2; ++r)
    for (std::size_t c = 0; c < 2; ++c) m(r, c) = v[r] * std::conj(v[c]);
  return m;
}

Matrix Matrix::from_unitary(const Unitary2& u) {
  return Matrix(2, {u(0, 0), u(0, 1), u(1, 0), u(1, 1)});
}

Complex Matrix::trace() const noexcept {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

double Matrix::hermiticity_defect() const noexcept {
  double worst = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

double Matrix::max_abs() const noexcept {
  double worst = 0.0;
  for (const Complex& z : e_) worst = std::max(worst, std::abs(z));
  return worst;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.dim_ != dim_) throw InvalidArgument("matrix dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.dim_ != dim_) throw InvalidArgument("matrix dimension mismatch");
  for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex k) {
  for (Complex& z : e_) z *= k;
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("matrix dimension mismatch");
  const std::size_t n = a.dim();
  Matrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex ark = a(r, k);
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > kMaxDim) {
    throw InvalidArgument("tensor product dimension " + std::to_string(n) + " exceeds 8");
  }
  Matrix out(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l)
          out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

// --------------------------------------------------------------- eigensolver

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One complex Jacobi step on the (p, q) plane. The phase of a_pq is first
// rotated into row/column q so the pivot is real, then the classic real
// rotation annihilates it.
void jacobi_rotate(Matrix& a, std::size_t p, std::size_t q) {
  const Complex apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const Complex phase = apq / mag;  // e^{i phi}
  const std::size_t n = a.dim();

  // A <- P^dagger A P with P = diag(..., e^{-i phi} at q, ...).
  for (std::size_t k = 0; k < n; ++k) a(k, q) *= std::conj(phase);
  for (std::size_t k = 0; k < n; ++k) a(q, k) *= phase;
  a(p, q) = mag;
  a(q, p) = mag;

  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const Matrix& h) {
  if (h.hermiticity_defect() > 1e-9) {
    throw InvalidArgument("eigenvalues requested for a non-Hermitian matrix");
  }
  const std::size_t n = h.dim();
  std::vector<double> ev;
  if (n == 1) {
    ev.push_back(h(0, 0).real());
  } else if (n == 2) {
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double half = 0.5 * (a - d);
    const double r = std::sqrt(half * half + std::norm(h(0, 1)));
    ev = {mean - r, mean + r};
  } else {
    Matrix a = h;
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) >= 1e-13; ++sweep) {
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(a, p, q);
    }
    ev.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ev.push_back(a(i, i).real());
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

// ------------------------------------------------------------ DensityMatrix

DensityMatrix::DensityMatrix(Matrix m) : m_(std::move(m)) {
  const std::size_t d = m_.dim();
  if (d != 2 && d != 4 && d != 8) {
    throw InvalidArgument("density matrix dimension must be 2, 4 or 8, got " +
                          std::to_string(d));
  }
  if (m_.hermiticity_defect() > kNormTolerance) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  if (std::abs(m_.trace() - Complex(1.0)) > kNormTolerance) {
    throw InvalidArgument("density matrix trace is not 1");
  }
  const auto ev = hermitian_eigenvalues(m_);
  if (ev.front() < -kEigenTolerance) {
    throw InvalidArgument("density matrix has a negative eigenvalue " +
                          std::to_string(ev.front()));
  }
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(Matrix::outer(psi));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(Matrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

DensityMatrix DensityMatrix::diagonal(const std::vector<double>& probs) {
  Matrix m(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) m(i, i) = probs[i];
  return DensityMatrix(std::move(m));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix(kron(a.matrix(), b.matrix()));
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) {
    throw InvalidArgument("trace distance between matrices of different dimension");
  }
  const auto ev = hermitian_eigenvalues(a.matrix() - b.matrix());
  double sum = 0.0;
  for (double x : ev) sum += std::abs(x);
  return 0.5 * sum;
}

}  // namespace qfe
