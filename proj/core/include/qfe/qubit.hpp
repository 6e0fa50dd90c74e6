#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "qfe/bit.hpp"
#include "qfe/random.hpp"

namespace qfe {

using Complex = std::complex<double>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryRejectTolerance = 1e-9;
inline constexpr double kMeasureTolerance = 1e-9;
inline constexpr double kEigenTolerance = 1e-10;
inline constexpr std::size_t kMaxDim = 8;

/// Normalized single-qubit state amp0|0> + amp1|1>.
class PureState {
 public:
  /// Throws InvalidArgument unless |amp0|^2 + |amp1|^2 = 1 within 1e-12.
  PureState(Complex amp0, Complex amp1);

  static PureState basis(Bit b);
  /// Rescales an arbitrary nonzero vector to unit norm.
  static PureState normalized(Complex amp0, Complex amp1);

  Complex amp0() const noexcept { return amp_[0]; }
  Complex amp1() const noexcept { return amp_[1]; }
  Complex amp(Bit b) const noexcept { return amp_[b.value()]; }
  double probability(Bit b) const noexcept { return std::norm(amp_[b.value()]); }

  friend bool operator==(const PureState&, const PureState&) = default;

 private:
  std::array<Complex, 2> amp_;
};

/// Max entrywise modulus of the difference.
double max_abs_diff(const PureState& a, const PureState& b);

/// 2x2 unitary, row-major.
class Unitary2 {
 public:
  /// Throws NotUnitary when the unitarity defect exceeds 1e-9.
  Unitary2(Complex u00, Complex u01, Complex u10, Complex u11);

  static Unitary2 identity();

  Complex operator()(std::size_t row, std::size_t col) const noexcept {
    return m_[row * 2 + col];
  }

  /// max over entries of |U^dagger U - I| and |U U^dagger - I|.
  double unitarity_defect() const noexcept;

  friend bool operator==(const Unitary2&, const Unitary2&) = default;

 private:
  std::array<Complex, 4> m_;
};

double unitarity_defect(const std::array<Complex, 4>& m) noexcept;

PureState apply(const Unitary2& u, const PureState& psi);
Unitary2 dagger(const Unitary2& u);
Unitary2 multiply(const Unitary2& a, const Unitary2& b);

/// Deterministic computational-basis readout of a state that is a basis
/// state up to phase: returns b when |amp_b|^2 >= 1 - tol. Throws
/// AmbiguousState otherwise.
Bit measure_computational(const PureState& psi, double tol = kMeasureTolerance);

/// Born-rule sample of a computational-basis measurement.
Bit sample_measure(const PureState& psi, Rng& rng);

/// Square complex matrix of dimension 1..8, row-major. No physical
/// invariants; used for differences of density matrices and operators.
class Matrix {
 public:
  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::vector<Complex> entries);

  static Matrix identity(std::size_t dim);
  static Matrix outer(const PureState& psi);
  static Matrix from_unitary(const Unitary2& u);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept { return e_[r * dim_ + c]; }
  Complex operator()(std::size_t r, std::size_t c) const noexcept {
    return e_[r * dim_ + c];
  }
  const std::vector<Complex>& entries() const noexcept { return e_; }

  Complex trace() const noexcept;
  Matrix adjoint() const;
  double hermiticity_defect() const noexcept;
  double max_abs() const noexcept;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(Complex k);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, Complex k) { return a *= k; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);

 private:
  std::size_t dim_;
  std::vector<Complex> e_;
};

Matrix kron(const Matrix& a, const Matrix& b);

/// Eigenvalues of a Hermitian matrix, ascending. Closed form for dim <= 2,
/// cyclic complex Jacobi otherwise (off-diagonal Frobenius norm < 1e-13).
std::vector<double> hermitian_eigenvalues(const Matrix& h);

/// Density matrix of dimension 2, 4 or 8.
class DensityMatrix {
 public:
  /// Validates Hermiticity and unit trace (1e-12) and positivity
  /// (eigenvalues >= -1e-10). Throws InvalidArgument.
  explicit DensityMatrix(Matrix m);

  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix diagonal(const std::vector<double>& probs);

  std::size_t dim() const noexcept { return m_.dim(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const noexcept { return m_(r, c); }

 private:
  Matrix m_;
};

/// Kronecker product; dim(a) * dim(b) must not exceed 8.
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

/// Half the sum of absolute eigenvalues of a - b.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Max entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace qfe
