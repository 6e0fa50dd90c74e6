#include "qfe/indist.hpp"

#include <algorithm>
#include <cmath>

#include "qfe/xi_cipher.hpp"

namespace qfe {

MessageDistribution::MessageDistribution(double gamma0, double gamma1) : g0_(gamma0), g1_(gamma1) {
  if (!(g0_ >= 0.0) || !(g1_ >= 0.0) || std::abs(g0_ + g1_ - 1.0) > kNormTolerance) {
    throw InvalidArgument("message distribution must be non-negative and sum to 1");
  }
}

MessageDistribution MessageDistribution::from_min_entropy(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("min-entropy must lie in [0, 1]");
  const double g0 = std::exp2(-t);
  return MessageDistribution(g0, 1.0 - g0);
}

double MessageDistribution::min_entropy() const noexcept {
  return -std::log2(std::max(g0_, g1_));
}

DensityMatrix MessageDistribution::density() const { return DensityMatrix::diagonal({g0_, g1_}); }

DensityMatrix xi_superoperator(double theta, Bit r, const DensityMatrix& rho) {
  if (rho.dim() != 2) throw InvalidArgument("superoperator acts on a single qubit");
  const Matrix h = Matrix::from_unitary(h_map(theta, r));
  Matrix out = h * rho.matrix() * h.adjoint();
  // Restore exact Hermiticity lost to rounding.
  out = (out + out.adjoint()) * Complex(0.5);
  return DensityMatrix(std::move(out));
}

double entropic_bound(double t) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw InvalidArgument("min-entropy t = " + std::to_string(t) + " outside [0, 1]");
  }
  return 0.5 * (std::exp2(1.0 - t) - 1.0);
}

DensityMatrix avg_message_cipher_state(Bit b, double theta) {
  Matrix sum(2);
  for (Bit r : {kZero, kOne}) {
    sum += Matrix::outer(apply(h_map(theta, r), PureState::basis(b)));
  }
  return DensityMatrix(sum * Complex(0.5));
}

DensityMatrix avg_joint_cipher_state(Bit b, double theta, bool average_s, Bit s) {
  Matrix sum(4);
  int terms = 0;
  for (Bit sv : {kZero, kOne}) {
    if (!average_s && sv != s) continue;
    for (Bit r : {kZero, kOne}) {
      const XiCiphertext ct = qenc_with_r(XiContext(sv, theta), b, r);
      sum += kron(Matrix::outer(ct.c0()), Matrix::outer(ct.c1()));
      ++terms;
    }
  }
  return DensityMatrix(sum * Complex(1.0 / terms));
}

namespace {

Matrix channel_sum(const DensityMatrix& rho_me, Bit s, double theta) {
  const std::size_t dim = rho_me.dim();
  if (dim != 2 && dim != 4) {
    throw InvalidArgument("channel input must be a message qubit with at most one environment qubit");
  }
  if (2 * dim > kMaxDim) throw InvalidArgument("channel output exceeds dimension 8");
  Matrix sum(2 * dim);
  for (Bit r : {kZero, kOne}) {
    const Unitary2 h = h_map(theta, r);
    const Matrix u = dim == 2 ? Matrix::from_unitary(h)
                              : kron(Matrix::from_unitary(h), Matrix::identity(dim / 2));
    const Matrix secret = Matrix::outer(apply(h, PureState::basis(s)));
    sum += kron(secret, u * rho_me.matrix() * u.adjoint());
  }
  return sum;
}

DensityMatrix hermitize(Matrix m) { return DensityMatrix((m + m.adjoint()) * Complex(0.5)); }

}  // namespace

ChannelOutput ind_channel(const DensityMatrix& rho_me, Bit s, double theta) {
  return {hermitize(channel_sum(rho_me, s, theta) * Complex(0.5)), canonical_angle(theta),
          Averaged::kR};
}

ChannelOutput ind_channel_averaged(const DensityMatrix& rho_me, double theta) {
  Matrix sum = channel_sum(rho_me, kZero, theta) + channel_sum(rho_me, kOne, theta);
  return {hermitize(sum * Complex(0.25)), canonical_angle(theta), Averaged::kRAndS};
}

Matrix trace_out_second(const Matrix& m, std::size_t dim_a) {
  if (dim_a == 0 || m.dim() % dim_a != 0) throw InvalidArgument("bad partial-trace split");
  const std::size_t dim_b = m.dim() / dim_a;
  Matrix out(dim_a);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j)
      for (std::size_t k = 0; k < dim_b; ++k) out(i, j) += m(i * dim_b + k, j * dim_b + k);
  return out;
}

Matrix trace_out_first(const Matrix& m, std::size_t dim_a) {
  if (dim_a == 0 || m.dim() % dim_a != 0) throw InvalidArgument("bad partial-trace split");
  const std::size_t dim_b = m.dim() / dim_a;
  Matrix out(dim_b);
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l)
      for (std::size_t i = 0; i < dim_a; ++i) out(k, l) += m(i * dim_b + k, i * dim_b + l);
  return out;
}

}  // namespace qfe
