#include "qfe/xi_cipher.hpp"

#include <cmath>
#include <numbers>

namespace qfe {

double canonical_angle(double theta) {
  if (!std::isfinite(theta)) throw InvalidArgument("angle must be finite");
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

Unitary2 h_map(double theta, Bit u) {
  const double k = 1.0 / std::numbers::sqrt2;
  const Complex phase = std::polar(1.0, theta);
  const double sign = u ? -1.0 : 1.0;
  return Unitary2(k, k, sign * k * phase, -sign * k * phase);
}

bool on_equator(const PureState& psi, double tol) noexcept {
  return std::abs(psi.probability(kZero) - 0.5) <= tol &&
         std::abs(psi.probability(kOne) - 0.5) <= tol;
}

XiCiphertext::XiCiphertext(PureState c0, PureState c1) : c0_(c0), c1_(c1) {
  if (!on_equator(c0_) || !on_equator(c1_)) {
    throw InvalidArgument("ciphertext qubit is not on the Bloch-sphere equator");
  }
}

XiCiphertext qenc_with_r(const XiContext& ctx, Bit b, Bit r) {
  const Unitary2 h = h_map(ctx.theta(), r);
  return XiCiphertext(apply(h, PureState::basis(ctx.s())), apply(h, PureState::basis(b)));
}

XiCiphertext qenc(const XiContext& ctx, Bit b, Rng& rng) {
  return qenc_with_r(ctx, b, uniform_bit(rng));
}

Bit qdec(const XiContext& ctx, const PureState& c0, const PureState& c1) {
  const Bit r = measure_computational(apply(dagger(h_map(ctx.theta(), ctx.s())), c0));
  return measure_computational(apply(dagger(h_map(ctx.theta(), r)), c1));
}

Bit qdec(const XiContext& ctx, const XiCiphertext& ct) { return qdec(ctx, ct.c0(), ct.c1()); }

}  // namespace qfe
