#pragma once

#include "qfe/bit.hpp"
#include "qfe/qubit.hpp"
#include "qfe/random.hpp"

namespace qfe {

/// Reduces an angle into [0, 2pi). Throws InvalidArgument for non-finite input.
double canonical_angle(double theta);

/// The equatorial encoding unitary
///
///   H(theta, u) = 1/sqrt(2) * [ 1                 1                  ]
///                             [ (-1)^u e^{i th}   (-1)^{u+1} e^{i th} ]
///
/// H(theta, u)|v> = 1/sqrt(2) (|0> + (-1)^{u xor v} e^{i theta} |1>), so the
/// map is symmetric in (u, v) and H(theta, u)|b> = H(theta, u xor b)|0>.
Unitary2 h_map(double theta, Bit u);

/// Secret bit and equatorial angle shared by encryptor and decryptor.
class XiContext {
 public:
  XiContext(Bit s, double theta) : s_(s), theta_(canonical_angle(theta)) {}

  Bit s() const noexcept { return s_; }
  double theta() const noexcept { return theta_; }

 private:
  Bit s_;
  double theta_;
};

/// The two ciphertext qubits (c0, c1) = (H(theta, r)|s>, H(theta, r)|b>).
/// Construction checks that both lie on the Bloch-sphere equator.
class XiCiphertext {
 public:
  XiCiphertext(PureState c0, PureState c1);

  const PureState& c0() const noexcept { return c0_; }
  const PureState& c1() const noexcept { return c1_; }

  /// Number of qubits carried for a one-bit message.
  static constexpr std::size_t qubit_count() noexcept { return 2; }

  friend bool operator==(const XiCiphertext&, const XiCiphertext&) = default;

 private:
  PureState c0_;
  PureState c1_;
};

bool on_equator(const PureState& psi, double tol = kNormTolerance) noexcept;

XiCiphertext qenc_with_r(const XiContext& ctx, Bit b, Bit r);
XiCiphertext qenc(const XiContext& ctx, Bit b, Rng& rng);

/// Recovers r from c0 with (H(theta, s))^dagger, then b from c1 with
/// (H(theta, r))^dagger. Both readouts are deterministic; a key or angle
/// mismatch surfaces as AmbiguousState.
Bit qdec(const XiContext& ctx, const XiCiphertext& ct);
/// Same readout on raw qubits that may have been disturbed.
Bit qdec(const XiContext& ctx, const PureState& c0, const PureState& c1);

}  // namespace qfe
