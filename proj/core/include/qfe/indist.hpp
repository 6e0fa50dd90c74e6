#pragma once

#include <string>

#include "qfe/bit.hpp"
#include "qfe/qubit.hpp"

namespace qfe {

/// Classical message-bit distribution (gamma0, gamma1).
class MessageDistribution {
 public:
  MessageDistribution(double gamma0, double gamma1);
  /// Distribution whose larger probability is 2^-t, t in [0, 1].
  static MessageDistribution from_min_entropy(double t);

  double gamma0() const noexcept { return g0_; }
  double gamma1() const noexcept { return g1_; }
  /// -log2 max(gamma0, gamma1), in [0, 1].
  double min_entropy() const noexcept;
  DensityMatrix density() const;

 private:
  double g0_;
  double g1_;
};

/// Which encryption inputs were averaged out of a channel output.
enum class Averaged { kR, kRAndS };

struct ChannelOutput {
  DensityMatrix state;
  double theta;
  Averaged averaged_over;
};

/// H(theta, r) rho H(theta, r)^dagger on one qubit.
DensityMatrix xi_superoperator(double theta, Bit r, const DensityMatrix& rho);

/// 1/2 (2^{1-t} - 1); throws InvalidArgument outside t in [0, 1].
double entropic_bound(double t);

/// 1/2 sum_r H(theta, r)|b><b|H(theta, r)^dagger.
DensityMatrix avg_message_cipher_state(Bit b, double theta);

/// Joint (c0, c1) state averaged over r, and over s when `average_s`.
/// With average_s false the secret bit `s` is used.
DensityMatrix avg_joint_cipher_state(Bit b, double theta, bool average_s, Bit s = kZero);

/// (QE_s (x) 1_E)(rho_ME): the message qubit (first factor of rho_me) is
/// rotated by H(theta, r) and the secret qubit c0 is prepended, averaged over
/// r. rho_me has dimension 2 (no environment) or 4 (one environment qubit).
ChannelOutput ind_channel(const DensityMatrix& rho_me, Bit s, double theta);
/// ind_channel additionally averaged over the secret bit s.
ChannelOutput ind_channel_averaged(const DensityMatrix& rho_me, double theta);

/// Partial traces of a two-factor matrix of shape (dim_a * dim_b).
Matrix trace_out_second(const Matrix& m, std::size_t dim_a);
Matrix trace_out_first(const Matrix& m, std::size_t dim_a);

}  // namespace qfe
