#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "qfe/bit.hpp"
#include "qfe/random.hpp"
#include "qfe/xi_cipher.hpp"

namespace qfe {

inline constexpr std::size_t kMaxMessageLength = std::size_t{1} << 20;
inline constexpr int kSetupAttempts = 1000;

/// Security parameter (key length) and message length.
///
/// Requires 1 <= lambda <= Q <= 2^20 and Q <= 2^lambda, the last so that Q
/// distinct designated keys exist.
class SchemeParams {
 public:
  SchemeParams(std::size_t lambda, std::size_t message_length);

  std::size_t lambda() const noexcept { return lambda_; }
  std::size_t message_length() const noexcept { return q_; }

  friend bool operator==(const SchemeParams&, const SchemeParams&) = default;

 private:
  std::size_t lambda_;
  std::size_t q_;
};

/// A bijection on block positions. Stored 0-based; `one_based()` gives the
/// 1..Q form used in files and flags.
class Permutation {
 public:
  static Permutation identity(std::size_t n);
  static Permutation from_zero_based(std::vector<std::size_t> image);
  static Permutation from_one_based(const std::vector<std::size_t>& image);

  std::size_t size() const noexcept { return image_.size(); }
  std::size_t operator()(std::size_t j) const { return image_.at(j); }
  bool is_identity() const noexcept;
  const std::vector<std::size_t>& zero_based() const noexcept { return image_; }
  std::vector<std::size_t> one_based() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {}
  std::vector<std::size_t> image_;
};

/// A key: either a lambda-bit string or the length-revealing aleph key.
class Key {
 public:
  struct Aleph {
    friend bool operator==(Aleph, Aleph) = default;
  };

  static Key classical(BitString bits) { return Key(std::move(bits)); }
  static Key aleph() { return Key(Aleph{}); }

  bool is_aleph() const noexcept { return std::holds_alternative<Aleph>(v_); }
  /// Throws AlephKey for the aleph key.
  const BitString& bits() const;

  friend bool operator==(const Key&, const Key&) = default;

 private:
  explicit Key(std::variant<BitString, Aleph> v) : v_(std::move(v)) {}
  std::variant<BitString, Aleph> v_;
};

/// delta_q = integer(sigma(kappa_Q)) - integer(sigma(kappa_q)): whichever of
/// -(Q-q+1)/2 and (Q-q)/2 is an integer. 1 <= q <= Q.
std::int64_t delta(std::size_t message_length, std::size_t q);
/// Entry q-1 holds delta_q.
std::vector<std::int64_t> delta_table(std::size_t message_length);
/// The unique q with delta_q == d, if any.
std::optional<std::size_t> classify_delta(std::size_t message_length, std::int64_t d);

/// Encryption angle of 1-based block j: 2 pi j / Q, canonicalized.
double block_angle(std::size_t j, std::size_t message_length);

/// The stored master secret (sigma(kappa_Q), kappa_1, ..., kappa_Q) plus the
/// position permutation. sigma itself is never tabulated: designated keys are
/// recognized by lookup and every other key maps outside the delta set.
class MasterSecret {
 public:
  /// Validates every structural invariant; throws InvalidArgument.
  MasterSecret(SchemeParams params, BitString secret, std::vector<BitString> designated_keys,
               Permutation eta);

  const SchemeParams& params() const noexcept { return params_; }
  std::size_t message_length() const noexcept { return params_.message_length(); }
  /// sigma(kappa_Q) = s_1 ... s_Q.
  const BitString& secret() const noexcept { return secret_; }
  const std::vector<BitString>& designated_keys() const noexcept { return keys_; }
  /// kappa_q, 1-based.
  const BitString& designated_key(std::size_t q) const { return keys_.at(q - 1); }
  const Permutation& eta() const noexcept { return eta_; }

  /// sigma(kappa_q) = integer(s) - delta_q as a Q-bit string.
  BitString implied_image(std::size_t q) const;
  /// 1-based rank q when `key` is kappa_q.
  std::optional<std::size_t> rank_of(const BitString& key) const;

  friend bool operator==(const MasterSecret&, const MasterSecret&) = default;

 private:
  SchemeParams params_;
  BitString secret_;
  std::vector<BitString> keys_;
  Permutation eta_;
};

/// s_1 ... s_q, or bottom.
class FunctionKey {
 public:
  static FunctionKey bottom() { return FunctionKey(std::nullopt); }
  static FunctionKey prefix(BitString bits);

  bool is_bottom() const noexcept { return !bits_.has_value(); }
  /// Empty for bottom.
  std::size_t revealed() const noexcept { return bits_ ? bits_->size() : 0; }
  /// Throws InvalidArgument for bottom.
  const BitString& bits() const;

  friend bool operator==(const FunctionKey&, const FunctionKey&) = default;

 private:
  explicit FunctionKey(std::optional<BitString> bits) : bits_(std::move(bits)) {}
  std::optional<BitString> bits_;
};

/// Q single-bit ciphertexts; block j sits at angle 2 pi j / Q.
class HfeCiphertext {
 public:
  explicit HfeCiphertext(std::vector<XiCiphertext> blocks);

  std::size_t message_length() const noexcept { return blocks_.size(); }
  const std::vector<XiCiphertext>& blocks() const noexcept { return blocks_; }
  const XiCiphertext& block(std::size_t j) const { return blocks_.at(j - 1); }

  friend bool operator==(const HfeCiphertext&, const HfeCiphertext&) = default;

 private:
  std::vector<XiCiphertext> blocks_;
};

MasterSecret setup(const SchemeParams& params, const Permutation& eta, Rng& rng);
MasterSecret setup(const SchemeParams& params, Rng& rng);

/// Prefix s_1..s_q for kappa_q, bottom for every other classical key.
/// Throws AlephKey for aleph and InvalidArgument for a wrong-length key.
FunctionKey keygen(const MasterSecret& msk, const Key& key);

/// Block j encrypts m_{eta(j)} under (s_j, 2 pi j / Q).
HfeCiphertext enc(const MasterSecret& msk, const BitString& message, Rng& rng);
/// As enc, with the per-block randomness r_1..r_Q pinned.
HfeCiphertext enc_with_randomness(const MasterSecret& msk, const BitString& message,
                                  std::span<const Bit> randomness);

/// Decrypts the first q blocks; bottom yields the empty string.
BitString dec(const FunctionKey& fk, const HfeCiphertext& ct);
/// As dec, but assumes the key was issued for `message_length` positions, so
/// block j is read at angle 2 pi j / message_length. A length that differs
/// from the ciphertext's surfaces as AmbiguousState.
BitString dec(const FunctionKey& fk, const HfeCiphertext& ct, std::size_t message_length);

/// F_a(k, m): |m| for aleph, the (eta-ordered) q-prefix for kappa_q, "" else.
using FunctionalityValue = std::variant<BitString, std::size_t>;
FunctionalityValue functionality(const MasterSecret& msk, const Key& key, const BitString& message);

}  // namespace qfe
