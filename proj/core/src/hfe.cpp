#include "qfe/hfe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

namespace qfe {

// ------------------------------------------------------------ SchemeParams

SchemeParams::SchemeParams(std::size_t lambda, std::size_t message_length)
    : lambda_(lambda), q_(message_length) {
  if (lambda_ == 0) throw InvalidArgument("lambda must be positive");
  if (q_ < lambda_) {
    throw InvalidArgument("message length Q = " + std::to_string(q_) +
                          " must be at least lambda = " + std::to_string(lambda_));
  }
  if (q_ > kMaxMessageLength) throw InvalidArgument("message length exceeds 2^20");
  if (lambda_ < 64 && q_ > (std::uint64_t{1} << lambda_)) {
    throw InvalidArgument("Q = " + std::to_string(q_) +
                          " designated keys do not fit in " + std::to_string(lambda_) + " bits");
  }
}

// ------------------------------------------------------------- Permutation

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> image(n);
  for (std::size_t i = 0; i < n; ++i) image[i] = i;
  return Permutation(std::move(image));
}

Permutation Permutation::from_zero_based(std::vector<std::size_t> image) {
  std::vector<bool> seen(image.size(), false);
  for (std::size_t v : image) {
    if (v >= image.size() || seen[v]) throw InvalidArgument("not a permutation");
    seen[v] = true;
  }
  return Permutation(std::move(image));
}

Permutation Permutation::from_one_based(const std::vector<std::size_t>& image) {
  std::vector<std::size_t> zero(image.size());
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (image[i] == 0) throw InvalidArgument("permutation entries are 1-based");
    zero[i] = image[i] - 1;
  }
  return from_zero_based(std::move(zero));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

std::vector<std::size_t> Permutation::one_based() const {
  std::vector<std::size_t> out(image_);
  for (auto& v : out) ++v;
  return out;
}

// --------------------------------------------------------------------- Key

const BitString& Key::bits() const {
  if (is_aleph()) throw AlephKey("the aleph key has no bit representation");
  return std::get<BitString>(v_);
}

// ------------------------------------------------------------------ deltas

std::int64_t delta(std::size_t message_length, std::size_t q) {
  if (q == 0 || q > message_length) throw InvalidArgument("rank q outside [1, Q]");
  const auto gap = static_cast<std::int64_t>(message_length - q);
  // Exactly one of (Q-q)/2 and -(Q-q+1)/2 is integral.
  return gap % 2 == 0 ? gap / 2 : -(gap + 1) / 2;
}

std::vector<std::int64_t> delta_table(std::size_t message_length) {
  std::vector<std::int64_t> out;
  out.reserve(message_length);
  for (std::size_t q = 1; q <= message_length; ++q) out.push_back(delta(message_length, q));
  return out;
}

std::optional<std::size_t> classify_delta(std::size_t message_length, std::int64_t d) {
  const auto n = static_cast<std::int64_t>(message_length);
  const std::int64_t q = d >= 0 ? n - 2 * d : n + 2 * d + 1;
  if (q < 1 || q > n) return std::nullopt;
  return static_cast<std::size_t>(q);
}

double block_angle(std::size_t j, std::size_t message_length) {
  return canonical_angle(2.0 * std::numbers::pi * static_cast<double>(j) /
                         static_cast<double>(message_length));
}

// ------------------------------------------------------------ MasterSecret

namespace {

// Offsets with the largest magnitude on either side; checking these two
// suffices for every q.
std::pair<std::int64_t, std::int64_t> delta_extremes(std::size_t message_length) {
  const std::int64_t hi = delta(message_length, message_length % 2 == 0 ? 2 : 1);
  const std::int64_t lo = message_length >= 2 ? delta(message_length, message_length % 2 == 0 ? 1 : 2)
                                              : 0;
  return {std::max<std::int64_t>(hi, 0), std::min<std::int64_t>(lo, 0)};
}

bool images_in_range(const BitString& secret) {
  const auto [hi, lo] = delta_extremes(secret.size());
  BitString a = secret;
  BitString b = secret;
  return add_signed(a, -hi) && add_signed(b, -lo);
}

}  // namespace

MasterSecret::MasterSecret(SchemeParams params, BitString secret,
                           std::vector<BitString> designated_keys, Permutation eta)
    : params_(params), secret_(std::move(secret)), keys_(std::move(designated_keys)),
      eta_(std::move(eta)) {
  const std::size_t q = params_.message_length();
  if (secret_.size() != q) throw InvalidArgument("secret must have Q bits");
  if (keys_.size() != q) throw InvalidArgument("need exactly Q designated keys");
  if (eta_.size() != q) throw InvalidArgument("permutation must act on Q positions");
  std::set<BitString> distinct;
  for (const auto& k : keys_) {
    if (k.size() != params_.lambda()) throw InvalidArgument("designated key must have lambda bits");
    if (!distinct.insert(k).second) throw InvalidArgument("designated keys must be distinct");
  }
  if (!images_in_range(secret_)) {
    throw InvalidArgument("secret leaves an implied key image outside [0, 2^Q - 1]");
  }
}

BitString MasterSecret::implied_image(std::size_t q) const {
  BitString image = secret_;
  if (!add_signed(image, -delta(message_length(), q))) {
    throw InvalidArgument("implied image out of range");
  }
  return image;
}

std::optional<std::size_t> MasterSecret::rank_of(const BitString& key) const {
  const auto it = std::find(keys_.begin(), keys_.end(), key);
  if (it == keys_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - keys_.begin()) + 1;
}

// ------------------------------------------------------------- FunctionKey

FunctionKey FunctionKey::prefix(BitString bits) {
  if (bits.empty()) throw InvalidArgument("a prefix key reveals at least one bit");
  return FunctionKey(std::move(bits));
}

const BitString& FunctionKey::bits() const {
  if (!bits_) throw InvalidArgument("bottom key has no prefix");
  return *bits_;
}

// ----------------------------------------------------------- HfeCiphertext

HfeCiphertext::HfeCiphertext(std::vector<XiCiphertext> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw InvalidArgument("ciphertext needs at least one block");
}

// --------------------------------------------------------------- algorithms

MasterSecret setup(const SchemeParams& params, const Permutation& eta, Rng& rng) {
  const std::size_t q = params.message_length();
  if (eta.size() != q) throw InvalidArgument("permutation must act on Q positions");

  BitString secret;
  bool found = false;
  for (int attempt = 0; attempt < kSetupAttempts && !found; ++attempt) {
    secret = uniform_bits(rng, q);
    found = images_in_range(secret);
  }
  if (!found) throw ResampleExhausted("no in-range secret after 1000 attempts");

  std::vector<BitString> keys;
  std::set<BitString> seen;
  keys.reserve(q);
  while (keys.size() < q) {
    BitString k = uniform_bits(rng, params.lambda());
    if (seen.insert(k).second) keys.push_back(std::move(k));
  }
  return MasterSecret(params, std::move(secret), std::move(keys), eta);
}

MasterSecret setup(const SchemeParams& params, Rng& rng) {
  return setup(params, Permutation::identity(params.message_length()), rng);
}

FunctionKey keygen(const MasterSecret& msk, const Key& key) {
  if (key.is_aleph()) throw AlephKey("KeyGen is undefined for the aleph key");
  const BitString& k = key.bits();
  if (k.size() != msk.params().lambda()) {
    throw InvalidArgument("key must have lambda = " + std::to_string(msk.params().lambda()) +
                          " bits");
  }
  const auto rank = msk.rank_of(k);
  if (!rank) return FunctionKey::bottom();
  // Offset between sigma(kappa_Q) and sigma(k), then the rank it encodes.
  const auto q = classify_delta(msk.message_length(), delta(msk.message_length(), *rank));
  const BitString& s = msk.secret();
  return FunctionKey::prefix(BitString(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(*q)));
}

HfeCiphertext enc_with_randomness(const MasterSecret& msk, const BitString& message,
                                  std::span<const Bit> randomness) {
  const std::size_t q = msk.message_length();
  if (message.size() != q) {
    throw InvalidArgument("message has " + std::to_string(message.size()) +
                          " bits, scheme expects " + std::to_string(q));
  }
  if (randomness.size() != q) throw InvalidArgument("need one randomness bit per block");
  std::vector<XiCiphertext> blocks;
  blocks.reserve(q);
  for (std::size_t j = 1; j <= q; ++j) {
    const XiContext ctx(msk.secret()[j - 1], block_angle(j, q));
    blocks.push_back(qenc_with_r(ctx, message[msk.eta()(j - 1)], randomness[j - 1]));
  }
  return HfeCiphertext(std::move(blocks));
}

HfeCiphertext enc(const MasterSecret& msk, const BitString& message, Rng& rng) {
  if (message.size() != msk.message_length()) {
    throw InvalidArgument("message has " + std::to_string(message.size()) +
                          " bits, scheme expects " + std::to_string(msk.message_length()));
  }
  const BitString r = uniform_bits(rng, msk.message_length());
  return enc_with_randomness(msk, message, r);
}

BitString dec(const FunctionKey& fk, const HfeCiphertext& ct, std::size_t message_length) {
  if (fk.is_bottom()) return {};
  const BitString& s = fk.bits();
  if (message_length == 0) throw InvalidArgument("message length must be positive");
  if (s.size() > ct.message_length() || s.size() > message_length) {
    throw InvalidArgument("function key longer than the ciphertext");
  }
  BitString out;
  out.reserve(s.size());
  for (std::size_t j = 1; j <= s.size(); ++j) {
    out.push_back(qdec(XiContext(s[j - 1], block_angle(j, message_length)), ct.block(j)));
  }
  return out;
}

BitString dec(const FunctionKey& fk, const HfeCiphertext& ct) {
  return dec(fk, ct, ct.message_length());
}

FunctionalityValue functionality(const MasterSecret& msk, const Key& key,
                                 const BitString& message) {
  if (message.size() != msk.message_length()) {
    throw InvalidArgument("message length does not match the scheme");
  }
  if (key.is_aleph()) return message.size();
  const auto rank = msk.rank_of(key.bits());
  if (!rank) return BitString{};
  BitString out;
  out.reserve(*rank);
  for (std::size_t j = 0; j < *rank; ++j) out.push_back(message[msk.eta()(j)]);
  return out;
}

}  // namespace qfe
