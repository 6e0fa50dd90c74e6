#include <algorithm>
#include <cstdint>
#include <optional>

#include "qfe/games.hpp"
#include "qfe/xi_cipher.hpp"

namespace qfe {

namespace {

// Messages that differ only in the last position.
std::pair<BitString, BitString> last_bit_pair(std::size_t q, const BitString& prefix) {
  BitString m0 = prefix;
  m0.resize(q, kZero);
  BitString m1 = m0;
  m1.back() = kOne;
  return {m0, m1};
}

// The inverse of H(theta_j, 0): maps H(theta_j, u)|v> to |u xor v>.
Unitary2 unrotate(std::size_t j, std::size_t q) { return dagger(h_map(block_angle(j, q), kZero)); }

// A classical key that is not any kappa_q. Keys are public function
// descriptions, so the adversary can avoid the designated ones.
// Empty when every lambda-bit key is designated.
template <class Oracles>
std::optional<BitString> non_designated_key(const Oracles& o, Rng& rng) {
  const std::size_t lambda = o.params().lambda();
  const std::size_t q = o.params().message_length();
  if (lambda < 64 && (std::uint64_t{1} << lambda) <= q) return std::nullopt;
  for (;;) {
    BitString k = uniform_bits(rng, lambda);
    bool hit = false;
    for (std::size_t i = 1; i <= q && !hit; ++i) hit = o.designated_key(i).bits() == k;
    if (!hit) return k;
  }
}

Bit constant_zero(GameOracles&, Rng&) { return kZero; }

Bit basis_measurer(GameOracles& o, Rng&) {
  const std::size_t q = o.params().message_length();
  const auto [m0, m1] = last_bit_pair(q, {});
  const CiphertextHandle ct = o.encrypt(m0, m1);
  return o.measure(ct, q, Slot::kMessage);
}

Bit rotation_measurer(GameOracles& o, Rng&) {
  const std::size_t q = o.params().message_length();
  const auto [m0, m1] = last_bit_pair(q, {});
  const CiphertextHandle ct = o.encrypt(m0, m1);
  return o.measure(ct, q, Slot::kMessage, unrotate(q, q));
}

// Obtains kappa_{Q-1}, decrypts the agreed prefix, then reads s_Q xor m_Q
// from the last block by un-rotating both of its qubits.
Bit key_query_then_compare(GameOracles& o, Rng& rng) {
  const std::size_t q = o.params().message_length();
  const std::size_t rank = q - 1;
  const BitString prefix = uniform_bits(rng, rank);
  const auto [m0, m1] = last_bit_pair(q, prefix);

  if (const auto stray = non_designated_key(o, rng)) {
    if (o.accepts_key_pairs()) {
      o.keygen(Key::classical(*stray), Key::classical(*non_designated_key(o, rng)));
    } else {
      o.keygen(Key::classical(*stray));
    }
  }
  FunctionKey fk = FunctionKey::bottom();
  if (rank > 0) fk = o.keygen(o.designated_key(rank));

  const CiphertextHandle ct = o.encrypt(m0, m1);
  if (rank > 0 && o.decrypt(ct, fk) != prefix) return uniform_bit(rng);
  const Bit x0 = o.measure(ct, q, Slot::kSecret, unrotate(q, q));
  const Bit x1 = o.measure(ct, q, Slot::kMessage, unrotate(q, q));
  return x0 ^ x1;
}

std::string join(const std::vector<BitString>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += to_string(parts[i]);
  }
  return out;
}

std::vector<std::string> sim_echo(WeakSimView& v, Rng& rng) {
  const std::size_t q = v.params().message_length();
  std::vector<std::string> alpha;
  for (std::size_t i = 1; i <= q; ++i) alpha.push_back(join(v.key_query(v.designated_key(i))));
  if (const auto k = non_designated_key(v, rng)) {
    alpha.push_back(join(v.key_query(Key::classical(*k))));
  }
  return alpha;
}

std::vector<std::string> sim_zero_query(WeakSimView& v, Rng&) {
  return {std::to_string(v.tau()), std::to_string(v.ciphertext_blocks())};
}

std::vector<std::string> sim_basis_measurer(WeakSimView& v, Rng&) {
  const std::size_t q = v.params().message_length();
  const std::size_t z = v.ciphertext_blocks() / q;
  std::vector<std::string> alpha;
  for (std::size_t i = 0; i < z; ++i) {
    std::string bits;
    for (std::size_t j = 1; j <= q; ++j) {
      bits += v.measure(i, j, Slot::kMessage, Unitary2::identity()) ? '1' : '0';
    }
    alpha.push_back(std::move(bits));
  }
  return alpha;
}

}  // namespace

const std::vector<AdversaryStrategy>& builtin_privacy_adversaries() {
  static const std::vector<AdversaryStrategy> kAll = {
      {"constant-0", constant_zero},
      {"basis-measurer", basis_measurer},
      {"rotation-measurer", rotation_measurer},
      {"key-query-then-compare", key_query_then_compare},
  };
  return kAll;
}

std::optional<AdversaryStrategy> find_privacy_adversary(const std::string& name) {
  const auto& all = builtin_privacy_adversaries();
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& a) { return a.name == name; });
  if (it == all.end()) return std::nullopt;
  return *it;
}

const std::vector<SimAdversaryStrategy>& builtin_sim_adversaries() {
  static const std::vector<SimAdversaryStrategy> kAll = {
      {"echo", sim_echo},
      {"zero-query", sim_zero_query},
      {"basis-measurer", sim_basis_measurer},
  };
  return kAll;
}

std::optional<SimAdversaryStrategy> find_sim_adversary(const std::string& name) {
  const auto& all = builtin_sim_adversaries();
  const auto it = std::find_if(all.begin(), all.end(), [&](const auto& a) { return a.name == name; });
  if (it == all.end()) return std::nullopt;
  return *it;
}

}  // namespace qfe
