#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfe/hfe.hpp"
#include "qfe/qubit.hpp"
#include "qfe/random.hpp"

namespace qfe {

// Monte-Carlo game harnesses. A passing run is finite-sample evidence against
// the sampled strategy family only; it is not a security proof.

inline constexpr std::size_t kDefaultQueryBudget = 1024;

/// kFixedRandomness pins every block's r to 0. It exists to show that the
/// harness detects a broken cipher.
enum class CipherVariant { kGenuine, kFixedRandomness };

/// Which ciphertext qubit of a block: c0 carries the secret bit, c1 the
/// message bit.
enum class Slot { kSecret = 0, kMessage = 1 };

struct CiphertextHandle {
  std::size_t index = 0;
};

struct GameOptions {
  std::size_t query_budget = kDefaultQueryBudget;
  CipherVariant variant = CipherVariant::kGenuine;
};

/// Queries made during one privacy-game trial. In the message-privacy game
/// every key query is a pair (k, k).
struct GameTranscript {
  std::string a_descriptor;
  std::vector<std::pair<Key, Key>> key_queries;
  std::vector<std::pair<BitString, BitString>> message_queries;
  std::vector<std::string> alpha;
  std::uint64_t tau = 0;
};

/// Non-reversible 64-bit digest of a master secret, for transcripts.
std::string msk_fingerprint(const MasterSecret& msk);

/// Oracle interface handed to privacy-game adversaries. Ciphertexts are only
/// reachable through measurement and decryption.
class GameOracles {
 public:
  virtual ~GameOracles() = default;

  virtual const SchemeParams& params() const = 0;
  /// True in the function-privacy game, where key queries are pairs.
  virtual bool accepts_key_pairs() const = 0;
  /// Public description of the function f_{kappa_q} (the key kappa_q).
  virtual Key designated_key(std::size_t q) const = 0;

  virtual FunctionKey keygen(const Key& k0, const Key& k1) = 0;
  FunctionKey keygen(const Key& k) { return keygen(k, k); }

  virtual CiphertextHandle encrypt(const BitString& m0, const BitString& m1) = 0;

  /// Applies `basis` to the chosen qubit of 1-based block `block`, samples
  /// a computational-basis outcome and collapses the qubit.
  virtual Bit measure(CiphertextHandle ct, std::size_t block, Slot slot,
                      const Unitary2& basis) = 0;
  Bit measure(CiphertextHandle ct, std::size_t block, Slot slot) {
    return measure(ct, block, slot, Unitary2::identity());
  }

  virtual BitString decrypt(CiphertextHandle ct, const FunctionKey& fk) = 0;
};

struct AdversaryStrategy {
  std::string name;
  std::function<Bit(GameOracles&, Rng&)> behavior;
};

/// Empirical |Pr[guess = 1 | b = 0] - Pr[guess = 1 | b = 1]|.
struct AdvantageEstimate {
  double p0_hat = 0.0;
  double p1_hat = 0.0;
  std::size_t n_trials = 0;
  double bound = 0.0;

  double gap() const noexcept;
  bool passes() const noexcept { return gap() <= bound; }
};

/// p_b = mean(guesses_b); bound = 4 / sqrt(min(n0, n1)). Throws on empty input.
AdvantageEstimate estimate_advantage(std::span<const Bit> guesses0, std::span<const Bit> guesses1);

/// Every queried key k and message pair (m0, m1) satisfy F(k, m0) = F(k, m1).
/// Key pairs with k0 != k1 are invalid here.
bool validate_message_privacy_queries(const GameTranscript& transcript, const MasterSecret& msk);
/// Every key pair (k0, k1) and message pair satisfy |m0| = |m1|, |k0| = |k1|
/// and F(k0, m0) = F(k1, m1).
bool validate_function_privacy_queries(const GameTranscript& transcript, const MasterSecret& msk);

/// Each trial: fresh setup, uniform challenge bit b, adversary run against
/// KeyGen and Enc_b. Throws InvalidAdversary before a guess from an invalid
/// query stream is recorded. The returned bound is 4 / sqrt(n_trials).
AdvantageEstimate run_message_privacy_game(const AdversaryStrategy& adv, const SchemeParams& params,
                                           std::size_t n_trials, Rng& rng,
                                           const GameOptions& options = {});
/// As above with b-indexed KeyGen answering keygen(k0, k1) with k_b.
AdvantageEstimate run_function_privacy_game(const AdversaryStrategy& adv,
                                             const SchemeParams& params, std::size_t n_trials,
                                             Rng& rng, const GameOptions& options = {});

// ------------------------------------------------------ weak simulation

/// Output of Msg: the message vector and the auxiliary token.
struct MessageSample {
  std::vector<BitString> messages;
  std::uint64_t tau = 0;
};

using MessageGenerator = std::function<MessageSample(const SchemeParams&, Rng&)>;

/// One to three uniform Q-bit messages and a uniform 16-bit tau.
MessageSample default_message_generator(const SchemeParams& params, Rng& rng);

/// What a weak-simulation adversary sees. In the real world it is backed by
/// the challenge ciphertexts and KeyGen; in the ideal world by the simulator,
/// which only has F(aleph, m) and oracle access to F(., m).
class WeakSimView {
 public:
  virtual ~WeakSimView() = default;

  virtual const SchemeParams& params() const = 0;
  virtual std::uint64_t tau() const = 0;
  /// Total number of ciphertext blocks, z * Q.
  virtual std::size_t ciphertext_blocks() const = 0;
  virtual Key designated_key(std::size_t q) const = 0;

  /// KeyGen(y) followed by decryption of every challenge ciphertext.
  virtual std::vector<BitString> key_query(const Key& y) = 0;
  /// Measures qubit `slot` of 1-based block `block` of ciphertext `message`.
  virtual Bit measure(std::size_t message, std::size_t block, Slot slot,
                      const Unitary2& basis) = 0;
};

struct SimAdversaryStrategy {
  std::string name;
  std::function<std::vector<std::string>(WeakSimView&, Rng&)> behavior;
};

/// Counts of canonical (a, m, tau, alpha, y_1..y_l) tuple encodings.
using EmpiricalDistribution = std::map<std::string, std::size_t>;

struct WeakSimResult {
  EmpiricalDistribution real;
  EmpiricalDistribution ideal;
  std::size_t n_trials = 0;

  double distance() const;
};

/// Half the L1 distance between the normalized distributions.
double statistical_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b);

/// Runs the real and ideal columns with matched per-trial seeds. The ideal
/// side uses the built-in simulator: key queries are answered through F(., m)
/// and measurements act on an encryption of zeros under a fresh secret.
WeakSimResult run_weak_sim_game(const MessageGenerator& msg_gen, const SimAdversaryStrategy& adv,
                                const SchemeParams& params, std::size_t n_trials, Rng& rng,
                                const GameOptions& options = {});

// ------------------------------------------------------ built-in adversaries

/// constant-0, basis-measurer, rotation-measurer, key-query-then-compare.
const std::vector<AdversaryStrategy>& builtin_privacy_adversaries();
std::optional<AdversaryStrategy> find_privacy_adversary(const std::string& name);

/// echo, zero-query, basis-measurer.
const std::vector<SimAdversaryStrategy>& builtin_sim_adversaries();
std::optional<SimAdversaryStrategy> find_sim_adversary(const std::string& name);

}  // namespace qfe
