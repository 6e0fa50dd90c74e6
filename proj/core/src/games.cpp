#include "qfe/games.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qfe/xi_cipher.hpp"

namespace qfe {

namespace {

// Per-trial rng streams.
enum Stream : std::uint64_t {
  kSetupStream = 1,
  kChallengeStream = 2,
  kOracleStream = 3,
  kAdversaryStream = 4,
  kMessageStream = 5,
  kMeasureStream = 6,
  kSimSetupStream = 7,
};

std::string describe(const Key& k) { return k.is_aleph() ? std::string("aleph") : to_hex(k.bits()); }

std::string describe(const BitString& m) { return to_string(m); }

bool same_value(const FunctionalityValue& a, const FunctionalityValue& b) { return a == b; }

// A ciphertext block held as raw qubits so that measurements can collapse it.
struct Block {
  PureState c0;
  PureState c1;
};

std::vector<Block> encrypt_blocks(const MasterSecret& msk, const BitString& m, Rng& rng,
                                  CipherVariant variant) {
  const HfeCiphertext ct = variant == CipherVariant::kGenuine
                               ? enc(msk, m, rng)
                               : enc_with_randomness(msk, m, BitString(m.size(), kZero));
  std::vector<Block> out;
  out.reserve(ct.message_length());
  for (const auto& b : ct.blocks()) out.push_back({b.c0(), b.c1()});
  return out;
}

Bit measure_block(Block& block, Slot slot, const Unitary2& basis, Rng& rng) {
  PureState& q = slot == Slot::kSecret ? block.c0 : block.c1;
  const Bit outcome = sample_measure(apply(basis, q), rng);
  q = apply(dagger(basis), PureState::basis(outcome));
  return outcome;
}

BitString decrypt_blocks(const std::vector<Block>& blocks, const FunctionKey& fk) {
  if (fk.is_bottom()) return {};
  const BitString& s = fk.bits();
  const std::size_t q = blocks.size();
  BitString out;
  for (std::size_t j = 1; j <= s.size() && j <= q; ++j) {
    out.push_back(qdec(XiContext(s[j - 1], block_angle(j, q)), blocks[j - 1].c0,
                       blocks[j - 1].c1));
  }
  return out;
}

class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  void spend() {
    if (++used_ > limit_) {
      throw BudgetExhausted("adversary exceeded its budget of " + std::to_string(limit_) +
                            " oracle calls");
    }
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

enum class PrivacyGame { kMessage, kFunction };

class TrialOracles final : public GameOracles {
 public:
  TrialOracles(PrivacyGame game, const MasterSecret& msk, Bit b, Rng& rng,
               const GameOptions& options)
      : game_(game), msk_(msk), b_(b), rng_(rng), options_(options), budget_(options.query_budget) {
    transcript_.a_descriptor = msk_fingerprint(msk);
  }

  const SchemeParams& params() const override { return msk_.params(); }
  bool accepts_key_pairs() const override { return game_ == PrivacyGame::kFunction; }
  Key designated_key(std::size_t q) const override {
    if (q == 0 || q > msk_.message_length()) throw InvalidArgument("rank q outside [1, Q]");
    return Key::classical(msk_.designated_key(q));
  }

  FunctionKey keygen(const Key& k0, const Key& k1) override {
    budget_.spend();
    const std::string query = "keygen(" + describe(k0) + ", " + describe(k1) + ")";
    for (const Key* k : {&k0, &k1}) {
      if (k->is_aleph()) throw InvalidAdversary("KeyGen query with the aleph key", query);
      if (k->bits().size() != msk_.params().lambda()) {
        throw InvalidAdversary("KeyGen query with a key of the wrong length", query);
      }
    }
    transcript_.key_queries.emplace_back(k0, k1);
    check(query);
    return qfe::keygen(msk_, b_ ? k1 : k0);
  }

  CiphertextHandle encrypt(const BitString& m0, const BitString& m1) override {
    budget_.spend();
    const std::string query = "enc(" + describe(m0) + ", " + describe(m1) + ")";
    if (m0.size() != msk_.message_length() || m1.size() != msk_.message_length()) {
      throw InvalidAdversary("message of the wrong length", query);
    }
    transcript_.message_queries.emplace_back(m0, m1);
    check(query);
    cts_.push_back(encrypt_blocks(msk_, b_ ? m1 : m0, rng_, options_.variant));
    return {cts_.size() - 1};
  }

  Bit measure(CiphertextHandle ct, std::size_t block, Slot slot, const Unitary2& basis) override {
    budget_.spend();
    return measure_block(block_at(ct, block), slot, basis, rng_);
  }

  BitString decrypt(CiphertextHandle ct, const FunctionKey& fk) override {
    budget_.spend();
    if (ct.index >= cts_.size()) throw InvalidArgument("unknown ciphertext handle");
    return decrypt_blocks(cts_[ct.index], fk);
  }

  bool valid() const {
    return game_ == PrivacyGame::kMessage ? validate_message_privacy_queries(transcript_, msk_)
                                          : validate_function_privacy_queries(transcript_, msk_);
  }

 private:
  void check(const std::string& query) const {
    if (!valid()) throw InvalidAdversary("query violates the validity condition", query);
  }

  Block& block_at(CiphertextHandle ct, std::size_t block) {
    if (ct.index >= cts_.size()) throw InvalidArgument("unknown ciphertext handle");
    auto& blocks = cts_[ct.index];
    if (block == 0 || block > blocks.size()) throw InvalidArgument("block index outside [1, Q]");
    return blocks[block - 1];
  }

  PrivacyGame game_;
  const MasterSecret& msk_;
  Bit b_;
  Rng& rng_;
  GameOptions options_;
  Budget budget_;
  GameTranscript transcript_;
  std::vector<std::vector<Block>> cts_;
};

AdvantageEstimate run_privacy_game(PrivacyGame game, const AdversaryStrategy& adv,
                                   const SchemeParams& params, std::size_t n_trials, Rng& rng,
                                   const GameOptions& options) {
  if (n_trials == 0) throw InvalidArgument("need at least one trial");
  const std::uint64_t base = rng();
  std::vector<Bit> guesses[2];
  for (std::size_t t = 0; t < n_trials; ++t) {
    Rng setup_rng = derive_rng(base, kSetupStream, t);
    Rng challenge_rng = derive_rng(base, kChallengeStream, t);
    Rng oracle_rng = derive_rng(base, kOracleStream, t);
    Rng adversary_rng = derive_rng(base, kAdversaryStream, t);

    const MasterSecret msk = setup(params, setup_rng);
    const Bit b = uniform_bit(challenge_rng);
    TrialOracles oracles(game, msk, b, oracle_rng, options);
    const Bit guess = adv.behavior(oracles, adversary_rng);
    if (!oracles.valid()) throw InvalidAdversary("invalid transcript", adv.name);
    guesses[b.value()].push_back(guess);
  }
  AdvantageEstimate est = estimate_advantage(guesses[0], guesses[1]);
  est.n_trials = n_trials;
  est.bound = 4.0 / std::sqrt(static_cast<double>(n_trials));
  return est;
}

}  // namespace

std::string msk_fingerprint(const MasterSecret& msk) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto feed = [&h](unsigned byte) {
    h ^= byte;
    h *= 0x100000001b3ULL;
  };
  for (Bit b : msk.secret()) feed(b.value());
  feed(0xff);
  for (const auto& k : msk.designated_keys()) {
    for (Bit b : k) feed(b.value());
    feed(0xfe);
  }
  for (std::size_t v : msk.eta().zero_based()) {
    for (int i = 0; i < 4; ++i) feed(static_cast<unsigned>((v >> (8 * i)) & 0xff));
  }
  std::ostringstream os;
  os << std::hex << mix_seed(h);
  return os.str();
}

double AdvantageEstimate::gap() const noexcept { return std::abs(p0_hat - p1_hat); }

AdvantageEstimate estimate_advantage(std::span<const Bit> guesses0, std::span<const Bit> guesses1) {
  if (guesses0.empty() || guesses1.empty()) {
    throw InvalidArgument("advantage estimate needs guesses for both challenge bits");
  }
  auto mean = [](std::span<const Bit> g) {
    std::size_t ones = 0;
    for (Bit b : g) ones += b.value();
    return static_cast<double>(ones) / static_cast<double>(g.size());
  };
  AdvantageEstimate est;
  est.p0_hat = mean(guesses0);
  est.p1_hat = mean(guesses1);
  est.n_trials = guesses0.size() + guesses1.size();
  est.bound = 4.0 / std::sqrt(static_cast<double>(std::min(guesses0.size(), guesses1.size())));
  return est;
}

bool validate_message_privacy_queries(const GameTranscript& transcript, const MasterSecret& msk) {
  const std::size_t q = msk.message_length();
  for (const auto& [m0, m1] : transcript.message_queries) {
    if (m0.size() != q || m1.size() != q) return false;
  }
  for (const auto& [k0, k1] : transcript.key_queries) {
    if (!(k0 == k1)) return false;
    for (const auto& [m0, m1] : transcript.message_queries) {
      if (!same_value(functionality(msk, k0, m0), functionality(msk, k0, m1))) return false;
    }
  }
  return true;
}

bool validate_function_privacy_queries(const GameTranscript& transcript, const MasterSecret& msk) {
  const std::size_t q = msk.message_length();
  for (const auto& [m0, m1] : transcript.message_queries) {
    if (m0.size() != q || m1.size() != q) return false;
  }
  for (const auto& [k0, k1] : transcript.key_queries) {
    if (k0.is_aleph() != k1.is_aleph()) return false;
    if (!k0.is_aleph() && k0.bits().size() != k1.bits().size()) return false;
    for (const auto& [m0, m1] : transcript.message_queries) {
      if (!same_value(functionality(msk, k0, m0), functionality(msk, k1, m1))) return false;
    }
  }
  return true;
}

AdvantageEstimate run_message_privacy_game(const AdversaryStrategy& adv, const SchemeParams& params,
                                           std::size_t n_trials, Rng& rng,
                                           const GameOptions& options) {
  return run_privacy_game(PrivacyGame::kMessage, adv, params, n_trials, rng, options);
}

AdvantageEstimate run_function_privacy_game(const AdversaryStrategy& adv,
                                             const SchemeParams& params, std::size_t n_trials,
                                             Rng& rng, const GameOptions& options) {
  return run_privacy_game(PrivacyGame::kFunction, adv, params, n_trials, rng, options);
}

// ------------------------------------------------------ weak simulation

MessageSample default_message_generator(const SchemeParams& params, Rng& rng) {
  MessageSample out;
  const std::size_t z = 1 + uniform_below(rng, 3);
  for (std::size_t i = 0; i < z; ++i) out.messages.push_back(uniform_bits(rng, params.message_length()));
  out.tau = rng() & 0xffffu;
  return out;
}

double WeakSimResult::distance() const { return statistical_distance(real, ideal); }

double statistical_distance(const EmpiricalDistribution& a, const EmpiricalDistribution& b) {
  auto total = [](const EmpiricalDistribution& d) {
    std::size_t n = 0;
    for (const auto& [k, c] : d) n += c;
    return static_cast<double>(n);
  };
  const double na = total(a);
  const double nb = total(b);
  if (na == 0.0 || nb == 0.0) throw InvalidArgument("empty distribution");
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      sum += static_cast<double>(ia->second) / na;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      sum += static_cast<double>(ib->second) / nb;
      ++ib;
    } else {
      sum += std::abs(static_cast<double>(ia->second) / na - static_cast<double>(ib->second) / nb);
      ++ia;
      ++ib;
    }
  }
  return 0.5 * sum;
}

namespace {

class SimViewBase : public WeakSimView {
 public:
  SimViewBase(const MasterSecret& msk, std::uint64_t tau, std::vector<std::vector<Block>> cts,
              Rng& measure_rng, std::size_t budget)
      : msk_(msk), tau_(tau), cts_(std::move(cts)), measure_rng_(measure_rng), budget_(budget) {}

  const SchemeParams& params() const override { return msk_.params(); }
  std::uint64_t tau() const override { return tau_; }
  std::size_t ciphertext_blocks() const override {
    return cts_.size() * msk_.message_length();
  }
  Key designated_key(std::size_t q) const override {
    if (q == 0 || q > msk_.message_length()) throw InvalidArgument("rank q outside [1, Q]");
    return Key::classical(msk_.designated_key(q));
  }

  std::vector<BitString> key_query(const Key& y) override {
    budget_.spend();
    if (y.is_aleph()) throw InvalidArgument("key queries take classical keys");
    queries_.push_back(y);
    return answer(y);
  }

  Bit measure(std::size_t message, std::size_t block, Slot slot, const Unitary2& basis) override {
    budget_.spend();
    if (message >= cts_.size()) throw InvalidArgument("message index out of range");
    auto& blocks = cts_[message];
    if (block == 0 || block > blocks.size()) throw InvalidArgument("block index outside [1, Q]");
    return measure_block(blocks[block - 1], slot, basis, measure_rng_);
  }

  const std::vector<Key>& queries() const noexcept { return queries_; }

 protected:
  virtual std::vector<BitString> answer(const Key& y) = 0;

  const MasterSecret& msk_;
  std::uint64_t tau_;
  std::vector<std::vector<Block>> cts_;

 private:
  Rng& measure_rng_;
  Budget budget_;
  std::vector<Key> queries_;
};

// Real column: KeyGen_msk then decryption of the challenge ciphertexts.
class RealView final : public SimViewBase {
 public:
  using SimViewBase::SimViewBase;

 protected:
  std::vector<BitString> answer(const Key& y) override {
    const FunctionKey fk = keygen(msk_, y);
    std::vector<BitString> out;
    for (const auto& blocks : cts_) out.push_back(decrypt_blocks(blocks, fk));
    return out;
  }
};

// Ideal column: the simulator answers each query y with F_a(y, m_i) and
// measures its own encryption of zeros.
class IdealView final : public SimViewBase {
 public:
  IdealView(const MasterSecret& msk, std::uint64_t tau, std::vector<std::vector<Block>> dummy,
            Rng& measure_rng, std::size_t budget, const std::vector<BitString>& messages)
      : SimViewBase(msk, tau, std::move(dummy), measure_rng, budget), messages_(messages) {}

 protected:
  std::vector<BitString> answer(const Key& y) override {
    if (y.bits().size() != msk_.params().lambda()) {
      throw InvalidArgument("key must have lambda bits");
    }
    std::vector<BitString> out;
    for (const auto& m : messages_) out.push_back(std::get<BitString>(functionality(msk_, y, m)));
    return out;
  }

 private:
  const std::vector<BitString>& messages_;
};

std::string encode_tuple(const MasterSecret& msk, const MessageSample& sample,
                         const std::vector<std::string>& alpha, const std::vector<Key>& queries) {
  std::string out = "a=" + msk_fingerprint(msk) + ";m=";
  for (std::size_t i = 0; i < sample.messages.size(); ++i) {
    if (i) out += ',';
    out += to_string(sample.messages[i]);
  }
  out += ";tau=" + std::to_string(sample.tau) + ";alpha=";
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (i) out += '|';
    out += alpha[i];
  }
  out += ";y=";
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (i) out += ',';
    out += describe(queries[i]);
  }
  return out;
}

}  // namespace

WeakSimResult run_weak_sim_game(const MessageGenerator& msg_gen, const SimAdversaryStrategy& adv,
                                const SchemeParams& params, std::size_t n_trials, Rng& rng,
                                const GameOptions& options) {
  if (n_trials == 0) throw InvalidArgument("need at least one trial");
  const std::uint64_t base = rng();
  const std::size_t q = params.message_length();
  WeakSimResult result;
  result.n_trials = n_trials;
  for (std::size_t t = 0; t < n_trials; ++t) {
    // Functionality index a and (m, tau) are shared by both columns.
    Rng setup_rng = derive_rng(base, kSetupStream, t);
    Rng msg_rng = derive_rng(base, kMessageStream, t);
    const MasterSecret msk = setup(params, setup_rng);
    const MessageSample sample = msg_gen(params, msg_rng);
    for (const auto& m : sample.messages) {
      if (m.size() != q) throw InvalidArgument("Msg produced a message of the wrong length");
    }

    {
      Rng enc_rng = derive_rng(base, kOracleStream, t);
      Rng measure_rng = derive_rng(base, kMeasureStream, t);
      Rng adv_rng = derive_rng(base, kAdversaryStream, t);
      std::vector<std::vector<Block>> cts;
      for (const auto& m : sample.messages) cts.push_back(encrypt_blocks(msk, m, enc_rng, options.variant));
      RealView view(msk, sample.tau, std::move(cts), measure_rng, options.query_budget);
      const auto alpha = adv.behavior(view, adv_rng);
      ++result.real[encode_tuple(msk, sample, alpha, view.queries())];
    }
    {
      Rng enc_rng = derive_rng(base, kOracleStream, t);
      Rng measure_rng = derive_rng(base, kMeasureStream, t);
      Rng adv_rng = derive_rng(base, kAdversaryStream, t);
      Rng sim_setup_rng = derive_rng(base, kSimSetupStream, t);
      // The simulator learns only F(aleph, m) = zQ.
      const std::size_t leaked_length = sample.messages.size() * q;
      const MasterSecret sim_msk = setup(params, sim_setup_rng);
      std::vector<std::vector<Block>> dummy;
      for (std::size_t i = 0; i < leaked_length / q; ++i) {
        dummy.push_back(encrypt_blocks(sim_msk, BitString(q, kZero), enc_rng, options.variant));
      }
      IdealView view(msk, sample.tau, std::move(dummy), measure_rng, options.query_budget,
                     sample.messages);
      const auto alpha = adv.behavior(view, adv_rng);
      ++result.ideal[encode_tuple(msk, sample, alpha, view.queries())];
    }
  }
  return result;
}

}  // namespace qfe
