#include "qfe/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qfe/cli/serialize.hpp"
#include "qfe/qfe.hpp"

namespace qfe::cli {

namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

constexpr const char* kDescription =
    "qfe: simulator for a one-qubit equatorial cipher and its prefix-revealing\n"
    "functional-encryption extension.\n\n"
    "Ciphertext files store raw qubit amplitudes. This is a simulation and\n"
    "analysis tool, not a deployable cipher: anyone holding a ciphertext file\n"
    "can read the amplitudes directly.";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& content, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << content;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<double> theta_grid(std::size_t n) {
  if (n == 0) throw InvalidArgument("grid must have at least one point");
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  }
  return out;
}

Permutation parse_eta(const std::string& text, std::size_t q, Rng& rng) {
  if (text == "identity") return Permutation::identity(q);
  if (text == "random") {
    std::vector<std::size_t> image(q);
    for (std::size_t i = 0; i < q; ++i) image[i] = i;
    for (std::size_t i = q; i > 1; --i) std::swap(image[i - 1], image[uniform_below(rng, i)]);
    return Permutation::from_zero_based(std::move(image));
  }
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw InvalidArgument("--eta must be 'identity', 'random' or a comma list of 1..Q");
    }
    values.push_back(std::stoul(item));
  }
  if (values.size() != q) throw InvalidArgument("--eta must list exactly Q positions");
  return Permutation::from_one_based(values);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// ------------------------------------------------------------------ commands

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
};

struct SetupArgs {
  std::size_t lambda = 0;
  std::size_t q = 0;
  std::string eta = "identity";
};

int cmd_setup(const SetupArgs& a, const Globals& g, std::ostream& out) {
  const SchemeParams params(a.lambda, a.q);
  Rng rng(g.seed);
  Rng eta_rng = derive_rng(g.seed, 0x657461, 0);
  const Permutation eta = parse_eta(a.eta, params.message_length(), eta_rng);
  emit(serialize(setup(params, eta, rng)), g.out, out);
  return kExitOk;
}

struct KeygenArgs {
  std::string msk_path;
  std::string key_hex;
  std::size_t q = 0;
  bool aleph = false;
};

int cmd_keygen(const KeygenArgs& a, const Globals& g, std::ostream& out) {
  const MasterSecret msk = parse_master_secret(read_file(a.msk_path));
  const int chosen = (a.key_hex.empty() ? 0 : 1) + (a.q ? 1 : 0) + (a.aleph ? 1 : 0);
  if (chosen != 1) throw InvalidArgument("give exactly one of --key, --q, --aleph");
  FunctionKey fk = FunctionKey::bottom();
  if (a.aleph) {
    fk = keygen(msk, Key::aleph());
  } else if (a.q) {
    if (a.q > msk.message_length()) throw InvalidArgument("--q outside [1, Q]");
    fk = keygen(msk, Key::classical(msk.designated_key(a.q)));
  } else {
    BitString bits;
    try {
      bits = parse_hex(a.key_hex, msk.params().lambda());
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string("--key: ") + e.what());
    }
    fk = keygen(msk, Key::classical(std::move(bits)));
  }
  emit(serialize(fk, msk.message_length()), g.out, out);
  return kExitOk;
}

struct EncArgs {
  std::string msk_path;
  std::string message;
};

int cmd_enc(const EncArgs& a, const Globals& g, std::ostream& out) {
  const MasterSecret msk = parse_master_secret(read_file(a.msk_path));
  BitString m;
  try {
    m = parse_bits(a.message);
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("--message: ") + e.what());
  }
  Rng rng(g.seed);
  emit(serialize(enc(msk, m, rng)), g.out, out);
  return kExitOk;
}

struct DecArgs {
  std::string key_path;
  std::string ct_path;
};

int cmd_dec(const DecArgs& a, const Globals& g, std::ostream& out) {
  const auto [fk, q] = parse_function_key(read_file(a.key_path));
  const HfeCiphertext ct = parse_ciphertext(read_file(a.ct_path));
  // Angles follow the key's Q; a ciphertext made for another Q fails to
  // decrypt deterministically.
  emit(to_string(dec(fk, ct, q)) + "\n", g.out, out);
  return kExitOk;
}

struct AnalyzeArgs {
  std::string report;
  std::size_t points = 11;
  std::vector<double> t_values;
  std::size_t grid = 64;
};

std::string report_entropic_curve(const AnalyzeArgs& a) {
  std::vector<double> ts = a.t_values;
  if (ts.empty()) {
    if (a.points < 2) throw InvalidArgument("--points must be at least 2");
    for (std::size_t i = 0; i < a.points; ++i) {
      ts.push_back(static_cast<double>(i) / static_cast<double>(a.points - 1));
    }
  }
  const auto grid = theta_grid(a.grid);
  std::ostringstream os;
  os << "# entropic-curve: trace distance of E(rho) to I/2 for a message bit with\n"
     << "# min-entropy t, against 1/2 (2^(1-t) - 1); worst case over " << a.grid
     << " angles and r in {0,1}\n";
  os << std::setw(10) << "t" << std::setw(18) << "distance" << std::setw(18) << "bound"
     << std::setw(12) << "abs_diff" << '\n';
  const DensityMatrix half = DensityMatrix::maximally_mixed(2);
  for (double t : ts) {
    const double bound = entropic_bound(t);
    const DensityMatrix rho = MessageDistribution::from_min_entropy(t).density();
    double worst = 0.0;
    double at_worst = trace_distance(xi_superoperator(grid.front(), kZero, rho), half);
    for (double theta : grid) {
      for (Bit r : {kZero, kOne}) {
        const double d = trace_distance(xi_superoperator(theta, r, rho), half);
        if (std::abs(d - bound) > worst) {
          worst = std::abs(d - bound);
          at_worst = d;
        }
      }
    }
    os << std::setw(10) << fixed(t, 6) << std::setw(18) << fixed(at_worst, 14) << std::setw(18)
       << fixed(bound, 14) << std::setw(12) << sci(worst) << '\n';
  }
  return os.str();
}

std::string report_avg_states(const AnalyzeArgs& a) {
  const auto grid = theta_grid(a.grid);
  std::ostringstream os;
  os << "# avg-states: max-norm deviation over " << a.grid << " angles\n";
  os << std::setw(3) << "b" << std::setw(24) << "avg_message-I/2" << std::setw(24)
     << "avg_joint_s-I/4" << '\n';
  const Matrix half = Matrix::identity(2) * Complex(0.5);
  const Matrix quarter = Matrix::identity(4) * Complex(0.25);
  for (Bit b : {kZero, kOne}) {
    double msg = 0.0;
    double joint = 0.0;
    for (double theta : grid) {
      msg = std::max(msg, max_abs_diff(avg_message_cipher_state(b, theta).matrix(), half));
      joint = std::max(joint, max_abs_diff(avg_joint_cipher_state(b, theta, true).matrix(), quarter));
    }
    os << std::setw(3) << b.value() << std::setw(24) << sci(msg) << std::setw(24) << sci(joint)
       << '\n';
  }
  return os.str();
}

std::string report_ind_channel(const AnalyzeArgs& a) {
  const auto grid = theta_grid(a.grid);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(2);
  const DensityMatrix zero = DensityMatrix::pure(PureState::basis(kZero));
  const DensityMatrix one = DensityMatrix::pure(PureState::basis(kOne));
  const double k = 1.0 / std::numbers::sqrt2;
  const DensityMatrix plus = DensityMatrix::pure(PureState(k, k));
  Matrix bell(4);
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;

  struct Input {
    const char* name;
    DensityMatrix rho;
  };
  const std::vector<Input> inputs = {
      {"|0><0| (x) I/2", tensor(zero, mixed)},
      {"|1><1| (x) I/2", tensor(one, mixed)},
      {"|1><1| (x) |1><1|", tensor(one, one)},
      {"|+><+| (x) I/2", tensor(plus, mixed)},
      {"bell (|00>+|11>)/sqrt2", DensityMatrix(bell)},
  };

  std::ostringstream os;
  os << "# ind-channel: trace distance between r,s-averaged encryptions of rho_ME and of\n"
     << "# |0><0| (x) Tr_M(rho_ME); max over " << a.grid
     << " angles. Exploratory values, not pass/fail.\n";
  os << std::left << std::setw(26) << "input" << std::right << std::setw(18) << "distance"
     << '\n';
  for (const auto& in : inputs) {
    const DensityMatrix env(trace_out_first(in.rho.matrix(), 2));
    const DensityMatrix reference = tensor(zero, env);
    double worst = 0.0;
    for (double theta : grid) {
      worst = std::max(worst, trace_distance(ind_channel_averaged(in.rho, theta).state,
                                             ind_channel_averaged(reference, theta).state));
    }
    os << std::left << std::setw(26) << in.name << std::right << std::setw(18) << fixed(worst, 14)
       << '\n';
  }
  return os.str();
}

int cmd_analyze(const AnalyzeArgs& a, const Globals& g, std::ostream& out) {
  std::string text;
  if (a.report == "entropic-curve") {
    text = report_entropic_curve(a);
  } else if (a.report == "avg-states") {
    text = report_avg_states(a);
  } else if (a.report == "ind-channel") {
    text = report_ind_channel(a);
  } else {
    throw InvalidArgument("unknown report '" + a.report + "'");
  }
  emit(text, g.out, out);
  return kExitOk;
}

struct GameArgs {
  std::string game;
  std::string adversary;
  std::size_t n = 10000;
  std::size_t lambda = 8;
  std::size_t q = 8;
  std::size_t budget = kDefaultQueryBudget;
  bool broken = false;
};

int cmd_game(const GameArgs& a, const Globals& g, std::ostream& out) {
  const SchemeParams params(a.lambda, a.q);
  GameOptions options;
  options.query_budget = a.budget;
  options.variant = a.broken ? CipherVariant::kFixedRandomness : CipherVariant::kGenuine;
  Rng rng(g.seed);
  const double bound = 4.0 / std::sqrt(static_cast<double>(a.n));

  std::ostringstream os;
  os << "game: " << a.game << '\n'
     << "adversary: " << a.adversary << '\n'
     << "cipher: " << (a.broken ? "fixed-r (broken)" : "genuine") << '\n'
     << "lambda: " << a.lambda << '\n'
     << "Q: " << a.q << '\n'
     << "trials: " << a.n << '\n';

  bool pass = false;
  if (a.game == "msg-privacy" || a.game == "func-privacy") {
    const auto adv = find_privacy_adversary(a.adversary);
    if (!adv) throw InvalidArgument("unknown adversary '" + a.adversary + "'");
    const AdvantageEstimate est = a.game == "msg-privacy"
                                      ? run_message_privacy_game(*adv, params, a.n, rng, options)
                                      : run_function_privacy_game(*adv, params, a.n, rng, options);
    pass = est.passes();
    os << "p0_hat: " << fixed(est.p0_hat, 6) << '\n'
       << "p1_hat: " << fixed(est.p1_hat, 6) << '\n'
       << "gap: " << fixed(est.gap(), 6) << '\n'
       << "bound: " << fixed(est.bound, 6) << '\n';
  } else if (a.game == "weak-sim") {
    const auto adv = find_sim_adversary(a.adversary);
    if (!adv) throw InvalidArgument("unknown adversary '" + a.adversary + "'");
    const WeakSimResult res =
        run_weak_sim_game(default_message_generator, *adv, params, a.n, rng, options);
    const double d = res.distance();
    pass = d <= bound;
    os << "real_support: " << res.real.size() << '\n'
       << "ideal_support: " << res.ideal.size() << '\n'
       << "distance: " << fixed(d, 6) << '\n'
       << "bound: " << fixed(bound, 6) << '\n';
  } else {
    throw InvalidArgument("unknown game '" + a.game + "'");
  }
  os << "result: " << (pass ? "PASS" : "FAIL") << '\n'
     << "note: Monte-Carlo evidence against one fixed strategy, not a security proof\n";
  emit(os.str(), g.out, out);
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{kDescription, "qfe"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--seed", globals.seed, "RNG seed (u64); identical seeds give identical output");
  app.add_option("--out", globals.out, "Write the result to this file instead of stdout");

  SetupArgs setup_args;
  auto* setup_cmd = app.add_subcommand("setup", "Sample a master secret");
  setup_cmd->add_option("--lambda", setup_args.lambda, "Security parameter (key bits)")->required();
  setup_cmd->add_option("--Q,--message-length", setup_args.q, "Message length in bits")->required();
  setup_cmd->add_option("--eta", setup_args.eta,
                        "Position permutation: identity, random, or a comma list of 1..Q");

  KeygenArgs keygen_args;
  auto* keygen_cmd = app.add_subcommand("keygen", "Derive a function key from a master secret");
  keygen_cmd->add_option("--msk", keygen_args.msk_path, "Master secret file")->required();
  keygen_cmd->add_option("--key", keygen_args.key_hex, "Classical key as lambda-bit hex");
  keygen_cmd->add_option("--q", keygen_args.q, "Use the designated key of rank q");
  keygen_cmd->add_flag("--aleph", keygen_args.aleph, "Use the length-revealing key");

  EncArgs enc_args;
  auto* enc_cmd = app.add_subcommand("enc", "Encrypt a Q-bit message");
  enc_cmd->add_option("--msk", enc_args.msk_path, "Master secret file")->required();
  enc_cmd->add_option("--message", enc_args.message, "Message as a 0/1 string")->required();

  DecArgs dec_args;
  auto* dec_cmd = app.add_subcommand("dec", "Decrypt with a function key; prints the prefix");
  dec_cmd->add_option("--key", dec_args.key_path, "Function key file")->required();
  dec_cmd->add_option("--ct", dec_args.ct_path, "Ciphertext file")->required();

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze", "Print an analysis table");
  analyze_cmd->add_option("report", analyze_args.report, "entropic-curve | avg-states | ind-channel")
      ->required();
  analyze_cmd->add_option("--points", analyze_args.points, "Evenly spaced t values in [0, 1]");
  analyze_cmd->add_option("--t", analyze_args.t_values, "Explicit t values")->delimiter(',');
  analyze_cmd->add_option("--grid", analyze_args.grid, "Number of angles in the theta grid");

  GameArgs game_args;
  auto* game_cmd = app.add_subcommand("game", "Run a security game and report the advantage");
  game_cmd->add_option("game", game_args.game, "msg-privacy | func-privacy | weak-sim")->required();
  game_cmd->add_option("--adversary", game_args.adversary, "Built-in adversary name")->required();
  game_cmd->add_option("--n", game_args.n, "Number of trials");
  game_cmd->add_option("--lambda", game_args.lambda, "Security parameter");
  game_cmd->add_option("--Q,--message-length", game_args.q, "Message length");
  game_cmd->add_option("--budget", game_args.budget, "Oracle query budget per trial");
  game_cmd->add_flag("--broken", game_args.broken, "Use the fixed-randomness cipher variant");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*setup_cmd) return cmd_setup(setup_args, globals, out);
    if (*keygen_cmd) return cmd_keygen(keygen_args, globals, out);
    if (*enc_cmd) return cmd_enc(enc_args, globals, out);
    if (*dec_cmd) return cmd_dec(dec_args, globals, out);
    if (*analyze_cmd) return cmd_analyze(analyze_args, globals, out);
    if (*game_cmd) return cmd_game(game_args, globals, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const AmbiguousState& e) {
    err << "decryption failed (key does not match ciphertext): " << e.what() << '\n';
    return kExitAmbiguous;
  } catch (const InvalidAdversary& e) {
    err << "invalid adversary: " << e.what() << '\n';
    return kExitValidity;
  } catch (const AlephKey& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidity;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qfe::cli
