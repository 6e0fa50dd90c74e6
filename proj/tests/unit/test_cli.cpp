#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>

#include "qfe/cli/commands.hpp"
#include "qfe/cli/serialize.hpp"
#include "support.hpp"

using namespace qfe;
using namespace qfe::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("qfe_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

bool all_bits_equal(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Serialize, FormatDoubleRoundTripsEveryBit) {
  Rng rng(1);
  std::vector<double> values = {0.0, -0.0, 1.0, -1.0, 0.1, 1e-300, 5e-324, 1.7976931348623157e308};
  for (int i = 0; i < 1000; ++i) values.push_back((uniform_unit(rng) - 0.5) * 4.0);
  for (double v : values) {
    const std::string s = format_double(v);
    EXPECT_TRUE(all_bits_equal(std::strtod(s.c_str(), nullptr), v)) << s;
    EXPECT_NE(s.find_first_of(".eE"), std::string::npos) << s;
  }
}

TEST(Serialize, RandomObjectsRoundTrip) {
  Rng rng(2024);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t q = 1 + uniform_below(rng, 16);
    std::size_t lam = 1 + uniform_below(rng, q);
    while (lam < 64 && (std::uint64_t{1} << lam) < q) ++lam;
    const SchemeParams params(lam, q);
    std::vector<std::size_t> image(q);
    for (std::size_t j = 0; j < q; ++j) image[j] = j;
    for (std::size_t j = q; j > 1; --j) std::swap(image[j - 1], image[uniform_below(rng, j)]);
    const MasterSecret msk = setup(params, Permutation::from_zero_based(image), rng);
    ASSERT_EQ(parse_master_secret(serialize(msk)), msk);

    const HfeCiphertext ct = enc(msk, uniform_bits(rng, q), rng);
    const std::string text = serialize(ct);
    ASSERT_EQ(parse_ciphertext(text), ct);
    ASSERT_EQ(serialize(parse_ciphertext(text)), text);

    const FunctionKey fk = keygen(msk, Key::classical(msk.designated_key(1 + uniform_below(rng, q))));
    ASSERT_EQ(parse_function_key(serialize(fk, q)), std::make_pair(fk, q));
    ASSERT_EQ(parse_function_key(serialize(FunctionKey::bottom(), q)).first, FunctionKey::bottom());
  }
}

TEST(Serialize, RejectsMalformedRecords) {
  Rng rng(1);
  const MasterSecret msk = setup(SchemeParams(4, 4), rng);
  std::string text = serialize(msk);
  EXPECT_THROW(parse_master_secret("{"), ParseError);
  EXPECT_THROW(parse_master_secret("[]"), ParseError);
  EXPECT_THROW(parse_ciphertext(text), ParseError);  // wrong kind
  std::string bad = text;
  bad.replace(bad.find("\"version\": 1"), 12, "\"version\": 9");
  EXPECT_THROW(parse_master_secret(bad), ParseError);
  bad = text;
  bad.replace(bad.find("\"eta\": [1, 2, 3, 4]"), 19, "\"eta\": [1, 1, 3, 4]");
  EXPECT_THROW(parse_master_secret(bad), ParseError);

  const std::string ct = serialize(enc(msk, support::bits("1010"), rng));
  bad = ct;
  bad.replace(bad.find("\"Q\": 4"), 6, "\"Q\": 3");
  EXPECT_THROW(parse_ciphertext(bad), ParseError);
  bad = ct;
  bad.replace(bad.find("\"j\": 2"), 6, "\"j\": 3");
  EXPECT_THROW(parse_ciphertext(bad), ParseError);
  bad = ct;
  const auto c0 = bad.find("\"c0\": [") + 7;
  bad.replace(c0, 1, "9");  // breaks normalization or the equator check
  EXPECT_THROW(parse_ciphertext(bad), ParseError);
  EXPECT_THROW(parse_function_key(R"({"version":1,"kind":"function-key","Q":4,"bottom":false,"prefix":"10102"})"),
               ParseError);
  EXPECT_THROW(parse_function_key(R"({"version":1,"kind":"function-key","Q":2,"bottom":false,"prefix":"101"})"),
               ParseError);
}

TEST_F(CliFiles, SetupIsDeterministicAndValidates) {
  ASSERT_EQ(call({"--seed", "1", "--out", path("a"), "setup", "--lambda", "8", "--Q", "8"}).code, 0);
  ASSERT_EQ(call({"--seed", "1", "--out", path("b"), "setup", "--lambda", "8", "--Q", "8"}).code, 0);
  EXPECT_EQ(slurp(path("a")), slurp(path("b")));
  ASSERT_EQ(call({"--seed", "2", "--out", path("c"), "setup", "--lambda", "8", "--Q", "8"}).code, 0);
  EXPECT_NE(slurp(path("a")), slurp(path("c")));

  EXPECT_EQ(call({"setup", "--lambda", "4", "--Q", "2"}).code, kExitUsage);
  const Result r = call({"setup", "--lambda", "2", "--Q", "4", "--eta", "2,1,4,3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(parse_master_secret(r.out).eta(), Permutation::from_one_based({2, 1, 4, 3}));
  EXPECT_EQ(call({"setup", "--lambda", "2", "--Q", "4", "--eta", "2,1,4"}).code, kExitUsage);
}

TEST_F(CliFiles, FullRoundTrip) {
  ASSERT_EQ(call({"--seed", "1", "--out", path("msk"), "setup", "--lambda", "8", "--Q", "8"}).code, 0);
  ASSERT_EQ(call({"--out", path("k8"), "keygen", "--msk", path("msk"), "--q", "8"}).code, 0);
  ASSERT_EQ(call({"--out", path("k3"), "keygen", "--msk", path("msk"), "--q", "3"}).code, 0);
  ASSERT_EQ(call({"--seed", "3", "--out", path("ct"), "enc", "--msk", path("msk"), "--message",
                  "10110101"})
                .code,
            0);
  EXPECT_EQ(call({"dec", "--key", path("k8"), "--ct", path("ct")}).out, "10110101\n");
  EXPECT_EQ(call({"dec", "--key", path("k3"), "--ct", path("ct")}).out, "101\n");

  // Any key that is not designated gives a bottom record and an empty line.
  const MasterSecret msk = parse_master_secret(slurp(path("msk")));
  std::string stray;
  for (unsigned v = 0; v < 256 && stray.empty(); ++v) {
    BitString k(8);
    for (unsigned i = 0; i < 8; ++i) k[7 - i] = Bit((v >> i) & 1u);
    if (!msk.rank_of(k)) stray = to_hex(k);
  }
  ASSERT_EQ(call({"--out", path("kb"), "keygen", "--msk", path("msk"), "--key", stray}).code, 0);
  EXPECT_TRUE(parse_function_key(slurp(path("kb"))).first.is_bottom());
  EXPECT_EQ(call({"dec", "--key", path("kb"), "--ct", path("ct")}).out, "\n");
}

TEST_F(CliFiles, ExitCodes) {
  ASSERT_EQ(call({"--seed", "1", "--out", path("msk"), "setup", "--lambda", "4", "--Q", "8"}).code, 0);
  ASSERT_EQ(call({"--seed", "2", "--out", path("msk4"), "setup", "--lambda", "4", "--Q", "4"}).code, 0);
  ASSERT_EQ(call({"--seed", "3", "--out", path("ct"), "enc", "--msk", path("msk"), "--message",
                  "10110101"})
                .code,
            0);
  ASSERT_EQ(call({"--out", path("k4"), "keygen", "--msk", path("msk4"), "--q", "4"}).code, 0);

  EXPECT_EQ(call({"keygen", "--msk", path("msk"), "--key", "zz"}).code, kExitParse);
  EXPECT_EQ(call({"keygen", "--msk", path("msk"), "--key", "1f"}).code, kExitParse);
  EXPECT_EQ(call({"keygen", "--msk", path("msk"), "--aleph"}).code, kExitValidity);
  EXPECT_EQ(call({"keygen", "--msk", path("msk")}).code, kExitUsage);
  EXPECT_EQ(call({"keygen", "--msk", path("missing")}).code, kExitIo);
  EXPECT_EQ(call({"enc", "--msk", path("msk"), "--message", "101"}).code, kExitUsage);
  EXPECT_EQ(call({"enc", "--msk", path("msk"), "--message", "10a"}).code, kExitParse);
  EXPECT_EQ(call({"dec", "--key", path("msk"), "--ct", path("ct")}).code, kExitParse);
  // A key from an instance with a different message length reads the wrong angles.
  const Result mismatch = call({"dec", "--key", path("k4"), "--ct", path("ct")});
  EXPECT_EQ(mismatch.code, kExitAmbiguous);
  EXPECT_TRUE(mismatch.out.empty());
  EXPECT_EQ(call({"bogus"}).code, kExitUsage);
  EXPECT_EQ(call({}).code, kExitUsage);
  EXPECT_EQ(call({"--out", (dir_ / "no" / "such" / "dir").string(), "setup", "--lambda", "2",
                  "--Q", "2"})
                .code,
            kExitIo);
}

TEST(Cli, HelpMentionsSimulatorCaveat) {
  const Result r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("not a deployable cipher"), std::string::npos);
}

TEST(Cli, AnalyzeReports) {
  const Result curve = call({"analyze", "entropic-curve", "--points", "11"});
  ASSERT_EQ(curve.code, 0);
  std::istringstream lines(curve.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (line.empty() || line[0] == '#' || line.find("distance") != std::string::npos) continue;
    std::istringstream fields(line);
    double t, d, b, diff;
    ASSERT_TRUE(fields >> t >> d >> b >> diff) << line;
    EXPECT_LT(diff, 1e-10);
    EXPECT_NEAR(b, 0.5 * (std::exp2(1.0 - t) - 1.0), 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 11);

  const Result avg = call({"analyze", "avg-states"});
  ASSERT_EQ(avg.code, 0);
  std::istringstream avg_lines(avg.out);
  rows = 0;
  while (std::getline(avg_lines, line)) {
    if (line.empty() || line[0] == '#' || line.find("avg") != std::string::npos) continue;
    std::istringstream fields(line);
    int b;
    double m, j;
    ASSERT_TRUE(fields >> b >> m >> j) << line;
    EXPECT_LT(m, 1e-12);
    EXPECT_LT(j, 1e-12);
    ++rows;
  }
  EXPECT_EQ(rows, 2);

  EXPECT_EQ(call({"analyze", "ind-channel", "--grid", "8"}).code, 0);
  EXPECT_EQ(call({"analyze", "entropic-curve", "--t", "1.2"}).code, kExitUsage);
  EXPECT_EQ(call({"analyze", "nope"}).code, kExitUsage);
  EXPECT_EQ(call({"analyze", "avg-states", "--grid", "0"}).code, kExitUsage);
}

TEST(Cli, GameReports) {
  const Result ok = call({"--seed", "4", "game", "msg-privacy", "--adversary", "basis-measurer",
                          "--n", "2000"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_NE(ok.out.find("result: PASS"), std::string::npos);

  const Result broken = call({"--seed", "4", "game", "msg-privacy", "--adversary",
                              "rotation-measurer", "--n", "2000", "--broken"});
  EXPECT_EQ(broken.code, kExitCheckFailed);
  EXPECT_NE(broken.out.find("result: FAIL"), std::string::npos);
  EXPECT_NE(broken.out.find("gap: 1.000000"), std::string::npos);

  const Result sim = call({"--seed", "4", "game", "weak-sim", "--adversary", "echo", "--n", "500"});
  EXPECT_EQ(sim.code, 0);
  EXPECT_NE(sim.out.find("distance: 0.000000"), std::string::npos);

  EXPECT_EQ(call({"game", "msg-privacy", "--adversary", "nobody"}).code, kExitUsage);
  EXPECT_EQ(call({"game", "nope", "--adversary", "echo"}).code, kExitUsage);
  EXPECT_EQ(call({"--seed", "4", "game", "msg-privacy", "--adversary", "basis-measurer", "--n",
                  "300"})
                .out,
            call({"--seed", "4", "game", "msg-privacy", "--adversary", "basis-measurer", "--n",
                  "300"})
                .out);
}

#ifdef QFE_BINARY
TEST_F(CliFiles, BinaryPipelineIsByteIdentical) {
  const std::string bin = QFE_BINARY;
  auto sh = [&](const std::string& args) {
    const std::string cmd = "\"" + bin + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  for (const char* tag : {"1", "2"}) {
    const std::string t = tag;
    ASSERT_EQ(sh("--seed 9 --out " + path("msk" + t) + " setup --lambda 8 --Q 8 --eta random"), 0);
    ASSERT_EQ(sh("--out " + path("key" + t) + " keygen --msk " + path("msk" + t) + " --q 5"), 0);
    ASSERT_EQ(sh("--seed 10 --out " + path("ct" + t) + " enc --msk " + path("msk" + t) +
                 " --message 11001010"),
              0);
    ASSERT_EQ(sh("--out " + path("pt" + t) + " dec --key " + path("key" + t) + " --ct " + path("ct" + t)), 0);
    ASSERT_EQ(sh("--out " + path("an" + t) + " analyze entropic-curve"), 0);
    ASSERT_EQ(sh("--seed 3 --out " + path("g" + t) + " game weak-sim --adversary echo --n 200"), 0);
  }
  for (const char* f : {"msk", "key", "ct", "pt", "an", "g"}) {
    EXPECT_EQ(slurp(path(std::string(f) + "1")), slurp(path(std::string(f) + "2"))) << f;
    EXPECT_FALSE(slurp(path(std::string(f) + "1")).empty()) << f;
  }
  // Decrypted prefix follows the stored permutation.
  const MasterSecret msk = parse_master_secret(slurp(path("msk1")));
  const BitString m = support::bits("11001010");
  BitString want;
  for (std::size_t j = 0; j < 5; ++j) want.push_back(m[msk.eta()(j)]);
  EXPECT_EQ(slurp(path("pt1")), to_string(want) + "\n");
  EXPECT_EQ(sh("dec --key " + path("msk1") + " --ct " + path("ct1")), kExitParse);
}
#endif
