#include <benchmark/benchmark.h>

#include <numbers>

#include "qfe/qfe.hpp"

using namespace qfe;

static void BM_QencQdec(benchmark::State& state) {
  Rng rng(1);
  const XiContext ctx(kOne, std::numbers::pi / 3);
  for (auto _ : state) {
    const XiCiphertext ct = qenc(ctx, kOne, rng);
    benchmark::DoNotOptimize(qdec(ctx, ct));
  }
}
BENCHMARK(BM_QencQdec);

static void BM_EncDec(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  Rng rng(2);
  const MasterSecret msk = setup(SchemeParams(q, q), rng);
  const FunctionKey fk = keygen(msk, Key::classical(msk.designated_key(q)));
  const BitString m = uniform_bits(rng, q);
  for (auto _ : state) {
    const HfeCiphertext ct = enc(msk, m, rng);
    benchmark::DoNotOptimize(dec(fk, ct));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(q));
}
BENCHMARK(BM_EncDec)->Arg(8)->Arg(64)->Arg(512);

static void BM_Setup(benchmark::State& state) {
  const auto q = static_cast<std::size_t>(state.range(0));
  Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(setup(SchemeParams(16, q), rng));
}
BENCHMARK(BM_Setup)->Arg(16)->Arg(256);

static void BM_TraceDistance(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const DensityMatrix a = dim == 2 ? xi_superoperator(0.4, kOne, DensityMatrix::diagonal({0.7, 0.3}))
                                   : ind_channel_averaged(DensityMatrix::maximally_mixed(dim / 2), 0.4).state;
  const DensityMatrix b = DensityMatrix::maximally_mixed(dim);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_TraceDistance)->Arg(2)->Arg(4)->Arg(8);

static void BM_MessagePrivacyTrials(benchmark::State& state) {
  const AdversaryStrategy adv = *find_privacy_adversary("key-query-then-compare");
  Rng rng(4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_message_privacy_game(adv, SchemeParams(8, 8), 64, rng));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_MessagePrivacyTrials);

static void BM_WeakSimTrials(benchmark::State& state) {
  const SimAdversaryStrategy adv = *find_sim_adversary("echo");
  Rng rng(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        run_weak_sim_game(default_message_generator, adv, SchemeParams(8, 8), 64, rng));
  }
  state.SetItemsProcessed(state.iterations() * 64);
}
BENCHMARK(BM_WeakSimTrials);
BENCHMARK_MAIN();
