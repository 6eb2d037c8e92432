#include <benchmark/benchmark.h>

#include "volrep/engine.hpp"
#include "volrep/master.hpp"
#include "volrep/reputation.hpp"
#include "volrep/scenarios.hpp"

using namespace volrep;

namespace {

ScenarioConfig grid(std::size_t pool, ReputationType type)
{
  auto const name = "p" + std::to_string(pool) + "-r4m5";
  return find_scenario(name)->generator({type, 0.5});
}

void BM_Round(benchmark::State &state)
{
  auto const config = grid(static_cast<std::size_t>(state.range(0)), ReputationType::Boinc);
  RandomStream rng(1);
  auto master = make_master_state(config.mechanism, config.payoffs, rng);
  std::vector<WorkerState> pool(config.workers.begin(), config.workers.end());
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(run_master_round(master, pool, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Round)->Arg(9)->Arg(99);

void BM_CombinedReputation(benchmark::State &state)
{
  auto const type = static_cast<ReputationType>(state.range(0));
  ReputationLedger ledger{1000, 700, 300, 280, 42};
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(combined_reputation(ledger, type, 0.5));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_CombinedReputation)->DenseRange(0, 2);

void BM_RunSingle(benchmark::State &state)
{
  auto const config = grid(static_cast<std::size_t>(state.range(0)), ReputationType::Linear);
  std::uint64_t seed = 1;
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(run_single(config, seed++, RoundObserver{}));
  }
}
BENCHMARK(BM_RunSingle)->Arg(9)->Arg(99)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
