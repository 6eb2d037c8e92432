#include "volrep/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace volrep {

MetricsAccumulator::MetricsAccumulator(std::uint64_t seed, double audit_prob_min)
  : audit_prob_min_(audit_prob_min)
{
  metrics_.seed = seed;
}

void MetricsAccumulator::add(RoundRecord const &record)
{
  auto const &outcome = record.outcome;
  if (!metrics_.convergence_round)
  {
    if (outcome.audited)
    {
      ++metrics_.audits_to_convergence;
    }
    if (!outcome.audited && outcome.accepted_value == AcceptedValue::Wrong)
    {
      ++metrics_.incorrect_before_convergence;
    }
    if (outcome.audit_prob_after == audit_prob_min_)
    {
      metrics_.convergence_round = record.round_index;
    }
    return;
  }

  if (outcome.audited)
  {
    return;
  }
  if (outcome.accepted_value == AcceptedValue::Wrong)
  {
    ++metrics_.incorrect_after_convergence;
    metrics_.eventual_correctness_violated = true;
  }
  else if (outcome.accepted_value == AcceptedValue::None)
  {
    ++metrics_.empty_rounds_after_convergence;
    metrics_.eventual_correctness_violated = true;
  }
}

std::optional<std::size_t> MetricsAccumulator::stop_round(std::size_t horizon) const
{
  if (!metrics_.convergence_round)
  {
    return std::nullopt;
  }
  return *metrics_.convergence_round + horizon;
}

RunMetrics compute_metrics(std::span<RoundRecord const> records, std::uint64_t seed,
                           double audit_prob_min)
{
  MetricsAccumulator acc(seed, audit_prob_min);
  for (auto const &r : records)
  {
    acc.add(r);
  }
  auto metrics = acc.metrics();
  if (!metrics.converged())
  {
    metrics.eventual_correctness_violated = true;
  }
  return metrics;
}

namespace {

std::vector<WorkerSnapshot> snapshot(MasterState const &master,
                                     std::span<WorkerState const> workers,
                                     std::span<WorkerId const> selected)
{
  std::vector<WorkerSnapshot> out;
  out.reserve(selected.size());
  auto const type    = master.params.reputation_type;
  auto const epsilon = master.params.exponential_base_epsilon;
  for (auto id : selected)
  {
    auto const &ledger = master.ledgers[id];
    WorkerSnapshot s;
    s.worker_id   = id;
    s.worker_type = workers[id].type();
    s.cheat_prob  = workers[id].cheat_prob();
    s.rho_rs      = responsiveness(ledger);
    s.rho_tr      = truthfulness(ledger, type, epsilon);
    s.rho         = s.rho_rs * s.rho_tr;
    out.push_back(s);
  }
  return out;
}

}  // namespace

RunMetrics run_single(ScenarioConfig const &config, std::uint64_t seed,
                      RoundObserver const &observer)
{
  RandomStream rng(seed);

  std::vector<WorkerState> workers;
  workers.reserve(config.workers.size());
  std::vector<WorkerSpec> specs = config.workers;
  std::sort(specs.begin(), specs.end(),
            [](WorkerSpec const &a, WorkerSpec const &b) { return a.worker_id < b.worker_id; });
  for (auto const &spec : specs)
  {
    workers.emplace_back(spec);
  }
  if (config.aspiration_spread > 0.0)
  {
    double const spread = config.aspiration_spread;
    for (auto &w : workers)
    {
      double const a = w.spec().aspiration;
      w.set_aspiration(std::max(0.0, rng.uniform_real(a - spread, a + spread)));
    }
  }

  MasterState master = make_master_state(config.mechanism, config.payoffs, rng);
  MetricsAccumulator acc(seed, config.mechanism.audit_prob_min);

  for (std::size_t round = 1; round <= config.max_rounds; ++round)
  {
    RoundRecord record;
    record.round_index        = round;
    record.outcome            = run_master_round(master, workers, rng);
    record.selected_snapshots = snapshot(master, workers, record.outcome.selected);
    acc.add(record);
    if (observer)
    {
      observer(record);
    }
    auto const stop = acc.stop_round(config.post_convergence_horizon);
    if (stop && round >= *stop)
    {
      break;
    }
  }

  auto metrics = acc.metrics();
  if (!metrics.converged())
  {
    metrics.eventual_correctness_violated = true;
  }
  return metrics;
}

RunResult run_single(ScenarioConfig const &config, std::uint64_t seed)
{
  RunResult result;
  result.metrics = run_single(config, seed,
                              [&](RoundRecord const &r) { result.records.push_back(r); });
  return result;
}

MetricStats summarize(std::vector<double> values)
{
  MetricStats s;
  s.count = values.size();
  if (values.empty())
  {
    return s;
  }
  std::sort(values.begin(), values.end());
  s.min = values.front();
  s.max = values.back();

  double const n = static_cast<double>(values.size());
  s.mean         = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double sq      = 0.0;
  for (double v : values)
  {
    sq += (v - s.mean) * (v - s.mean);
  }
  s.stddev = std::sqrt(sq / n);

  auto quantile = [&](double q) {
    double const pos  = q * (n - 1.0);
    auto const lo     = static_cast<std::size_t>(std::floor(pos));
    auto const hi     = std::min(lo + 1, values.size() - 1);
    double const frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
  };
  s.q1     = quantile(0.25);
  s.median = quantile(0.5);
  s.q3     = quantile(0.75);
  return s;
}

AggregateStats aggregate(std::span<RunMetrics const> runs)
{
  AggregateStats stats;
  stats.num_instantiations = runs.size();

  std::vector<double> rounds, audits, before, after, empty;
  for (auto const &m : runs)
  {
    if (m.eventual_correctness_violated)
    {
      ++stats.violated;
    }
    if (!m.converged())
    {
      ++stats.not_converged;
      continue;
    }
    ++stats.converged;
    rounds.push_back(static_cast<double>(*m.convergence_round));
    audits.push_back(static_cast<double>(m.audits_to_convergence));
    before.push_back(static_cast<double>(m.incorrect_before_convergence));
    after.push_back(static_cast<double>(m.incorrect_after_convergence));
    empty.push_back(static_cast<double>(m.empty_rounds_after_convergence));
  }
  stats.convergence_round              = summarize(std::move(rounds));
  stats.audits_to_convergence          = summarize(std::move(audits));
  stats.incorrect_before_convergence   = summarize(std::move(before));
  stats.incorrect_after_convergence    = summarize(std::move(after));
  stats.empty_rounds_after_convergence = summarize(std::move(empty));
  return stats;
}

BatchResult run_batch(ScenarioConfig const &config, BatchOptions const &options)
{
  std::size_t const count = config.num_instantiations;
  BatchResult result;
  result.runs.resize(count);
  if (options.keep_traces)
  {
    result.traces.resize(count);
  }

  auto run_one = [&](std::size_t k) {
    std::uint64_t const seed = config.base_seed + k;
    if (options.keep_traces)
    {
      auto run          = run_single(config, seed);
      result.runs[k]    = run.metrics;
      result.traces[k]  = std::move(run.records);
    }
    else
    {
      result.runs[k] = run_single(config, seed, RoundObserver{});
    }
  };

  std::size_t const threads = std::clamp<std::size_t>(options.parallel, 1, count);
  if (threads <= 1)
  {
    for (std::size_t k = 0; k < count; ++k)
    {
      run_one(k);
    }
  }
  else
  {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
    {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < count; k = next++)
        {
          try
          {
            run_one(k);
          }
          catch (...)
          {
            std::lock_guard lock(failure_mutex);
            failure = std::current_exception();
          }
        }
      });
    }
    for (auto &th : pool)
    {
      th.join();
    }
    if (failure)
    {
      std::rethrow_exception(failure);
    }
  }

  result.stats = aggregate(result.runs);
  return result;
}

std::string_view to_string(Verdict::Status status)
{
  switch (status)
  {
  case Verdict::Status::Pass:
    return "PASS";
  case Verdict::Status::Fail:
    return "FAIL";
  case Verdict::Status::Inconclusive:
    return "INCONCLUSIVE";
  case Verdict::Status::Inapplicable:
    return "INAPPLICABLE";
  }
  return "UNKNOWN";
}

namespace {

// Altruistic/malicious only, with at least one fully available altruist.
std::optional<std::string> pool_precondition_failure(ScenarioConfig const &config)
{
  bool reliable_altruist = false;
  for (auto const &w : config.workers)
  {
    if (w.worker_type == WorkerType::Rational)
    {
      return "pool contains rational workers";
    }
    if (w.worker_type == WorkerType::Altruistic && w.availability == 1.0)
    {
      reliable_altruist = true;
    }
  }
  if (!reliable_altruist)
  {
    return "pool has no altruistic worker with availability 1";
  }
  if (config.mechanism.selection_policy != SelectionPolicy::Reputation)
  {
    return "selection policy is not REPUTATION";
  }
  return std::nullopt;
}

Verdict tally(ScenarioConfig const &config, std::size_t parallel)
{
  auto const batch = run_batch(config, BatchOptions{parallel, false});
  Verdict v;
  v.runs = batch.runs.size();
  for (auto const &m : batch.runs)
  {
    if (!m.converged())
    {
      continue;
    }
    ++v.converged;
    if (m.incorrect_after_convergence > 0 || m.empty_rounds_after_convergence > 0)
    {
      ++v.violating;
    }
  }
  return v;
}

}  // namespace

Verdict check_theorem_1(ScenarioConfig const &config, std::size_t parallel)
{
  if (auto why = pool_precondition_failure(config))
  {
    return {Verdict::Status::Inapplicable, *why};
  }
  if (config.mechanism.reputation_type == ReputationType::Boinc)
  {
    return {Verdict::Status::Inapplicable, "reputation type must be LINEAR or EXPONENTIAL"};
  }
  auto v   = tally(config, parallel);
  v.status = v.violating == 0 ? Verdict::Status::Pass : Verdict::Status::Fail;
  v.reason = v.violating == 0 ? "every converged run is violation-free"
                              : "converged runs accepted WRONG or nothing after convergence";
  return v;
}

Verdict check_theorem_2(ScenarioConfig const &config, std::size_t parallel)
{
  if (auto why = pool_precondition_failure(config))
  {
    return {Verdict::Status::Inapplicable, *why};
  }
  if (config.mechanism.reputation_type != ReputationType::Boinc)
  {
    return {Verdict::Status::Inapplicable, "reputation type must be BOINC"};
  }

  std::size_t const partial_altruists = static_cast<std::size_t>(
      std::count_if(config.workers.begin(), config.workers.end(), [](WorkerSpec const &w) {
        return w.worker_type == WorkerType::Altruistic && w.availability < 1.0;
      }));

  auto v = tally(config, parallel);
  if (partial_altruists < config.mechanism.select_n)
  {
    v.status = v.violating == 0 ? Verdict::Status::Pass : Verdict::Status::Fail;
    v.reason = "fewer than n partially available altruists: correctness expected";
  }
  else
  {
    v.status = v.violating > 0 ? Verdict::Status::Pass : Verdict::Status::Inconclusive;
    v.reason = "at least n partially available altruists: violations possible";
  }
  return v;
}

}  // namespace volrep
