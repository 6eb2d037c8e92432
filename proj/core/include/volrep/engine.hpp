#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "volrep/master.hpp"
#include "volrep/model.hpp"

namespace volrep {

struct WorkerSnapshot
{
  WorkerId worker_id{0};
  WorkerType worker_type{WorkerType::Altruistic};
  double cheat_prob{0.0};
  double rho_rs{1.0};
  double rho_tr{1.0};
  double rho{1.0};
};

/// Everything that happened in one round, with end-of-round snapshots of the
/// selected workers.
struct RoundRecord
{
  std::size_t round_index{0};
  RoundOutcome outcome;
  std::vector<WorkerSnapshot> selected_snapshots;
};

struct RunMetrics
{
  std::uint64_t seed{0};
  // First round whose audit_prob_after equals audit_prob_min; empty if never.
  std::optional<std::size_t> convergence_round;
  std::size_t audits_to_convergence{0};
  std::size_t incorrect_before_convergence{0};
  std::size_t incorrect_after_convergence{0};
  std::size_t empty_rounds_after_convergence{0};
  // Set when the run never converged, or when any post-convergence round
  // accepted WRONG or nothing at all.
  bool eventual_correctness_violated{false};

  bool converged() const { return convergence_round.has_value(); }
  bool operator==(RunMetrics const &) const = default;
};

/// Streaming fold from rounds to RunMetrics.
class MetricsAccumulator
{
public:
  MetricsAccumulator(std::uint64_t seed, double audit_prob_min);

  void add(RoundRecord const &record);
  RunMetrics const &metrics() const { return metrics_; }

  /// Convergence round plus horizon, or nullopt before convergence.
  std::optional<std::size_t> stop_round(std::size_t horizon) const;

private:
  RunMetrics metrics_;
  double audit_prob_min_;
};

RunMetrics compute_metrics(std::span<RoundRecord const> records, std::uint64_t seed,
                           double audit_prob_min);

using RoundObserver = std::function<void(RoundRecord const &)>;

struct RunResult
{
  std::vector<RoundRecord> records;
  RunMetrics metrics;
};

/// Simulates one instantiation until convergence + horizon or max_rounds.
/// Each round is handed to the observer as it completes.
RunMetrics run_single(ScenarioConfig const &config, std::uint64_t seed,
                      RoundObserver const &observer);

/// As above, keeping every round.
RunResult run_single(ScenarioConfig const &config, std::uint64_t seed);

struct MetricStats
{
  std::size_t count{0};
  double min{0.0};
  double max{0.0};
  double mean{0.0};
  double median{0.0};
  double q1{0.0};
  double q3{0.0};
  // Population standard deviation.
  double stddev{0.0};

  bool operator==(MetricStats const &) const = default;
};

/// Order statistics use linear interpolation between closest ranks.
MetricStats summarize(std::vector<double> values);

/// Statistics over the converged runs. Runs hitting max_rounds are tallied
/// separately in not_converged.
struct AggregateStats
{
  std::size_t num_instantiations{0};
  std::size_t converged{0};
  std::size_t not_converged{0};
  std::size_t violated{0};
  MetricStats convergence_round;
  MetricStats audits_to_convergence;
  MetricStats incorrect_before_convergence;
  MetricStats incorrect_after_convergence;
  MetricStats empty_rounds_after_convergence;

  bool operator==(AggregateStats const &) const = default;
};

AggregateStats aggregate(std::span<RunMetrics const> runs);

struct BatchOptions
{
  std::size_t parallel{1};
  bool keep_traces{false};
};

struct BatchResult
{
  std::vector<RunMetrics> runs;  // seed order
  AggregateStats stats;
  std::vector<std::vector<RoundRecord>> traces;  // filled when keep_traces
};

/// num_instantiations runs with seeds base_seed + k, k = 0..num_instantiations-1.
BatchResult run_batch(ScenarioConfig const &config, BatchOptions const &options = {});

struct Verdict
{
  enum class Status
  {
    Pass,
    Fail,
    // The theorem predicts failures with positive probability but none were sampled.
    Inconclusive,
    Inapplicable,
  };

  Status status{Status::Inapplicable};
  std::string reason;
  std::size_t runs{0};
  std::size_t converged{0};
  std::size_t violating{0};  // converged runs with a post-convergence violation

  double violating_fraction() const
  {
    return converged == 0 ? 0.0 : static_cast<double>(violating) / static_cast<double>(converged);
  }
};

std::string_view to_string(Verdict::Status status);

/// Altruistic/malicious pool with a fully available altruist under LINEAR or
/// EXPONENTIAL truthfulness: every converged run must be violation-free.
Verdict check_theorem_1(ScenarioConfig const &config, std::size_t parallel = 1);

/// Same pool under BOINC. Fewer than n partially available altruists: every
/// converged run must be violation-free. Otherwise some runs are expected to
/// violate; the fraction is reported, and no sampled violation is Inconclusive.
Verdict check_theorem_2(ScenarioConfig const &config, std::size_t parallel = 1);

}  // namespace volrep
