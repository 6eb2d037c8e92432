#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace volrep {

using WorkerId = std::size_t;

enum class WorkerType
{
  Malicious,
  Altruistic,
  Rational,
};

enum class ReputationType
{
  Linear,
  Exponential,
  Boinc,
};

enum class SelectionPolicy
{
  Reputation,
  // Draws one uniform n-subset at the start of a run and keeps it forever.
  FixedRandom,
};

struct WorkerSpec
{
  WorkerId worker_id{0};
  WorkerType worker_type{WorkerType::Altruistic};
  double availability{1.0};
  double aspiration{0.1};
  double initial_cheat_prob{0.5};
  // Overrides MechanismParams::worker_learning_rate_alpha_w for this worker.
  std::optional<double> learning_rate{};

  bool operator==(WorkerSpec const &) const = default;
};

struct PayoffParams
{
  double punishment_WPc{0.0};
  double task_cost_WCt{0.1};
  double reward_WBy{1.0};

  bool operator==(PayoffParams const &) const = default;
};

struct MechanismParams
{
  std::size_t pool_size_N{9};
  std::size_t select_n{5};
  double audit_prob_initial{0.5};
  double audit_prob_min{0.01};
  double tolerance_tau{0.5};
  double master_learning_rate_alpha_m{0.1};
  double worker_learning_rate_alpha_w{0.1};
  ReputationType reputation_type{ReputationType::Linear};
  double exponential_base_epsilon{0.5};
  SelectionPolicy selection_policy{SelectionPolicy::Reputation};

  bool operator==(MechanismParams const &) const = default;
};

struct ScenarioConfig
{
  std::vector<WorkerSpec> workers;
  PayoffParams payoffs;
  MechanismParams mechanism;
  std::size_t num_instantiations{100};
  std::size_t max_rounds{50000};
  std::size_t post_convergence_horizon{500};
  std::uint64_t base_seed{1};
  // Half-width of the per-run uniform jitter applied to every aspiration.
  double aspiration_spread{0.0};

  bool operator==(ScenarioConfig const &) const = default;
};

struct Diagnostic
{
  enum class Severity
  {
    Warning,
    Error,
  };

  Severity severity{Severity::Error};
  std::string field;
  std::string message;
};

/// Checks every structural and numeric invariant of a scenario. The
/// participation condition (WBy - WCt >= aspiration) only produces warnings.
std::vector<Diagnostic> validate_config(ScenarioConfig const &config);

bool has_errors(std::vector<Diagnostic> const &diagnostics);

std::string_view to_string(WorkerType type);
std::string_view to_string(ReputationType type);
std::string_view to_string(SelectionPolicy policy);
std::string to_string(Diagnostic const &diagnostic);

// Case-insensitive; return nullopt for unknown names.
std::optional<WorkerType> parse_worker_type(std::string_view text);
std::optional<ReputationType> parse_reputation_type(std::string_view text);
std::optional<SelectionPolicy> parse_selection_policy(std::string_view text);

}  // namespace volrep
