#include "volrep/model.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace volrep {

namespace {

void error(std::vector<Diagnostic> &out, std::string field, std::string message)
{
  out.push_back({Diagnostic::Severity::Error, std::move(field), std::move(message)});
}

void warning(std::vector<Diagnostic> &out, std::string field, std::string message)
{
  out.push_back({Diagnostic::Severity::Warning, std::move(field), std::move(message)});
}

bool is_probability(double p)
{
  return p >= 0.0 && p <= 1.0;
}

std::string lowercase(std::string_view text)
{
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::vector<Diagnostic> validate_config(ScenarioConfig const &config)
{
  std::vector<Diagnostic> out;
  auto const &mech = config.mechanism;
  auto const &pay  = config.payoffs;

  if (mech.pool_size_N == 0)
  {
    error(out, "mechanism.pool_size_N", "pool_size_N must be > 0");
  }
  if (mech.select_n == 0)
  {
    error(out, "mechanism.select_n", "select_n must be > 0");
  }
  if (mech.selection_policy == SelectionPolicy::Reputation && mech.select_n >= mech.pool_size_N)
  {
    error(out, "mechanism.select_n", "select_n must be < pool_size_N under REPUTATION selection");
  }
  else if (mech.select_n > mech.pool_size_N)
  {
    error(out, "mechanism.select_n", "select_n must be <= pool_size_N");
  }
  if (!(mech.audit_prob_min > 0.0 && mech.audit_prob_min <= 1.0))
  {
    error(out, "mechanism.audit_prob_min", "audit_prob_min must be in (0, 1]");
  }
  if (!(mech.audit_prob_initial >= mech.audit_prob_min && mech.audit_prob_initial <= 1.0))
  {
    error(out, "mechanism.audit_prob_initial",
          "audit_prob_initial must be in [audit_prob_min, 1]");
  }
  if (!is_probability(mech.tolerance_tau))
  {
    error(out, "mechanism.tolerance_tau", "tolerance_tau must be in [0, 1]");
  }
  if (!(mech.master_learning_rate_alpha_m > 0.0))
  {
    error(out, "mechanism.master_learning_rate_alpha_m", "master learning rate must be > 0");
  }
  if (!(mech.worker_learning_rate_alpha_w > 0.0))
  {
    error(out, "mechanism.worker_learning_rate_alpha_w", "worker learning rate must be > 0");
  }
  if (mech.reputation_type == ReputationType::Exponential &&
      !(mech.exponential_base_epsilon > 0.0 && mech.exponential_base_epsilon < 1.0))
  {
    error(out, "mechanism.exponential_base_epsilon", "exponential_base_epsilon must be in (0, 1)");
  }

  if (!(pay.punishment_WPc >= 0.0))
  {
    error(out, "payoffs.punishment_WPc", "punishment_WPc must be >= 0");
  }
  if (!(pay.task_cost_WCt >= 0.0))
  {
    error(out, "payoffs.task_cost_WCt", "task_cost_WCt must be >= 0");
  }
  if (!(pay.reward_WBy >= 0.0))
  {
    error(out, "payoffs.reward_WBy", "reward_WBy must be >= 0");
  }

  if (config.num_instantiations == 0)
  {
    error(out, "num_instantiations", "num_instantiations must be > 0");
  }
  if (config.max_rounds == 0)
  {
    error(out, "max_rounds", "max_rounds must be > 0");
  }
  if (config.post_convergence_horizon == 0)
  {
    error(out, "post_convergence_horizon", "post_convergence_horizon must be > 0");
  }
  if (!(config.aspiration_spread >= 0.0))
  {
    error(out, "aspiration_spread", "aspiration_spread must be >= 0");
  }

  if (config.workers.size() != mech.pool_size_N)
  {
    error(out, "workers", "number of workers must equal pool_size_N");
  }

  std::vector<bool> seen(config.workers.size(), false);
  double max_aspiration = 0.0;
  for (std::size_t k = 0; k < config.workers.size(); ++k)
  {
    auto const &w          = config.workers[k];
    std::string const path = "workers[" + std::to_string(k) + "]";
    if (w.worker_id >= config.workers.size() || seen[w.worker_id])
    {
      error(out, path + ".worker_id", "worker ids must be distinct and dense in [0, N)");
    }
    else
    {
      seen[w.worker_id] = true;
    }
    if (!(w.availability > 0.0 && w.availability <= 1.0))
    {
      error(out, path + ".availability", "availability must be > 0 and <= 1");
    }
    if (!(w.aspiration >= 0.0))
    {
      error(out, path + ".aspiration", "aspiration must be >= 0");
    }
    if (!is_probability(w.initial_cheat_prob))
    {
      error(out, path + ".initial_cheat_prob", "initial_cheat_prob must be in [0, 1]");
    }
    if (w.learning_rate && !(*w.learning_rate > 0.0))
    {
      error(out, path + ".learning_rate", "learning_rate must be > 0");
    }
    max_aspiration = std::max(max_aspiration, w.aspiration + config.aspiration_spread);
  }

  if (pay.reward_WBy - pay.task_cost_WCt < max_aspiration)
  {
    warning(out, "payoffs",
            "participation condition violated: reward_WBy - task_cost_WCt < max aspiration");
  }
  return out;
}

bool has_errors(std::vector<Diagnostic> const &diagnostics)
{
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](Diagnostic const &d) {
    return d.severity == Diagnostic::Severity::Error;
  });
}

std::string_view to_string(WorkerType type)
{
  switch (type)
  {
  case WorkerType::Malicious:
    return "MALICIOUS";
  case WorkerType::Altruistic:
    return "ALTRUISTIC";
  case WorkerType::Rational:
    return "RATIONAL";
  }
  return "UNKNOWN";
}

std::string_view to_string(ReputationType type)
{
  switch (type)
  {
  case ReputationType::Linear:
    return "LINEAR";
  case ReputationType::Exponential:
    return "EXPONENTIAL";
  case ReputationType::Boinc:
    return "BOINC";
  }
  return "UNKNOWN";
}

std::string_view to_string(SelectionPolicy policy)
{
  switch (policy)
  {
  case SelectionPolicy::Reputation:
    return "REPUTATION";
  case SelectionPolicy::FixedRandom:
    return "FIXED_RANDOM";
  }
  return "UNKNOWN";
}

std::string to_string(Diagnostic const &diagnostic)
{
  std::string out = diagnostic.severity == Diagnostic::Severity::Error ? "error: " : "warning: ";
  out += diagnostic.field;
  out += ": ";
  out += diagnostic.message;
  return out;
}

std::optional<WorkerType> parse_worker_type(std::string_view text)
{
  auto const t = lowercase(text);
  if (t == "malicious")
    return WorkerType::Malicious;
  if (t == "altruistic")
    return WorkerType::Altruistic;
  if (t == "rational")
    return WorkerType::Rational;
  return std::nullopt;
}

std::optional<ReputationType> parse_reputation_type(std::string_view text)
{
  auto const t = lowercase(text);
  if (t == "linear" || t == "l")
    return ReputationType::Linear;
  if (t == "exponential" || t == "e")
    return ReputationType::Exponential;
  if (t == "boinc" || t == "b")
    return ReputationType::Boinc;
  return std::nullopt;
}

std::optional<SelectionPolicy> parse_selection_policy(std::string_view text)
{
  auto const t = lowercase(text);
  if (t == "reputation")
    return SelectionPolicy::Reputation;
  if (t == "fixed_random")
    return SelectionPolicy::FixedRandom;
  return std::nullopt;
}

}  // namespace volrep
