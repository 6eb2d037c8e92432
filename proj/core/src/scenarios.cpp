#include "volrep/scenarios.hpp"

#include <cmath>

namespace volrep {

namespace {

constexpr std::size_t kSelected = 5;

struct Ratio
{
  int rational;
  int malicious;
};

ScenarioPreset grid_preset(std::size_t pool_size, Ratio ratio)
{
  std::string name = "p" + std::to_string(pool_size) + "-r" + std::to_string(ratio.rational) +
                     "m" + std::to_string(ratio.malicious);
  // Rounded share of rational workers, never fewer than one.
  double const share = static_cast<double>(pool_size) * ratio.rational /
                       static_cast<double>(ratio.rational + ratio.malicious);
  auto const rational  = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(share)));
  auto const malicious = pool_size - rational;

  std::string description = "full availability, N=" + std::to_string(pool_size) + ", " +
                            std::to_string(rational) + " rational + " +
                            std::to_string(malicious) + " malicious, d=1";
  if (pool_size == kSelected)
  {
    description += " (n = N: every worker is selected every round)";
  }

  return {std::move(name), std::move(description),
          [pool_size, rational, malicious](PresetParams const &params) {
            std::vector<WorkerSpec> pool;
            add_workers(pool, rational, WorkerType::Rational, 1.0);
            add_workers(pool, malicious, WorkerType::Malicious, 1.0);
            auto config = baseline_config(std::move(pool), params);
            if (pool_size == kSelected)
            {
              // Reputation ranking is vacuous when the whole pool is selected.
              config.mechanism.selection_policy = SelectionPolicy::FixedRandom;
            }
            return config;
          }};
}

ScenarioPreset partial_preset(std::string name, std::string description, WorkerType type,
                              WorkerType rest_type)
{
  return {std::move(name), std::move(description), [type, rest_type](PresetParams const &p) {
            std::vector<WorkerSpec> pool;
            add_workers(pool, 1, type, 1.0);
            add_workers(pool, 8, rest_type, 0.5);
            return baseline_config(std::move(pool), p);
          }};
}

std::vector<ScenarioPreset> build_catalog()
{
  std::vector<ScenarioPreset> out;
  for (std::size_t pool : {5u, 9u, 99u})
  {
    for (Ratio ratio : {Ratio{5, 4}, Ratio{4, 5}, Ratio{1, 8}})
    {
      out.push_back(grid_preset(pool, ratio));
    }
  }

  out.push_back({"S1", "9 altruistic with d=1", [](PresetParams const &p) {
                   std::vector<WorkerSpec> pool;
                   add_workers(pool, 9, WorkerType::Altruistic, 1.0);
                   return baseline_config(std::move(pool), p);
                 }});
  out.push_back(partial_preset("S2", "1 altruistic with d=1 + 8 altruistic with d=0.5",
                               WorkerType::Altruistic, WorkerType::Altruistic));
  out.push_back(partial_preset("S3", "1 altruistic with d=1 + 8 malicious with d=0.5",
                               WorkerType::Altruistic, WorkerType::Malicious));
  out.push_back({"S4", "9 rational with d=1", [](PresetParams const &p) {
                   std::vector<WorkerSpec> pool;
                   add_workers(pool, 9, WorkerType::Rational, 1.0);
                   return baseline_config(std::move(pool), p);
                 }});
  out.push_back(partial_preset("S5", "1 rational with d=1 + 8 rational with d=0.5",
                               WorkerType::Rational, WorkerType::Rational));
  out.push_back(partial_preset("S6", "1 rational with d=1 + 8 malicious with d=0.5",
                               WorkerType::Rational, WorkerType::Malicious));
  return out;
}

}  // namespace

void add_workers(std::vector<WorkerSpec> &pool, std::size_t count, WorkerType type,
                 double availability)
{
  for (std::size_t k = 0; k < count; ++k)
  {
    WorkerSpec w;
    w.worker_id          = pool.size();
    w.worker_type        = type;
    w.availability       = availability;
    w.aspiration         = 0.1;
    w.initial_cheat_prob = 0.5;
    pool.push_back(w);
  }
}

ScenarioConfig baseline_config(std::vector<WorkerSpec> workers, PresetParams const &params)
{
  ScenarioConfig config;
  for (std::size_t k = 0; k < workers.size(); ++k)
  {
    workers[k].worker_id = k;
  }
  config.workers = std::move(workers);

  config.payoffs = PayoffParams{0.0, 0.1, 1.0};

  auto &m                        = config.mechanism;
  m.pool_size_N                  = config.workers.size();
  m.select_n                     = kSelected;
  m.audit_prob_initial           = params.audit_prob_initial;
  m.audit_prob_min               = 0.01;
  m.tolerance_tau                = 0.5;
  m.master_learning_rate_alpha_m = 0.1;
  m.worker_learning_rate_alpha_w = 0.1;
  m.reputation_type              = params.reputation;
  m.exponential_base_epsilon     = 0.5;
  m.selection_policy             = SelectionPolicy::Reputation;

  config.num_instantiations       = 100;
  config.max_rounds               = 50000;
  config.post_convergence_horizon = 500;
  config.base_seed                = 1;
  config.aspiration_spread        = 0.0;
  return config;
}

std::vector<ScenarioPreset> const &list_scenarios()
{
  static std::vector<ScenarioPreset> const catalog = build_catalog();
  return catalog;
}

std::optional<ScenarioPreset> find_scenario(std::string_view name)
{
  for (auto const &preset : list_scenarios())
  {
    if (preset.name == name)
    {
      return preset;
    }
  }
  return std::nullopt;
}

std::vector<PresetVariant> catalog_variants()
{
  std::vector<PresetVariant> out;
  for (auto const &preset : list_scenarios())
  {
    for (auto type : {ReputationType::Linear, ReputationType::Exponential, ReputationType::Boinc})
    {
      for (double pa : {0.5, 1.0})
      {
        out.push_back({preset.name, PresetParams{type, pa}});
      }
    }
  }
  return out;
}

}  // namespace volrep
