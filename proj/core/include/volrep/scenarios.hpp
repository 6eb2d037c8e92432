#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "volrep/model.hpp"

namespace volrep {

/// Knobs a preset is instantiated with. Everything else takes the baseline
/// values (a = 0.1, alpha = 0.1, tau = 0.5, p_A^min = 0.01, epsilon = 0.5,
/// WPc = 0, WCt = 0.1, WBy = 1, p_C = 0.5, n = 5, 100 instantiations).
struct PresetParams
{
  ReputationType reputation{ReputationType::Linear};
  double audit_prob_initial{0.5};
};

struct ScenarioPreset
{
  std::string name;
  std::string description;
  std::function<ScenarioConfig(PresetParams const &)> generator;
};

/// Baseline config for an explicit pool, worker ids assigned in order.
ScenarioConfig baseline_config(std::vector<WorkerSpec> workers, PresetParams const &params);

/// Appends count workers of one type and availability to a pool.
void add_workers(std::vector<WorkerSpec> &pool, std::size_t count, WorkerType type,
                 double availability);

/// Full-availability grid p5/p9/p99 x rational:malicious 5:4, 4:5, 1:8
/// (named like "p99-r1m8") followed by the partial-availability set S1..S6.
std::vector<ScenarioPreset> const &list_scenarios();

std::optional<ScenarioPreset> find_scenario(std::string_view name);

struct PresetVariant
{
  std::string name;
  PresetParams params;
};

/// Every preset under every reputation type and initial audit probability {0.5, 1}.
std::vector<PresetVariant> catalog_variants();

}  // namespace volrep
