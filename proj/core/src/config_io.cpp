#include "volrep/config_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace volrep {

using nlohmann::json;

namespace {

template <typename T>
T required(json const &node, char const *key)
{
  if (!node.is_object() || !node.contains(key))
  {
    throw ConfigError(std::string("missing key '") + key + "'");
  }
  try
  {
    return node.at(key).get<T>();
  }
  catch (json::exception const &e)
  {
    throw ConfigError(std::string("bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T optional_or(json const &node, char const *key, T fallback)
{
  if (!node.contains(key))
  {
    return fallback;
  }
  return required<T>(node, key);
}

template <typename Enum, typename Parser>
Enum required_enum(json const &node, char const *key, Parser parse)
{
  auto const text = required<std::string>(node, key);
  auto const value = parse(text);
  if (!value)
  {
    throw ConfigError(std::string("unknown value '") + text + "' for '" + key + "'");
  }
  return *value;
}

json to_json(ScenarioConfig const &config)
{
  json workers = json::array();
  for (auto const &w : config.workers)
  {
    json node = {
        {"worker_id", w.worker_id},
        {"worker_type", to_string(w.worker_type)},
        {"availability", w.availability},
        {"aspiration", w.aspiration},
        {"initial_cheat_prob", w.initial_cheat_prob},
    };
    if (w.learning_rate)
    {
      node["learning_rate"] = *w.learning_rate;
    }
    workers.push_back(std::move(node));
  }

  auto const &p = config.payoffs;
  auto const &m = config.mechanism;
  return {
      {"workers", std::move(workers)},
      {"payoffs",
       {
           {"punishment_WPc", p.punishment_WPc},
           {"task_cost_WCt", p.task_cost_WCt},
           {"reward_WBy", p.reward_WBy},
       }},
      {"mechanism",
       {
           {"pool_size_N", m.pool_size_N},
           {"select_n", m.select_n},
           {"audit_prob_initial", m.audit_prob_initial},
           {"audit_prob_min", m.audit_prob_min},
           {"tolerance_tau", m.tolerance_tau},
           {"master_learning_rate_alpha_m", m.master_learning_rate_alpha_m},
           {"worker_learning_rate_alpha_w", m.worker_learning_rate_alpha_w},
           {"reputation_type", to_string(m.reputation_type)},
           {"exponential_base_epsilon", m.exponential_base_epsilon},
           {"selection_policy", to_string(m.selection_policy)},
       }},
      {"num_instantiations", config.num_instantiations},
      {"max_rounds", config.max_rounds},
      {"post_convergence_horizon", config.post_convergence_horizon},
      {"base_seed", config.base_seed},
      {"aspiration_spread", config.aspiration_spread},
  };
}

ScenarioConfig from_json(json const &root)
{
  if (!root.is_object())
  {
    throw ConfigError("config root must be an object");
  }
  ScenarioConfig config;

  auto const &workers = root.contains("workers") ? root.at("workers") : json();
  if (!workers.is_array())
  {
    throw ConfigError("'workers' must be an array");
  }
  for (auto const &node : workers)
  {
    WorkerSpec w;
    w.worker_id          = required<std::size_t>(node, "worker_id");
    w.worker_type        = required_enum<WorkerType>(node, "worker_type", parse_worker_type);
    w.availability       = required<double>(node, "availability");
    w.aspiration         = required<double>(node, "aspiration");
    w.initial_cheat_prob = optional_or<double>(node, "initial_cheat_prob", 0.0);
    if (node.contains("learning_rate") && !node.at("learning_rate").is_null())
    {
      w.learning_rate = required<double>(node, "learning_rate");
    }
    config.workers.push_back(w);
  }

  auto const &p                  = root.contains("payoffs") ? root.at("payoffs") : json();
  config.payoffs.punishment_WPc  = required<double>(p, "punishment_WPc");
  config.payoffs.task_cost_WCt   = required<double>(p, "task_cost_WCt");
  config.payoffs.reward_WBy      = required<double>(p, "reward_WBy");

  auto const &m = root.contains("mechanism") ? root.at("mechanism") : json();
  auto &mech    = config.mechanism;
  mech.pool_size_N                  = required<std::size_t>(m, "pool_size_N");
  mech.select_n                     = required<std::size_t>(m, "select_n");
  mech.audit_prob_initial           = required<double>(m, "audit_prob_initial");
  mech.audit_prob_min               = required<double>(m, "audit_prob_min");
  mech.tolerance_tau                = required<double>(m, "tolerance_tau");
  mech.master_learning_rate_alpha_m = required<double>(m, "master_learning_rate_alpha_m");
  mech.worker_learning_rate_alpha_w = required<double>(m, "worker_learning_rate_alpha_w");
  mech.reputation_type =
      required_enum<ReputationType>(m, "reputation_type", parse_reputation_type);
  mech.exponential_base_epsilon = optional_or<double>(m, "exponential_base_epsilon", 0.5);
  mech.selection_policy =
      m.contains("selection_policy")
          ? required_enum<SelectionPolicy>(m, "selection_policy", parse_selection_policy)
          : SelectionPolicy::Reputation;

  config.num_instantiations       = required<std::size_t>(root, "num_instantiations");
  config.max_rounds               = required<std::size_t>(root, "max_rounds");
  config.post_convergence_horizon = required<std::size_t>(root, "post_convergence_horizon");
  config.base_seed                = required<std::uint64_t>(root, "base_seed");
  config.aspiration_spread        = optional_or<double>(root, "aspiration_spread", 0.0);
  return config;
}

json parse_json(std::string_view text)
{
  try
  {
    return json::parse(text.begin(), text.end());
  }
  catch (json::parse_error const &e)
  {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

}  // namespace

std::string serialize_config(ScenarioConfig const &config)
{
  return to_json(config).dump(2) + "\n";
}

ScenarioConfig parse_config(std::string_view text)
{
  return from_json(parse_json(text));
}

ScenarioConfig load_config(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot open config file " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void save_config(std::filesystem::path const &path, ScenarioConfig const &config)
{
  std::ofstream out(path);
  if (!out)
  {
    throw ConfigError("cannot write config file " + path.string());
  }
  out << serialize_config(config);
}

ScenarioConfig apply_override(ScenarioConfig const &config, std::string_view dotted_path,
                              std::string_view value)
{
  json root = to_json(config);

  json parsed;
  try
  {
    parsed = json::parse(value.begin(), value.end());
  }
  catch (json::parse_error const &)
  {
    parsed = std::string(value);
  }

  std::string pointer;
  std::size_t start = 0;
  while (start <= dotted_path.size())
  {
    auto const dot = dotted_path.find('.', start);
    auto const end = dot == std::string_view::npos ? dotted_path.size() : dot;
    pointer += '/';
    pointer += dotted_path.substr(start, end - start);
    start = end + 1;
  }

  json::json_pointer const ptr(pointer);
  if (!root.contains(ptr))
  {
    throw ConfigError("unknown config field '" + std::string(dotted_path) + "'");
  }
  root[ptr] = parsed;
  return from_json(root);
}

}  // namespace volrep
