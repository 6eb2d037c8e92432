#include "cli.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "volrep/config_io.hpp"
#include "volrep/engine.hpp"
#include "volrep/results_io.hpp"
#include "volrep/scenarios.hpp"

namespace volrep::cli {

namespace {

struct CommonOptions
{
  std::string target;
  std::string reputation;
  std::optional<double> pa_init;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> runs;
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> max_rounds;
  std::vector<std::string> overrides;
};

void add_common(CLI::App &cmd, CommonOptions &opts)
{
  cmd.add_option("target", opts.target, "Scenario preset name or path to a JSON config")
      ->required();
  cmd.add_option("--reputation", opts.reputation, "Truthfulness reputation type")
      ->check(CLI::IsMember({"linear", "exponential", "boinc"}, CLI::ignore_case));
  cmd.add_option("--pa-init", opts.pa_init, "Initial audit probability");
  cmd.add_option("--seed", opts.seed, "Base seed (instantiation k uses seed + k)");
  cmd.add_option("--runs", opts.runs, "Number of instantiations");
  cmd.add_option("--horizon", opts.horizon, "Rounds simulated after convergence");
  cmd.add_option("--max-rounds", opts.max_rounds, "Round cap per instantiation");
  cmd.add_option("--set", opts.overrides,
                 "Override a config field by dotted path, e.g. mechanism.select_n=4");
}

std::string known_scenarios()
{
  std::string names;
  for (auto const &p : list_scenarios())
  {
    names += (names.empty() ? "" : ", ") + p.name;
  }
  return names;
}

// Resolves the target and applies every override. Throws ConfigError.
ScenarioConfig build_config(CommonOptions const &opts)
{
  ScenarioConfig config;
  PresetParams params;
  if (!opts.reputation.empty())
  {
    params.reputation = *parse_reputation_type(opts.reputation);
  }
  if (opts.pa_init)
  {
    params.audit_prob_initial = *opts.pa_init;
  }

  if (auto preset = find_scenario(opts.target))
  {
    config = preset->generator(params);
  }
  else if (std::filesystem::exists(opts.target))
  {
    config = load_config(opts.target);
    if (!opts.reputation.empty())
    {
      config.mechanism.reputation_type = params.reputation;
    }
    if (opts.pa_init)
    {
      config.mechanism.audit_prob_initial = *opts.pa_init;
    }
  }
  else
  {
    throw ConfigError("unknown scenario '" + opts.target + "'; valid names: " +
                      known_scenarios());
  }

  if (opts.seed)
    config.base_seed = *opts.seed;
  if (opts.runs)
    config.num_instantiations = *opts.runs;
  if (opts.horizon)
    config.post_convergence_horizon = *opts.horizon;
  if (opts.max_rounds)
    config.max_rounds = *opts.max_rounds;

  for (auto const &assignment : opts.overrides)
  {
    auto const eq = assignment.find('=');
    if (eq == std::string::npos)
    {
      throw ConfigError("override must look like path=value: '" + assignment + "'");
    }
    config = apply_override(config, assignment.substr(0, eq), assignment.substr(eq + 1));
  }
  return config;
}

// Prints diagnostics; true when the config is usable.
bool report_validation(ScenarioConfig const &config, std::ostream &err)
{
  auto const diagnostics = validate_config(config);
  for (auto const &d : diagnostics)
  {
    err << to_string(d) << '\n';
  }
  return !has_errors(diagnostics);
}

void print_catalog(std::ostream &out)
{
  for (auto const &preset : list_scenarios())
  {
    out << preset.name;
    for (std::size_t pad = preset.name.size(); pad < 10; ++pad)
    {
      out << ' ';
    }
    out << preset.description << '\n';
  }
  out << "\nEach preset runs under --reputation {linear,exponential,boinc} and --pa-init "
         "{0.5,1}; " << catalog_variants().size() << " combinations in total.\n";
}

}  // namespace

int run(std::vector<std::string> const &args, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Reputation-based master-worker volunteer computing simulator", "volrep"};
  app.require_subcommand(1);

  auto *list_cmd = app.add_subcommand("list", "List built-in scenario presets");

  CommonOptions run_opts;
  std::string out_dir = "results";
  std::string format  = "csv";
  bool trace          = false;
  std::size_t parallel = 1;
  auto *run_cmd = app.add_subcommand("run", "Run a batch of seeded instantiations");
  add_common(*run_cmd, run_opts);
  run_cmd->add_option("--out", out_dir, "Output directory")->capture_default_str();
  run_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  run_cmd->add_flag("--trace", trace, "Also write one per-round trace file per instantiation");
  run_cmd->add_option("--parallel", parallel, "Worker threads")->capture_default_str();

  CommonOptions config_opts;
  auto *config_cmd = app.add_subcommand("config", "Print the resolved config as JSON");
  add_common(*config_cmd, config_opts);

  CommonOptions check_opts;
  std::size_t check_parallel = 1;
  auto *check_cmd = app.add_subcommand(
      "check", "Run the eventual-correctness property check matching the reputation type");
  add_common(*check_cmd, check_opts);
  check_cmd->add_option("--parallel", check_parallel, "Worker threads");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try
  {
    app.parse(reversed);
  }
  catch (CLI::ParseError const &e)
  {
    std::ostringstream help_out;
    int const code = app.exit(e, help_out, help_out);
    (code == 0 ? out : err) << help_out.str();
    return code == 0 ? kOk : kUsageError;
  }

  if (*list_cmd)
  {
    print_catalog(out);
    return kOk;
  }

  CommonOptions const &opts = *run_cmd ? run_opts : (*config_cmd ? config_opts : check_opts);
  ScenarioConfig config;
  try
  {
    config = build_config(opts);
  }
  catch (ConfigError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
  if (!report_validation(config, err))
  {
    return kInvalidConfig;
  }

  if (*config_cmd)
  {
    out << serialize_config(config);
    return kOk;
  }

  if (*check_cmd)
  {
    auto const verdict = config.mechanism.reputation_type == ReputationType::Boinc
                             ? check_theorem_2(config, check_parallel)
                             : check_theorem_1(config, check_parallel);
    out << to_string(verdict.status) << ": " << verdict.reason << '\n'
        << "runs " << verdict.runs << ", converged " << verdict.converged << ", violating "
        << verdict.violating << " (fraction " << format_number(verdict.violating_fraction())
        << ")\n";
    return verdict.status == Verdict::Status::Fail ? kNoConvergence : kOk;
  }

  auto const batch = run_batch(config, BatchOptions{parallel, trace});
  try
  {
    auto const paths = emit_results(batch, config.mechanism.select_n, out_dir,
                                    format == "csv" ? OutputFormat::Csv : OutputFormat::JsonLines);
    out << format_summary(batch.stats);
    out << "wrote " << paths.front().string();
    if (paths.size() > 1)
    {
      out << " and " << paths.size() - 1 << " trace file(s)";
    }
    out << '\n';
  }
  catch (OutputError const &e)
  {
    err << "error: " << e.what() << '\n';
    return kOutputError;
  }

  if (batch.stats.converged == 0)
  {
    err << "error: no instantiation converged within " << config.max_rounds << " rounds\n";
    return kNoConvergence;
  }
  return kOk;
}

}  // namespace volrep::cli
