#include "volrep/results_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace volrep {

namespace {

std::string optional_round(std::optional<std::size_t> const &value)
{
  return value ? std::to_string(*value) : std::string();
}

std::vector<std::string> split_csv_line(std::string const &line)
{
  std::vector<std::string> out;
  std::string cell;
  std::istringstream stream(line);
  while (std::getline(stream, cell, ','))
  {
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',')
  {
    out.emplace_back();
  }
  return out;
}

std::uint64_t parse_unsigned(std::string const &text, char const *column)
{
  std::uint64_t value = 0;
  auto const [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
  {
    throw OutputError(std::string("bad integer in column ") + column + ": '" + text + "'");
  }
  return value;
}

bool parse_bool(std::string const &text, char const *column)
{
  if (text == "1" || text == "true")
    return true;
  if (text == "0" || text == "false")
    return false;
  throw OutputError(std::string("bad boolean in column ") + column + ": '" + text + "'");
}

std::string extension(OutputFormat format)
{
  return format == OutputFormat::Csv ? ".csv" : ".jsonl";
}

}  // namespace

std::string format_number(double value)
{
  char buffer[64];
  auto const [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::vector<std::string> const &run_metrics_columns()
{
  static std::vector<std::string> const columns = {
      "seed",           "convergence_round", "audits_to_convergence", "incorrect_before",
      "incorrect_after", "empty_after",      "violated",              "not_converged",
  };
  return columns;
}

void write_run_metrics(std::ostream &out, std::span<RunMetrics const> runs, OutputFormat format)
{
  if (format == OutputFormat::Csv)
  {
    auto const &columns = run_metrics_columns();
    for (std::size_t k = 0; k < columns.size(); ++k)
    {
      out << (k ? "," : "") << columns[k];
    }
    out << '\n';
    for (auto const &m : runs)
    {
      out << m.seed << ',' << optional_round(m.convergence_round) << ','
          << m.audits_to_convergence << ',' << m.incorrect_before_convergence << ','
          << m.incorrect_after_convergence << ',' << m.empty_rounds_after_convergence << ','
          << (m.eventual_correctness_violated ? 1 : 0) << ',' << (m.converged() ? 0 : 1) << '\n';
    }
    return;
  }

  for (auto const &m : runs)
  {
    nlohmann::ordered_json row;
    row["seed"] = m.seed;
    row["convergence_round"] =
        m.convergence_round ? nlohmann::ordered_json(*m.convergence_round) : nullptr;
    row["audits_to_convergence"] = m.audits_to_convergence;
    row["incorrect_before"]      = m.incorrect_before_convergence;
    row["incorrect_after"]       = m.incorrect_after_convergence;
    row["empty_after"]           = m.empty_rounds_after_convergence;
    row["violated"]              = m.eventual_correctness_violated;
    row["not_converged"]         = !m.converged();
    out << row.dump() << '\n';
  }
}

std::vector<RunMetrics> read_run_metrics_csv(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line))
  {
    throw OutputError("empty metrics file");
  }
  auto const &columns = run_metrics_columns();
  if (split_csv_line(line) != columns)
  {
    throw OutputError("unexpected metrics header: " + line);
  }

  std::vector<RunMetrics> out;
  while (std::getline(in, line))
  {
    if (line.empty())
    {
      continue;
    }
    auto const cells = split_csv_line(line);
    if (cells.size() != columns.size())
    {
      throw OutputError("wrong number of cells in row: " + line);
    }
    RunMetrics m;
    m.seed = parse_unsigned(cells[0], "seed");
    if (!cells[1].empty())
    {
      m.convergence_round = parse_unsigned(cells[1], "convergence_round");
    }
    m.audits_to_convergence          = parse_unsigned(cells[2], "audits_to_convergence");
    m.incorrect_before_convergence   = parse_unsigned(cells[3], "incorrect_before");
    m.incorrect_after_convergence    = parse_unsigned(cells[4], "incorrect_after");
    m.empty_rounds_after_convergence = parse_unsigned(cells[5], "empty_after");
    m.eventual_correctness_violated  = parse_bool(cells[6], "violated");
    bool const not_converged         = parse_bool(cells[7], "not_converged");
    if (not_converged == m.convergence_round.has_value())
    {
      throw OutputError("not_converged disagrees with convergence_round: " + line);
    }
    out.push_back(m);
  }
  return out;
}

void write_trace(std::ostream &out, std::span<RoundRecord const> records, std::size_t select_n,
                 OutputFormat format)
{
  if (format == OutputFormat::Csv)
  {
    out << "round_index,audit_prob,audited,accepted_value,num_replies";
    for (std::size_t k = 0; k < select_n; ++k)
    {
      auto const p = "w" + std::to_string(k) + "_";
      out << ',' << p << "id," << p << "type," << p << "cheat_prob," << p << "rho_rs," << p
          << "rho_tr";
    }
    out << '\n';
    for (auto const &r : records)
    {
      auto const &o = r.outcome;
      out << r.round_index << ',' << format_number(o.audit_prob_after) << ','
          << (o.audited ? 1 : 0) << ',' << to_string(o.accepted_value) << ','
          << o.replies.size();
      for (std::size_t k = 0; k < select_n; ++k)
      {
        if (k < r.selected_snapshots.size())
        {
          auto const &s = r.selected_snapshots[k];
          out << ',' << s.worker_id << ',' << to_string(s.worker_type) << ','
              << format_number(s.cheat_prob) << ',' << format_number(s.rho_rs) << ','
              << format_number(s.rho_tr);
        }
        else
        {
          out << ",,,,,";
        }
      }
      out << '\n';
    }
    return;
  }

  for (auto const &r : records)
  {
    auto const &o = r.outcome;
    nlohmann::ordered_json row;
    row["round_index"]    = r.round_index;
    row["audit_prob"]     = o.audit_prob_after;
    row["audited"]        = o.audited;
    row["accepted_value"] = to_string(o.accepted_value);
    row["num_replies"]    = o.replies.size();
    auto selected         = nlohmann::ordered_json::array();
    for (auto const &s : r.selected_snapshots)
    {
      nlohmann::ordered_json w;
      w["id"]         = s.worker_id;
      w["type"]       = to_string(s.worker_type);
      w["cheat_prob"] = s.cheat_prob;
      w["rho_rs"]     = s.rho_rs;
      w["rho_tr"]     = s.rho_tr;
      selected.push_back(std::move(w));
    }
    row["selected"] = std::move(selected);
    out << row.dump() << '\n';
  }
}

std::vector<std::filesystem::path> emit_results(BatchResult const &batch, std::size_t select_n,
                                                std::filesystem::path const &directory,
                                                OutputFormat format)
{
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec)
  {
    throw OutputError("cannot create output directory " + directory.string() + ": " +
                      ec.message());
  }

  std::vector<std::filesystem::path> written;
  auto open = [&](std::filesystem::path const &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
    {
      throw OutputError("cannot write " + path.string());
    }
    return out;
  };

  auto const runs_path = directory / ("runs" + extension(format));
  {
    auto out = open(runs_path);
    write_run_metrics(out, batch.runs, format);
    if (!out)
    {
      throw OutputError("write failed for " + runs_path.string());
    }
  }
  written.push_back(runs_path);

  for (std::size_t k = 0; k < batch.traces.size(); ++k)
  {
    auto const path =
        directory / ("trace_" + std::to_string(batch.runs[k].seed) + extension(format));
    auto out = open(path);
    write_trace(out, batch.traces[k], select_n, format);
    if (!out)
    {
      throw OutputError("write failed for " + path.string());
    }
    written.push_back(path);
  }
  return written;
}

std::string format_summary(AggregateStats const &stats)
{
  std::ostringstream out;
  out << "runs: " << stats.num_instantiations << "  converged: " << stats.converged
      << "  not converged: " << stats.not_converged
      << "  eventual-correctness violated: " << stats.violated << '\n';

  auto row = [&](char const *label, MetricStats const &m) {
    out << "  " << label;
    for (std::size_t pad = std::string(label).size(); pad < 28; ++pad)
    {
      out << ' ';
    }
    out << "median " << format_number(m.median) << "  IQR [" << format_number(m.q1) << ", "
        << format_number(m.q3) << "]  mean " << format_number(m.mean) << "  min "
        << format_number(m.min) << "  max " << format_number(m.max) << '\n';
  };
  if (stats.converged > 0)
  {
    row("rounds to convergence", stats.convergence_round);
    row("audits to convergence", stats.audits_to_convergence);
    row("incorrect before conv.", stats.incorrect_before_convergence);
    row("incorrect after conv.", stats.incorrect_after_convergence);
    row("empty rounds after conv.", stats.empty_rounds_after_convergence);
  }
  return out.str();
}

}  // namespace volrep
