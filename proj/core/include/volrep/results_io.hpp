#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "volrep/engine.hpp"

namespace volrep {

enum class OutputFormat
{
  Csv,
  JsonLines,
};

class OutputError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips, '.' separator regardless of locale.
std::string format_number(double value);

/// Column order of the per-run metrics file.
std::vector<std::string> const &run_metrics_columns();

void write_run_metrics(std::ostream &out, std::span<RunMetrics const> runs, OutputFormat format);

/// Inverse of write_run_metrics for CSV. Throws OutputError on malformed input.
std::vector<RunMetrics> read_run_metrics_csv(std::istream &in);

/// One row per round: round_index, audit_prob (after the round), audited,
/// accepted_value, num_replies, then id/type/cheat_prob/rho_rs/rho_tr for
/// each of the select_n selected workers.
void write_trace(std::ostream &out, std::span<RoundRecord const> records, std::size_t select_n,
                 OutputFormat format);

/// Writes runs.<ext> and, when traces are present, trace_<seed>.<ext> into
/// directory (created if missing). Returns the written paths.
std::vector<std::filesystem::path> emit_results(BatchResult const &batch, std::size_t select_n,
                                                std::filesystem::path const &directory,
                                                OutputFormat format);

/// Human-readable median / IQR table of the batch metrics.
std::string format_summary(AggregateStats const &stats);

}  // namespace volrep
