#pragma once

#include <cstdint>

#include "volrep/model.hpp"

namespace volrep {

/// Per-worker interaction counters kept by the master. Every reputation value
/// is a pure function of these counters, so all truthfulness types can be
/// evaluated on one shared history.
struct ReputationLedger
{
  std::uint64_t select_count{0};
  std::uint64_t reply_select_count{0};
  std::uint64_t audit_reply_select_count{0};
  std::uint64_t correct_audit_count{0};
  // Audited truthful replies since the last audited cheat.
  std::uint64_t streak{0};

  bool operator==(ReputationLedger const &) const = default;
};

/// Minimum streak before BOINC truthfulness becomes positive.
inline constexpr std::uint64_t kBoincStreakThreshold = 10;

/// (replies + 1) / (selections + 1).
double responsiveness(ReputationLedger const &ledger);

double truthfulness(ReputationLedger const &ledger, ReputationType type, double epsilon);

double combined_reputation(ReputationLedger const &ledger, ReputationType type, double epsilon);

ReputationLedger record_selection(ReputationLedger ledger);
ReputationLedger record_reply(ReputationLedger ledger);
ReputationLedger record_audit_outcome(ReputationLedger ledger, bool was_truthful);

/// Counter ordering: streak <= correct <= audited <= replies <= selections.
bool is_consistent(ReputationLedger const &ledger);

}  // namespace volrep
