#include "volrep/reputation.hpp"

#include <cmath>

namespace volrep {

double responsiveness(ReputationLedger const &ledger)
{
  return static_cast<double>(ledger.reply_select_count + 1) /
         static_cast<double>(ledger.select_count + 1);
}

double truthfulness(ReputationLedger const &ledger, ReputationType type, double epsilon)
{
  switch (type)
  {
  case ReputationType::Linear:
    return static_cast<double>(ledger.correct_audit_count + 1) /
           static_cast<double>(ledger.audit_reply_select_count + 1);
  case ReputationType::Exponential:
    return std::pow(epsilon, static_cast<double>(ledger.audit_reply_select_count -
                                                 ledger.correct_audit_count));
  case ReputationType::Boinc:
    if (ledger.streak < kBoincStreakThreshold)
    {
      return 0.0;
    }
    return 1.0 - 1.0 / static_cast<double>(ledger.streak);
  }
  return 0.0;
}

double combined_reputation(ReputationLedger const &ledger, ReputationType type, double epsilon)
{
  return responsiveness(ledger) * truthfulness(ledger, type, epsilon);
}

ReputationLedger record_selection(ReputationLedger ledger)
{
  ++ledger.select_count;
  return ledger;
}

ReputationLedger record_reply(ReputationLedger ledger)
{
  ++ledger.reply_select_count;
  return ledger;
}

ReputationLedger record_audit_outcome(ReputationLedger ledger, bool was_truthful)
{
  ++ledger.audit_reply_select_count;
  if (was_truthful)
  {
    ++ledger.correct_audit_count;
    ++ledger.streak;
  }
  else
  {
    ledger.streak = 0;
  }
  return ledger;
}

bool is_consistent(ReputationLedger const &ledger)
{
  return ledger.streak <= ledger.correct_audit_count &&
         ledger.correct_audit_count <= ledger.audit_reply_select_count &&
         ledger.audit_reply_select_count <= ledger.reply_select_count &&
         ledger.reply_select_count <= ledger.select_count;
}

}  // namespace volrep
