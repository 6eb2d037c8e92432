#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "volrep/model.hpp"
#include "volrep/random_stream.hpp"
#include "volrep/reputation.hpp"
#include "volrep/worker.hpp"

namespace volrep {

enum class AcceptedValue
{
  Correct,
  Wrong,
  // Nothing received and no audit: the master has no result this round.
  None,
};

std::string_view to_string(AcceptedValue value);

struct MasterState
{
  double audit_prob{0.5};
  std::vector<ReputationLedger> ledgers;
  MechanismParams params;
  PayoffParams payoffs;
  // Present only under SelectionPolicy::FixedRandom; sorted ascending.
  std::optional<std::vector<WorkerId>> fixed_selection;

  double truthfulness_of(WorkerId id) const;
  double reputation_of(WorkerId id) const;
};

/// Fresh master: audit_prob at its initial value, zeroed ledgers, and for
/// FixedRandom a uniformly drawn n-subset that is kept for the whole run.
MasterState make_master_state(MechanismParams const &params, PayoffParams const &payoffs,
                              RandomStream &rng);

struct RoundOutcome
{
  std::vector<WorkerId> selected;    // W^r, ascending
  std::vector<WorkerId> responders;  // R, ascending
  std::vector<Reply> replies;        // one per responder, same order
  bool audited{false};
  std::vector<WorkerId> cheaters_caught;  // F, empty unless audited
  AcceptedValue accepted_value{AcceptedValue::None};
  std::vector<WorkerId> rewarded;  // weighted-majority group when unaudited
  std::map<WorkerId, double> payoffs;
  double audit_prob_before{0.0};
  double audit_prob_after{0.0};
};

/// The n most reputable workers, ties broken uniformly at random, returned in
/// ascending id order. Under FixedRandom returns the frozen set.
std::vector<WorkerId> select_workers(MasterState const &state, RandomStream &rng);

/// One Bernoulli(audit_prob) draw.
bool decide_audit(MasterState const &state, RandomStream &rng);

struct MajorityDecision
{
  AcceptedValue value{AcceptedValue::None};
  std::vector<WorkerId> rewarded;
};

/// Accepts the reply value whose senders have the largest summed weight.
/// Ties between groups are broken uniformly at random (one draw, only on a tie).
MajorityDecision weighted_majority(std::span<Reply const> replies,
                                   std::span<double const> weights, RandomStream &rng);

/// weighted_majority with each sender weighted by its truthfulness reputation.
MajorityDecision accept_by_weighted_majority(std::span<Reply const> replies,
                                             MasterState const &state, RandomStream &rng);

/// Payoff for every selected worker. Non-responders get 0 (and are not
/// delivered anything). Requires audited, replies, cheaters_caught and
/// rewarded to be filled in.
std::map<WorkerId, double> apply_payoffs(RoundOutcome const &outcome,
                                         PayoffParams const &payoffs);

/// Audit-probability controller, evaluated on the ledgers as they were before
/// this round's audit outcomes are recorded.
double update_audit_prob(MasterState const &state, std::span<WorkerId const> responders,
                         std::span<WorkerId const> caught);

/// One full round: select, collect replies, audit or vote, update
/// reputations and audit probability, pay, and let rational workers learn.
/// Random draws happen in a fixed order so equal seeds give equal rounds.
RoundOutcome run_master_round(MasterState &state, std::span<WorkerState> workers,
                              RandomStream &rng);

}  // namespace volrep
