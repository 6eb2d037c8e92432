#include "volrep/master.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <tuple>

namespace volrep {

namespace {

// Ranks every worker by (key desc, random tiebreak) and returns the first n
// in ascending id order.
std::vector<WorkerId> top_n(std::vector<double> const &keys, std::size_t n, RandomStream &rng)
{
  std::size_t const pool = keys.size();
  std::vector<std::uint64_t> tiebreak(pool);
  for (auto &t : tiebreak)
  {
    t = rng.next_u64();
  }
  std::vector<WorkerId> order(pool);
  std::iota(order.begin(), order.end(), WorkerId{0});
  std::sort(order.begin(), order.end(), [&](WorkerId a, WorkerId b) {
    return std::tuple(-keys[a], tiebreak[a], a) < std::tuple(-keys[b], tiebreak[b], b);
  });
  order.resize(std::min(n, pool));
  std::sort(order.begin(), order.end());
  return order;
}

}  // namespace

std::string_view to_string(AcceptedValue value)
{
  switch (value)
  {
  case AcceptedValue::Correct:
    return "CORRECT";
  case AcceptedValue::Wrong:
    return "WRONG";
  case AcceptedValue::None:
    return "NONE";
  }
  return "UNKNOWN";
}

double MasterState::truthfulness_of(WorkerId id) const
{
  return truthfulness(ledgers[id], params.reputation_type, params.exponential_base_epsilon);
}

double MasterState::reputation_of(WorkerId id) const
{
  return combined_reputation(ledgers[id], params.reputation_type,
                             params.exponential_base_epsilon);
}

MasterState make_master_state(MechanismParams const &params, PayoffParams const &payoffs,
                              RandomStream &rng)
{
  MasterState state;
  state.audit_prob = params.audit_prob_initial;
  state.ledgers.assign(params.pool_size_N, ReputationLedger{});
  state.params  = params;
  state.payoffs = payoffs;
  if (params.selection_policy == SelectionPolicy::FixedRandom)
  {
    std::vector<double> const equal(params.pool_size_N, 0.0);
    state.fixed_selection = top_n(equal, params.select_n, rng);
  }
  return state;
}

std::vector<WorkerId> select_workers(MasterState const &state, RandomStream &rng)
{
  if (state.fixed_selection)
  {
    return *state.fixed_selection;
  }
  std::vector<double> rho(state.ledgers.size());
  for (WorkerId id = 0; id < rho.size(); ++id)
  {
    rho[id] = state.reputation_of(id);
  }
  return top_n(rho, state.params.select_n, rng);
}

bool decide_audit(MasterState const &state, RandomStream &rng)
{
  return rng.bernoulli(state.audit_prob);
}

MajorityDecision weighted_majority(std::span<Reply const> replies,
                                   std::span<double const> weights, RandomStream &rng)
{
  assert(replies.size() == weights.size());
  if (replies.empty())
  {
    return {};
  }

  bool has_correct     = false;
  bool has_wrong       = false;
  double correct_total = 0.0;
  double wrong_total   = 0.0;
  for (std::size_t k = 0; k < replies.size(); ++k)
  {
    if (replies[k].value == ReplyValue::Correct)
    {
      has_correct = true;
      correct_total += weights[k];
    }
    else
    {
      has_wrong = true;
      wrong_total += weights[k];
    }
  }

  ReplyValue winner;
  if (!has_wrong)
  {
    winner = ReplyValue::Correct;
  }
  else if (!has_correct)
  {
    winner = ReplyValue::Wrong;
  }
  else if (correct_total != wrong_total)
  {
    winner = correct_total > wrong_total ? ReplyValue::Correct : ReplyValue::Wrong;
  }
  else
  {
    winner = rng.uniform_index(2) == 0 ? ReplyValue::Correct : ReplyValue::Wrong;
  }

  MajorityDecision decision;
  decision.value = winner == ReplyValue::Correct ? AcceptedValue::Correct : AcceptedValue::Wrong;
  for (auto const &r : replies)
  {
    if (r.value == winner)
    {
      decision.rewarded.push_back(r.worker_id);
    }
  }
  return decision;
}

MajorityDecision accept_by_weighted_majority(std::span<Reply const> replies,
                                             MasterState const &state, RandomStream &rng)
{
  std::vector<double> weights;
  weights.reserve(replies.size());
  for (auto const &r : replies)
  {
    weights.push_back(state.truthfulness_of(r.worker_id));
  }
  return weighted_majority(replies, weights, rng);
}

std::map<WorkerId, double> apply_payoffs(RoundOutcome const &outcome,
                                         PayoffParams const &payoffs)
{
  std::map<WorkerId, double> out;
  for (auto id : outcome.selected)
  {
    out[id] = 0.0;
  }
  for (auto const &reply : outcome.replies)
  {
    double pay = 0.0;
    if (outcome.audited)
    {
      pay = reply.was_cheat ? -payoffs.punishment_WPc : payoffs.reward_WBy;
    }
    else if (std::binary_search(outcome.rewarded.begin(), outcome.rewarded.end(),
                                reply.worker_id))
    {
      pay = payoffs.reward_WBy;
    }
    out[reply.worker_id] = pay;
  }
  return out;
}

double update_audit_prob(MasterState const &state, std::span<WorkerId const> responders,
                         std::span<WorkerId const> caught)
{
  double responders_total = 0.0;
  for (auto id : responders)
  {
    responders_total += state.truthfulness_of(id);
  }
  double caught_total = 0.0;
  for (auto id : caught)
  {
    caught_total += state.truthfulness_of(id);
  }

  auto const &p = state.params;
  if (responders_total == 0.0)
  {
    return std::min(1.0, state.audit_prob + p.master_learning_rate_alpha_m);
  }
  double const proposed =
      state.audit_prob +
      p.master_learning_rate_alpha_m * (caught_total / responders_total - p.tolerance_tau);
  return std::min(1.0, std::max(p.audit_prob_min, proposed));
}

RoundOutcome run_master_round(MasterState &state, std::span<WorkerState> workers,
                              RandomStream &rng)
{
  RoundOutcome outcome;
  outcome.audit_prob_before = state.audit_prob;

  outcome.selected = select_workers(state, rng);
  for (auto id : outcome.selected)
  {
    state.ledgers[id] = record_selection(state.ledgers[id]);
  }

  for (auto id : outcome.selected)
  {
    auto const &worker = workers[id];
    if (!draw_availability(worker, rng))
    {
      continue;
    }
    outcome.responders.push_back(id);
    outcome.replies.push_back(produce_reply(worker, rng));
    state.ledgers[id] = record_reply(state.ledgers[id]);
  }

  outcome.audited = decide_audit(state, rng);
  if (outcome.audited)
  {
    outcome.accepted_value = AcceptedValue::Correct;
    for (auto const &reply : outcome.replies)
    {
      if (reply.was_cheat)
      {
        outcome.cheaters_caught.push_back(reply.worker_id);
      }
    }
    // Controller reads truthfulness from the ledgers before this audit is folded in.
    double const next_audit_prob =
        update_audit_prob(state, outcome.responders, outcome.cheaters_caught);
    for (auto const &reply : outcome.replies)
    {
      state.ledgers[reply.worker_id] =
          record_audit_outcome(state.ledgers[reply.worker_id], !reply.was_cheat);
    }
    state.audit_prob = next_audit_prob;
  }
  else
  {
    auto decision          = accept_by_weighted_majority(outcome.replies, state, rng);
    outcome.accepted_value = decision.value;
    outcome.rewarded       = std::move(decision.rewarded);
  }

  outcome.payoffs = apply_payoffs(outcome, state.payoffs);
  for (auto const &reply : outcome.replies)
  {
    auto &worker = workers[reply.worker_id];
    if (worker.type() == WorkerType::Rational)
    {
      worker = update_cheat_prob(worker, outcome.payoffs.at(reply.worker_id), reply.was_cheat,
                                 state.payoffs,
                                 effective_learning_rate(worker.spec(), state.params));
    }
  }

  outcome.audit_prob_after = state.audit_prob;
  return outcome;
}

}  // namespace volrep
