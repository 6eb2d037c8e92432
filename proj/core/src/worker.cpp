#include "volrep/worker.hpp"

#include <algorithm>

namespace volrep {

namespace {

double initial_cheat_prob(WorkerSpec const &spec)
{
  switch (spec.worker_type)
  {
  case WorkerType::Malicious:
    return 1.0;
  case WorkerType::Altruistic:
    return 0.0;
  case WorkerType::Rational:
    return std::clamp(spec.initial_cheat_prob, 0.0, 1.0);
  }
  return 0.0;
}

}  // namespace

WorkerState::WorkerState(WorkerSpec spec)
  : spec_(spec)
  , cheat_prob_(initial_cheat_prob(spec))
{}

void WorkerState::set_cheat_prob(double p)
{
  if (spec_.worker_type == WorkerType::Rational)
  {
    cheat_prob_ = std::clamp(p, 0.0, 1.0);
  }
}

bool draw_availability(WorkerState const &state, RandomStream &rng)
{
  return rng.bernoulli(state.spec().availability);
}

Reply produce_reply(WorkerState const &state, RandomStream &rng)
{
  bool cheat = false;
  switch (state.type())
  {
  case WorkerType::Malicious:
    cheat = true;
    break;
  case WorkerType::Altruistic:
    cheat = false;
    break;
  case WorkerType::Rational:
    cheat = rng.bernoulli(state.cheat_prob());
    break;
  }
  return {state.id(), cheat ? ReplyValue::Wrong : ReplyValue::Correct, cheat};
}

WorkerState update_cheat_prob(WorkerState state, double payoff, bool did_cheat,
                              PayoffParams const &params, double learning_rate)
{
  if (state.type() != WorkerType::Rational)
  {
    return state;
  }
  double const aspiration = state.spec().aspiration;
  double const p          = state.cheat_prob();
  if (did_cheat)
  {
    state.set_cheat_prob(p + learning_rate * (payoff - aspiration));
  }
  else
  {
    state.set_cheat_prob(p - learning_rate * (payoff - params.task_cost_WCt - aspiration));
  }
  return state;
}

double effective_learning_rate(WorkerSpec const &spec, MechanismParams const &mechanism)
{
  return spec.learning_rate.value_or(mechanism.worker_learning_rate_alpha_w);
}

}  // namespace volrep
