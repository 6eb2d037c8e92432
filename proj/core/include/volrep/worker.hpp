#pragma once

#include "volrep/model.hpp"
#include "volrep/random_stream.hpp"

namespace volrep {

enum class ReplyValue
{
  Correct,
  Wrong,
};

/// What a worker sent back. Every cheater returns the same wrong value, so a
/// reply is wrong exactly when the worker cheated.
struct Reply
{
  WorkerId worker_id{0};
  ReplyValue value{ReplyValue::Correct};
  bool was_cheat{false};

  bool operator==(Reply const &) const = default;
};

class WorkerState
{
public:
  explicit WorkerState(WorkerSpec spec);

  WorkerSpec const &spec() const { return spec_; }
  WorkerId id() const { return spec_.worker_id; }
  WorkerType type() const { return spec_.worker_type; }

  /// Current p_C. Fixed at 0 for altruistic and 1 for malicious workers.
  double cheat_prob() const { return cheat_prob_; }

  /// Only meaningful for rational workers; clamps to [0, 1].
  void set_cheat_prob(double p);

  /// Replaces the aspiration (used for per-run jitter).
  void set_aspiration(double aspiration) { spec_.aspiration = aspiration; }

private:
  WorkerSpec spec_;
  double cheat_prob_;
};

/// One Bernoulli(availability) draw: whether the master gets a reply this round.
bool draw_availability(WorkerState const &state, RandomStream &rng);

/// Rational workers consume one draw; altruistic and malicious workers consume none.
Reply produce_reply(WorkerState const &state, RandomStream &rng);

/// Aspiration-driven reinforcement of a rational worker's cheating probability.
/// A cheater moves by +alpha (payoff - a); an honest worker moves by
/// -alpha (payoff - WCt - a). The result is clamped to [0, 1].
WorkerState update_cheat_prob(WorkerState state, double payoff, bool did_cheat,
                              PayoffParams const &params, double learning_rate);

/// The learning rate a worker uses: its own override or the shared rate.
double effective_learning_rate(WorkerSpec const &spec, MechanismParams const &mechanism);

}  // namespace volrep
