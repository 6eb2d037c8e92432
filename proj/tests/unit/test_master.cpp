#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "volrep/master.hpp"
#include "volrep/scenarios.hpp"

using namespace volrep;

namespace {

MechanismParams mechanism(std::size_t pool, std::size_t n,
                          ReputationType type = ReputationType::Linear)
{
  MechanismParams m;
  m.pool_size_N        = pool;
  m.select_n           = n;
  m.audit_prob_initial = 0.5;
  m.audit_prob_min     = 0.01;
  m.reputation_type    = type;
  return m;
}

PayoffParams const kPayoffs{0.0, 0.1, 1.0};

std::vector<WorkerState> pool_of(std::vector<WorkerSpec> const &specs)
{
  std::vector<WorkerState> out;
  for (auto const &s : specs)
  {
    out.emplace_back(s);
  }
  return out;
}

std::vector<Reply> replies_of(std::initializer_list<ReplyValue> values)
{
  std::vector<Reply> out;
  WorkerId id = 0;
  for (auto v : values)
  {
    out.push_back({id++, v, v == ReplyValue::Wrong});
  }
  return out;
}

}  // namespace

TEST_SUITE("master")
{
  TEST_CASE("first-round selection is uniform")
  {
    RandomStream rng(1);
    auto const state = make_master_state(mechanism(9, 5), kPayoffs, rng);
    std::vector<int> counts(9, 0);
    int const trials = 10000;
    for (int t = 0; t < trials; ++t)
    {
      auto const chosen = select_workers(state, rng);
      REQUIRE(chosen.size() == 5);
      REQUIRE(std::is_sorted(chosen.begin(), chosen.end()));
      for (auto id : chosen)
      {
        ++counts[id];
      }
    }
    for (int c : counts)
    {
      CHECK(std::abs(static_cast<double>(c) / trials - 5.0 / 9.0) <= 0.02);
    }
  }

  TEST_CASE("selection takes the strict top n")
  {
    RandomStream rng(2);
    auto state = make_master_state(mechanism(6, 2), kPayoffs, rng);
    // Linear truthfulness 1, 1, 0.2, 0.1, ~0 and ~0 with full responsiveness.
    state.ledgers[2] = {4, 4, 4, 0, 0};
    state.ledgers[3] = {9, 9, 9, 0, 0};
    state.ledgers[4] = {999, 999, 999, 0, 0};
    state.ledgers[5] = {999, 999, 999, 0, 0};
    CHECK(state.reputation_of(2) == doctest::Approx(0.2));
    CHECK(state.reputation_of(3) == doctest::Approx(0.1));
    for (int t = 0; t < 100; ++t)
    {
      CHECK(select_workers(state, rng) == std::vector<WorkerId>{0, 1});
    }
  }

  TEST_CASE("fixed random selection never changes")
  {
    RandomStream rng(3);
    auto m             = mechanism(9, 5);
    m.selection_policy = SelectionPolicy::FixedRandom;
    auto state         = make_master_state(m, kPayoffs, rng);
    REQUIRE(state.fixed_selection);
    CHECK(state.fixed_selection->size() == 5);
    auto const first = select_workers(state, rng);
    state.ledgers[first[0]] = {50, 1, 1, 0, 0};
    CHECK(select_workers(state, rng) == first);
  }

  TEST_CASE("audit decision")
  {
    RandomStream rng(4);
    auto state       = make_master_state(mechanism(9, 5), kPayoffs, rng);
    state.audit_prob = 1.0;
    for (int t = 0; t < 1000; ++t)
    {
      CHECK(decide_audit(state, rng));
    }
    state.audit_prob = 0.01;
    int const n      = 100000;
    int audits       = 0;
    for (int t = 0; t < n; ++t)
    {
      audits += decide_audit(state, rng) ? 1 : 0;
    }
    double const freq = static_cast<double>(audits) / n;
    CHECK(freq >= 0.007);
    CHECK(freq <= 0.013);

    RandomStream a(77), b(77);
    (void)decide_audit(state, a);
    (void)b.next_u64();
    CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("weighted majority")
  {
    RandomStream rng(5);
    auto const replies = replies_of({ReplyValue::Correct, ReplyValue::Correct, ReplyValue::Wrong});

    std::vector<double> const strong = {0.9, 0.8, 0.4};
    auto const d = weighted_majority(replies, strong, rng);
    CHECK(d.value == AcceptedValue::Correct);
    CHECK(d.rewarded == std::vector<WorkerId>{0, 1});

    std::vector<double> const flipped = {0.1, 0.1, 0.4};
    CHECK(weighted_majority(replies, flipped, rng).value == AcceptedValue::Wrong);

    CHECK(weighted_majority({}, {}, rng).value == AcceptedValue::None);
    CHECK(weighted_majority({}, {}, rng).rewarded.empty());

    auto const only_wrong = replies_of({ReplyValue::Wrong, ReplyValue::Wrong});
    std::vector<double> const zeros = {0.0, 0.0};
    CHECK(weighted_majority(only_wrong, zeros, rng).value == AcceptedValue::Wrong);
  }

  TEST_CASE("zero-weight tie is a fair coin")
  {
    RandomStream rng(6);
    auto const replies = replies_of({ReplyValue::Correct, ReplyValue::Wrong});
    std::vector<double> const zeros = {0.0, 0.0};
    int const n                     = 10000;
    int correct                     = 0;
    for (int t = 0; t < n; ++t)
    {
      correct += weighted_majority(replies, zeros, rng).value == AcceptedValue::Correct ? 1 : 0;
    }
    CHECK(std::abs(static_cast<double>(correct) / n - 0.5) <= 0.02);
  }

  TEST_CASE("weighted majority uses truthfulness from the ledgers")
  {
    RandomStream rng(8);
    auto state = make_master_state(mechanism(9, 5, ReputationType::Boinc), kPayoffs, rng);
    state.ledgers[0] = {20, 20, 12, 12, 12};
    auto const replies = replies_of({ReplyValue::Correct, ReplyValue::Wrong, ReplyValue::Wrong});
    CHECK(accept_by_weighted_majority(replies, state, rng).value == AcceptedValue::Correct);
  }

  TEST_CASE("scaling all weights preserves the decision")
  {
    RandomStream gen(9);
    for (int trial = 0; trial < 500; ++trial)
    {
      std::vector<Reply> replies;
      std::vector<double> weights;
      auto const count = 1 + gen.uniform_index(6);
      for (WorkerId id = 0; id < count; ++id)
      {
        auto const v = gen.bernoulli(0.5) ? ReplyValue::Correct : ReplyValue::Wrong;
        replies.push_back({id, v, v == ReplyValue::Wrong});
        weights.push_back(gen.bernoulli(0.2) ? 0.0 : gen.uniform01());
      }
      for (double scale : {0.125, 2.0, 1024.0})
      {
        std::vector<double> scaled;
        for (double w : weights)
        {
          scaled.push_back(w * scale);
        }
        RandomStream a(trial), b(trial);
        auto const base = weighted_majority(replies, weights, a);
        auto const sc   = weighted_majority(replies, scaled, b);
        CHECK(base.value == sc.value);
        CHECK(base.rewarded == sc.rewarded);
      }
    }
  }

  TEST_CASE("payoffs")
  {
    RoundOutcome o;
    o.selected = {0, 1, 2, 3};
    o.replies  = {{0, ReplyValue::Correct, false}, {1, ReplyValue::Wrong, true},
                  {2, ReplyValue::Correct, false}};
    o.responders = {0, 1, 2};

    o.audited         = true;
    o.cheaters_caught = {1};
    auto paid         = apply_payoffs(o, kPayoffs);
    CHECK(paid.at(0) == 1.0);
    CHECK(paid.at(1) == 0.0);
    CHECK(paid.at(3) == 0.0);
    PayoffParams const punishing{2.0, 0.1, 1.0};
    CHECK(apply_payoffs(o, punishing).at(1) == -2.0);

    o.audited = false;
    o.cheaters_caught.clear();
    o.rewarded = {0, 2};
    paid       = apply_payoffs(o, punishing);
    CHECK(paid.at(0) == 1.0);
    CHECK(paid.at(1) == 0.0);
    CHECK(paid.at(2) == 1.0);
    CHECK(paid.at(3) == 0.0);
  }

  TEST_CASE("audit probability controller")
  {
    RandomStream rng(10);
    auto state = make_master_state(mechanism(9, 5), kPayoffs, rng);
    std::vector<WorkerId> const responders = {0, 1, 2};
    std::vector<WorkerId> const none;

    state.audit_prob = 0.5;
    CHECK(update_audit_prob(state, responders, none) == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(update_audit_prob(state, responders, responders) ==
          doctest::Approx(0.55).epsilon(1e-12));
    state.audit_prob = 0.05;
    CHECK(update_audit_prob(state, responders, none) == 0.01);
    state.audit_prob = 0.98;
    CHECK(update_audit_prob(state, responders, responders) == 1.0);

    auto boinc = make_master_state(mechanism(9, 5, ReputationType::Boinc), kPayoffs, rng);
    boinc.audit_prob = 0.95;
    CHECK(update_audit_prob(boinc, responders, none) == 1.0);
    boinc.audit_prob = 0.5;
    CHECK(update_audit_prob(boinc, responders, none) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(update_audit_prob(boinc, none, none) == doctest::Approx(0.6).epsilon(1e-12));
  }

  TEST_CASE("audited S1 round")
  {
    auto const config = find_scenario("S1")->generator({});
    RandomStream rng(11);
    auto state   = make_master_state(config.mechanism, config.payoffs, rng);
    auto workers = pool_of(config.workers);
    RoundOutcome o;
    do
    {
      double const before = state.audit_prob;
      o                   = run_master_round(state, workers, rng);
      if (!o.audited)
      {
        CHECK(state.audit_prob == before);
      }
    } while (!o.audited);
    CHECK(o.cheaters_caught.empty());
    CHECK(o.accepted_value == AcceptedValue::Correct);
    CHECK(o.audit_prob_before - o.audit_prob_after == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(o.responders.size() == 5);
  }

  TEST_CASE("all-malicious unaudited round accepts WRONG")
  {
    std::vector<WorkerSpec> specs;
    add_workers(specs, 9, WorkerType::Malicious, 1.0);
    auto const config = baseline_config(specs, {});
    RandomStream rng(12);
    auto state   = make_master_state(config.mechanism, config.payoffs, rng);
    auto workers = pool_of(config.workers);
    for (int r = 0; r < 50; ++r)
    {
      auto const o = run_master_round(state, workers, rng);
      if (!o.audited)
      {
        CHECK(o.accepted_value == AcceptedValue::Wrong);
        CHECK(o.rewarded.size() == 5);
      }
    }
  }

  TEST_CASE("nobody replies, no audit: nothing accepted")
  {
    std::vector<WorkerSpec> specs;
    add_workers(specs, 9, WorkerType::Altruistic, 1e-12);
    auto config                         = baseline_config(specs, {});
    config.mechanism.audit_prob_initial = 0.01;
    RandomStream rng(13);
    auto state   = make_master_state(config.mechanism, config.payoffs, rng);
    auto workers = pool_of(config.workers);
    bool seen    = false;
    for (int r = 0; r < 20 && !seen; ++r)
    {
      auto const o = run_master_round(state, workers, rng);
      CHECK(o.responders.empty());
      if (!o.audited)
      {
        CHECK(o.accepted_value == AcceptedValue::None);
        CHECK(o.rewarded.empty());
        seen = true;
      }
    }
    CHECK(seen);
  }

  TEST_CASE("round invariants on mixed pools")
  {
    for (auto type : {ReputationType::Linear, ReputationType::Exponential, ReputationType::Boinc})
    {
      std::vector<WorkerSpec> specs;
      add_workers(specs, 3, WorkerType::Rational, 0.7);
      add_workers(specs, 3, WorkerType::Malicious, 0.5);
      add_workers(specs, 3, WorkerType::Altruistic, 0.9);
      auto const config = baseline_config(specs, {type, 0.5});
      RandomStream rng(14);
      auto state   = make_master_state(config.mechanism, config.payoffs, rng);
      auto workers = pool_of(config.workers);

      for (int r = 0; r < 2000; ++r)
      {
        auto const before = state.ledgers;
        double const pa   = state.audit_prob;
        auto const o      = run_master_round(state, workers, rng);

        REQUIRE(o.selected.size() == 5);
        CHECK(std::includes(o.selected.begin(), o.selected.end(), o.responders.begin(),
                            o.responders.end()));
        CHECK(std::includes(o.responders.begin(), o.responders.end(),
                            o.cheaters_caught.begin(), o.cheaters_caught.end()));
        if (o.audited)
        {
          CHECK(o.accepted_value == AcceptedValue::Correct);
        }
        else
        {
          CHECK(state.audit_prob == pa);
          CHECK(o.cheaters_caught.empty());
          if (o.responders.empty())
          {
            CHECK(o.accepted_value == AcceptedValue::None);
          }
        }
        CHECK(state.audit_prob >= config.mechanism.audit_prob_min);
        CHECK(state.audit_prob <= 1.0);

        for (WorkerId id = 0; id < 9; ++id)
        {
          bool const sel  = std::binary_search(o.selected.begin(), o.selected.end(), id);
          bool const resp = std::binary_search(o.responders.begin(), o.responders.end(), id);
          auto const &a   = before[id];
          auto const &b   = state.ledgers[id];
          CHECK(b.select_count == a.select_count + (sel ? 1 : 0));
          CHECK(b.reply_select_count == a.reply_select_count + (resp ? 1 : 0));
          CHECK(b.audit_reply_select_count ==
                a.audit_reply_select_count + (o.audited && resp ? 1 : 0));
          CHECK(is_consistent(b));
        }
        for (auto const &w : workers)
        {
          CHECK(w.cheat_prob() >= 0.0);
          CHECK(w.cheat_prob() <= 1.0);
        }
      }
    }
  }
}
