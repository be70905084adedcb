#include <doctest.h>

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "teamdp/beliefs.hpp"
#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/model.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/prescriptions.hpp"
#include "teamdp/rational.hpp"

using namespace teamdp;

namespace {

std::string fixture(const char* name) {
  return std::string(TEAMDP_SOURCE_DIR) + "/models/" + name;
}

// Everything funnels into m1 after one step, and agent 1 then observes the
// state exactly — so a stage-1 report of m0 is impossible.
constexpr const char* kFunnel = R"({
  "horizon": 1,
  "states": ["m0", "m1"],
  "actions1": ["a"],
  "actions2": ["b"],
  "obs1": [["o"], ["p0", "p1"]],
  "obs2": ["z"],
  "w": [[{"label": "e", "prob": 1}]],
  "v1": [[{"label": "e", "prob": 1}], [{"label": "e", "prob": 1}]],
  "v2": [[{"label": "e", "prob": 1}], [{"label": "e", "prob": 1}]],
  "x0": [{"label": "m0", "prob": "1/2"}, {"label": "m1", "prob": "1/2"}],
  "transition": [
    {"t": 0, "x": "m0", "u1": "a", "u2": "b", "w": "e", "next": "m1"},
    {"t": 0, "x": "m1", "u1": "a", "u2": "b", "w": "e", "next": "m1"}
  ],
  "obs_fn1": [
    {"t": 0, "x": "m0", "v": "e", "y": "o"},
    {"t": 0, "x": "m1", "v": "e", "y": "o"},
    {"t": 1, "x": "m0", "v": "e", "y": "p0"},
    {"t": 1, "x": "m1", "v": "e", "y": "p1"}
  ],
  "obs_fn2": [
    {"t": 0, "x": "m0", "v": "e", "y": "z"},
    {"t": 0, "x": "m1", "v": "e", "y": "z"},
    {"t": 1, "x": "m0", "v": "e", "y": "z"},
    {"t": 1, "x": "m1", "v": "e", "y": "z"}
  ],
  "cost": [
    {"t": 0, "x": "m0", "u1": "a", "u2": "b", "value": 0},
    {"t": 0, "x": "m1", "u1": "a", "u2": "b", "value": 1},
    {"t": 1, "x": "m0", "u1": "a", "u2": "b", "value": 0},
    {"t": 1, "x": "m1", "u1": "a", "u2": "b", "value": 1}
  ]
})";

Belief1 point(int x) {
  Belief1 b;
  b.p = {{x, Rational(1)}};
  return b;
}

// A final-stage joint belief on the maintenance model: agent 1's history
// pins the state down (g,g after keep -> up; b,b after keep -> down).
Belief2 split_terminal_belief() {
  Belief2 pi2;
  pi2.t = 1;
  PrivateHistory lg{{0, 0}, {0}};
  PrivateHistory lb{{1, 1}, {0}};
  pi2.p = {{0, lg, Rational(1, 2)}, {1, lb, Rational(1, 2)}};
  return pi2;
}

}  // namespace

TEST_CASE("final-stage best response per fixed agent-2 action") {
  TeamModel m = load_model(fixture("maintenance.json"));
  // up, run: keep is free, probe costs 1
  auto [v0, a0] = value_final_inner(m, point(0), 0);
  CHECK(v0 == Rational(0));
  CHECK(a0 == 0);
  // down, run: keep 6, probe 7
  auto [v1, a1] = value_final_inner(m, point(1), 0);
  CHECK(v1 == Rational(6));
  CHECK(a1 == 0);
  Belief1 half;
  half.p = {{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  auto [vh, ah] = value_final_inner(m, half, 1);  // halt: 2 everywhere, probe +1
  CHECK(vh == Rational(2));
  CHECK(ah == 0);
}

TEST_CASE("final-stage best response takes the lowest action on ties") {
  TeamModel m = load_model(fixture("maintenance.json"));
  // equalize the two agent-1 actions at stage 1 under run
  m.set_stage_cost(1, 0, 1, 0, Rational(0));
  m.set_stage_cost(1, 1, 1, 0, Rational(6));
  auto [v, a] = value_final_inner(m, point(0), 0);
  CHECK(v == Rational(0));
  CHECK(a == 0);
}

TEST_CASE("final-stage value minimizes the history-weighted total") {
  TeamModel m = load_model(fixture("maintenance.json"));
  Belief2 pi2 = split_terminal_belief();
  auto [value, dec] = value_final(m, pi2);
  // run: 0/2 + 6/2 = 3 ; halt: 2/2 + 2/2 = 2
  CHECK(value == Rational(2));
  CHECK(dec.u2 == 1);
  // agent 1's reply is recorded for every (belief, agent-2 action) pair
  REQUIRE(dec.u1_of.size() == 4);
  CHECK(dec.u1_of.at({point(0), 0}) == 0);
  CHECK(dec.u1_of.at({point(1), 0}) == 0);
  CHECK(dec.u1_of.at({point(0), 1}) == 0);
  CHECK(dec.u1_of.at({point(1), 1}) == 0);
}

TEST_CASE("solver value at a final belief routes through the two sub-steps") {
  TeamModel m = load_model(fixture("maintenance.json"));
  Solver s(m);
  const ValueCacheEntry& e = s.value(split_terminal_belief());
  CHECK(e.is_final);
  CHECK(e.value == Rational(2));
  CHECK(e.last.u2 == 1);
}

TEST_CASE("two-sub-step final stage equals joint minimization") {
  TeamModel m = load_model(fixture("maintenance.json"));
  FinalCheck c = final_stage_equivalence_check(m, split_terminal_belief());
  CHECK(c.match);
  CHECK(c.two_step == Rational(2));
  CHECK(c.direct == Rational(2));
  // and at every belief reachable in a full solve
  Solver s(m);
  SolvedPolicy p = s.solve();
  for (const auto& [pi2, entry] : p.nodes) {
    if (!entry.is_final) continue;
    FinalCheck r = final_stage_equivalence_check(m, pi2);
    CHECK(r.match);
  }
}

TEST_CASE("solver on trivial models") {
  TeamModel one = load_model(fixture("singleton.json"));
  CHECK(Solver(one).solve().value == Rational(3));

  TeamModel zero = load_model(fixture("maintenance.json"));
  for (int t = 0; t <= zero.horizon; ++t)
    for (int x = 0; x < zero.n_states(t); ++x)
      for (int u1 = 0; u1 < zero.n_u1(t); ++u1)
        for (int u2 = 0; u2 < zero.n_u2(t); ++u2) zero.set_stage_cost(t, x, u1, u2, Rational(0));
  CHECK(Solver(zero).solve().value == Rational(0));
}

TEST_CASE("solver reproduces a hand-computed blind-agents value") {
  // no one observes anything and there are no choices: the value is the
  // expected cost of the drift, 1/2 + (1/2 * 1/4 + 1/2) = 9/8
  TeamModel m = load_model_text(R"({
    "horizon": 1,
    "states": ["m0", "m1"],
    "actions1": ["a"],
    "actions2": ["b"],
    "obs1": ["o"],
    "obs2": ["z"],
    "w": [[{"label": "calm", "prob": "3/4"}, {"label": "storm", "prob": "1/4"}]],
    "v1": [[{"label": "e", "prob": 1}], [{"label": "e", "prob": 1}]],
    "v2": [[{"label": "e", "prob": 1}], [{"label": "e", "prob": 1}]],
    "x0": [{"label": "m0", "prob": "1/2"}, {"label": "m1", "prob": "1/2"}],
    "transition": [
      {"t": 0, "x": "m0", "u1": "a", "u2": "b", "w": "calm", "next": "m0"},
      {"t": 0, "x": "m0", "u1": "a", "u2": "b", "w": "storm", "next": "m1"},
      {"t": 0, "x": "m1", "u1": "a", "u2": "b", "w": "calm", "next": "m1"},
      {"t": 0, "x": "m1", "u1": "a", "u2": "b", "w": "storm", "next": "m1"}
    ],
    "obs_fn1": [
      {"t": 0, "x": "m0", "v": "e", "y": "o"},
      {"t": 0, "x": "m1", "v": "e", "y": "o"},
      {"t": 1, "x": "m0", "v": "e", "y": "o"},
      {"t": 1, "x": "m1", "v": "e", "y": "o"}
    ],
    "obs_fn2": [
      {"t": 0, "x": "m0", "v": "e", "y": "z"},
      {"t": 0, "x": "m1", "v": "e", "y": "z"},
      {"t": 1, "x": "m0", "v": "e", "y": "z"},
      {"t": 1, "x": "m1", "v": "e", "y": "z"}
    ],
    "cost": [
      {"t": 0, "x": "m0", "u1": "a", "u2": "b", "value": 0},
      {"t": 0, "x": "m1", "u1": "a", "u2": "b", "value": 1},
      {"t": 1, "x": "m0", "u1": "a", "u2": "b", "value": 0},
      {"t": 1, "x": "m1", "u1": "a", "u2": "b", "value": 1}
    ]
  })");
  CHECK(Solver(m).solve().value == Rational(9, 8));
}

TEST_CASE("solver matches the exhaustive oracle on the pinned model") {
  TeamModel m = load_model(fixture("maintenance.json"));
  Solver s(m);
  SolvedPolicy p = s.solve();
  CHECK(p.value == Rational(92, 27));  // pinned optimal value
  OracleResult r = brute_force_optimal(m, 1000000);
  CHECK(r.value == p.value);
  // the policy is realizable: unrolling it achieves the claimed value
  CHECK(evaluate_strategy(m, tabulate_policy(m, p)) == p.value);
  CHECK(p.fingerprint == model_fingerprint(m));
  CHECK(s.beliefs_expanded() > 0);
}

TEST_CASE("expected cost under a joint belief aggregates per-history costs") {
  // the reduced stage cost must equal the history-marginal mixture of
  // agent-1 reduced costs at the reconstructed beliefs
  TeamModel m = load_model(fixture("maintenance.json"));
  Belief2 b0 = initial_belief2(m, 0);
  PrescriptionSet set = enumerate_prescriptions(0, prescription_domain(b0), m.n_u1(0), 0);
  std::map<PrivateHistory, Rational> marg;
  for (const Belief2::Entry& e : b0.p) {
    auto [it, fresh] = marg.try_emplace(e.l, e.prob);
    if (!fresh) it->second += e.prob;
  }
  for (long i = 0; i < set.size(); ++i) {
    Prescription g = set.at(i);
    for (int u2 = 0; u2 < m.n_u2(0); ++u2) {
      Rational mixture(0);
      for (const auto& [l, w] : marg) {
        Belief1 pi1 = reconstruct_belief1(b0, l);
        mixture += w * reduced_cost1(m, 0, pi1, g.apply(pi1), u2);
      }
      CHECK(reduced_cost2(m, 0, b0, g, u2) == mixture);
    }
  }
}

TEST_CASE("solver bounds trip on demand") {
  TeamModel m = load_model(fixture("maintenance.json"));
  SolverBounds tight;
  tight.max_beliefs = 2;
  CHECK_THROWS_AS(Solver(m, tight).solve(), ResourceLimitError);
  SolverBounds narrow;
  narrow.max_prescriptions = 1;
  CHECK_THROWS_AS(Solver(m, narrow).solve(), ResourceLimitError);
}

TEST_CASE("policy text round-trips byte for byte") {
  TeamModel m = load_model(fixture("maintenance.json"));
  SolvedPolicy p = Solver(m).solve();
  std::string text = serialize_policy(m, p);
  CHECK(text.substr(0, 9) == "policy-v1");
  SolvedPolicy q = parse_policy(m, text);
  CHECK(q.value == p.value);
  CHECK(q.fingerprint == p.fingerprint);
  CHECK(q.nodes.size() == p.nodes.size());
  CHECK(serialize_policy(m, q) == text);
}

TEST_CASE("two independent solves serialize identically") {
  TeamModel m = load_model(fixture("maintenance.json"));
  std::string a = serialize_policy(m, Solver(m).solve());
  std::string b = serialize_policy(m, Solver(m).solve());
  CHECK(a == b);
}

TEST_CASE("policy parsing rejects foreign and damaged text") {
  TeamModel m = load_model(fixture("maintenance.json"));
  TeamModel other = load_model(fixture("singleton.json"));
  std::string text = serialize_policy(m, Solver(m).solve());
  CHECK_THROWS_AS(parse_policy(other, text), ValidationError);
  CHECK_THROWS_AS(parse_policy(m, "gibberish\n"), ParseError);
  CHECK_THROWS_AS(parse_policy(m, text + "node 99\n"), ParseError);
  std::string truncated = text.substr(0, text.size() / 2);
  CHECK_THROWS_AS(parse_policy(m, truncated), ParseError);
}

TEST_CASE("policy executor replays the solved maintenance policy") {
  TeamModel m = load_model(fixture("maintenance.json"));
  SolvedPolicy p = Solver(m).solve();
  for (int y1_0 = 0; y1_0 < 2; ++y1_0)
    for (int y2_0 = 0; y2_0 < 2; ++y2_0)
      for (int y1_1 = 0; y1_1 < 2; ++y1_1)
        for (int y2_1 = 0; y2_1 < 2; ++y2_1) {
          PolicyExecutor exec(m, p);
          CHECK(!exec.done());
          CHECK(exec.stage() == 0);
          auto [u1a, u2a] = exec.step(y1_0, y2_0);
          CHECK(u1a >= 0);
          CHECK(u1a < m.n_u1(0));
          CHECK(u2a >= 0);
          CHECK(u2a < m.n_u2(0));
          CHECK(exec.stage() == 1);
          auto [u1b, u2b] = exec.step(y1_1, y2_1);
          CHECK(u1b < m.n_u1(1));
          CHECK(u2b < m.n_u2(1));
          CHECK(exec.done());
        }
}

TEST_CASE("policy executor rejects impossible observations") {
  TeamModel m = load_model_text(kFunnel);
  SolvedPolicy p = Solver(m).solve();
  PolicyExecutor exec(m, p);
  exec.step(0, 0);
  // every state funnels into m1, which reports p1; p0 cannot happen
  CHECK_THROWS_AS(exec.step(0, 0), InconsistentTrajectoryError);
  PolicyExecutor ok(m, p);
  ok.step(0, 0);
  auto [u1, u2] = ok.step(1, 0);
  CHECK(u1 == 0);
  CHECK(u2 == 0);
}

TEST_CASE("policy executor demands entries for reached beliefs") {
  TeamModel m = load_model_text(kFunnel);
  SolvedPolicy p = Solver(m).solve();
  SolvedPolicy gutted = p;
  gutted.nodes.clear();
  PolicyExecutor exec(m, gutted);
  CHECK_THROWS_AS(exec.step(0, 0), MissingEntryError);
  // policies for a different model are rejected up front
  TeamModel other = load_model(fixture("singleton.json"));
  CHECK_THROWS_AS(PolicyExecutor(other, p), ValidationError);
}
