#include <doctest.h>

#include <string>
#include <vector>

#include "support/strategy_walks.hpp"
#include "teamdp/beliefs.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/model.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/prescriptions.hpp"
#include "teamdp/rational.hpp"

using namespace teamdp;
using namespace teamdp::testsupport;

namespace {

std::string fixture(const char* name) {
  return std::string(TEAMDP_SOURCE_DIR) + "/models/" + name;
}

// Agent 2 observes the state exactly at a single stage; agent 1 is blind.
constexpr const char* kSpot = R"({
  "horizon": 0,
  "states": ["m0", "m1"],
  "actions1": ["a"],
  "actions2": ["b"],
  "obs1": ["o"],
  "obs2": ["s0", "s1"],
  "w": [],
  "v1": [[{"label": "e", "prob": 1}]],
  "v2": [[{"label": "e", "prob": 1}]],
  "x0": [{"label": "m0", "prob": "2/3"}, {"label": "m1", "prob": "1/3"}],
  "transition": [],
  "obs_fn1": [
    {"t": 0, "x": "m0", "v": "e", "y": "o"},
    {"t": 0, "x": "m1", "v": "e", "y": "o"}
  ],
  "obs_fn2": [
    {"t": 0, "x": "m0", "v": "e", "y": "s0"},
    {"t": 0, "x": "m1", "v": "e", "y": "s1"}
  ],
  "cost": [
    {"t": 0, "x": "m0", "u1": "a", "u2": "b", "value": 0},
    {"t": 0, "x": "m1", "u1": "a", "u2": "b", "value": 1}
  ]
})";

// Both agents blind; the state drifts toward m1 unless the disturbance is
// calm. Exercises the prediction-only part of the filters.
constexpr const char* kDrift = R"({
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
})";

// Static state, agent 1 learns it exactly at stage 1; agent 2 stays blind.
constexpr const char* kReveal = R"({
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
    {"t": 0, "x": "m0", "u1": "a", "u2": "b", "w": "e", "next": "m0"},
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

// The unique prescription on a singleton action space, over pi2's domain.
Prescription only_gamma(int stage, const Belief2& pi2) {
  return enumerate_prescriptions(stage, prescription_domain(pi2), 1, 0).at(0);
}

}  // namespace

TEST_CASE("private histories order chronologically and print interleaved") {
  TeamModel m = load_model_text(kReveal);
  PrivateHistory root{{0}, {}};
  PrivateHistory a = root.extended(0, 0);
  PrivateHistory b = root.extended(1, 0);
  CHECK(root.stage() == 0);
  CHECK(a.stage() == 1);
  CHECK(root < a);       // prefixes come first
  CHECK(a < b);          // then later coordinates
  CHECK(a.str(m) == "o,a,p0");
  CHECK(root.str(m) == "o");
}

TEST_CASE("belief normalization produces canonical form") {
  Belief1 b = Belief1::normalized({Rational(0), Rational(2, 6), Rational(1, 3)});
  REQUIRE(b.p.size() == 2);  // zero entry dropped
  CHECK(b.p[0].first == 1);
  CHECK(b.p[0].second == Rational(1, 2));
  CHECK(b.p[1].second == Rational(1, 2));
  CHECK(b.at(0).is_zero());
  CHECK(b.at(2) == Rational(1, 2));
  CHECK_THROWS_AS(Belief1::normalized({Rational(0), Rational(0)}), NullEventError);
}

TEST_CASE("reconstruction slices and renormalizes the joint belief") {
  // joint over (state, history) with overlapping supports:
  //   (x=0, la): 1/2   (x=1, la): 1/4   (x=1, lb): 1/4
  PrivateHistory la{{0}, {}};
  PrivateHistory lb{{1}, {}};
  Belief2 pi2;
  pi2.t = 0;
  pi2.p = {{0, la, Rational(1, 2)}, {1, la, Rational(1, 4)}, {1, lb, Rational(1, 4)}};

  Belief1 ea = reconstruct_belief1(pi2, la);
  REQUIRE(ea.p.size() == 2);
  CHECK(ea.p[0].second == Rational(2, 3));
  CHECK(ea.p[1].second == Rational(1, 3));

  Belief1 eb = reconstruct_belief1(pi2, lb);
  REQUIRE(eb.p.size() == 1);
  CHECK(eb.p[0].first == 1);
  CHECK(eb.p[0].second == Rational(1));

  CHECK_THROWS_AS(reconstruct_belief1(pi2, PrivateHistory{{2}, {}}), NullEventError);
}

TEST_CASE("initial joint belief under a perfectly observing agent 2") {
  TeamModel m = load_model_text(kSpot);
  Belief2 b0 = initial_belief2(m, 0);  // y2 = s0 reveals x = m0
  REQUIRE(b0.p.size() == 1);
  CHECK(b0.p[0].x == 0);
  CHECK(b0.p[0].l == PrivateHistory{{0}, {}});
  CHECK(b0.p[0].prob == Rational(1));
  Belief2 b1 = initial_belief2(m, 1);
  REQUIRE(b1.p.size() == 1);
  CHECK(b1.p[0].x == 1);
}

TEST_CASE("initial joint belief under a blind agent 2 copies the prior") {
  TeamModel m = load_model_text(kDrift);
  Belief2 b = initial_belief2(m, 0);
  REQUIRE(b.p.size() == 2);
  CHECK(b.t == 0);
  CHECK(b.p[0].x == 0);
  CHECK(b.p[0].prob == Rational(1, 2));
  CHECK(b.p[1].x == 1);
  CHECK(b.p[1].prob == Rational(1, 2));
  // both states produce the same (blind) agent-1 observation
  CHECK(b.p[0].l == b.p[1].l);
}

TEST_CASE("impossible first observation is rejected") {
  TeamModel m = load_model_text(kSpot);
  // concentrate the prior on m0; then y2 = s1 cannot occur
  m.x0 = {Rational(1), Rational(0)};
  CHECK_THROWS_AS(initial_belief2(m, 1), InconsistentObservationError);
}

TEST_CASE("agent-1 filter: uninformative observations leave pure prediction") {
  TeamModel m = load_model_text(kDrift);
  Belief1 prior;
  prior.p = {{0, Rational(1)}};
  Belief1 post = update_belief1(m, 0, prior, 0, 0, 0, 0);
  REQUIRE(post.p.size() == 2);
  CHECK(post.p[0].second == Rational(3, 4));  // stayed at m0 iff calm
  CHECK(post.p[1].second == Rational(1, 4));
}

TEST_CASE("agent-1 filter: a revealing observation collapses the belief") {
  TeamModel m = load_model_text(kReveal);
  Belief1 prior;
  prior.p = {{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  Belief1 post = update_belief1(m, 0, prior, 0, 0, 0, 0);  // y1' = p0
  REQUIRE(post.p.size() == 1);
  CHECK(post.p[0].first == 0);
  CHECK(post.p[0].second == Rational(1));

  Belief1 sure;
  sure.p = {{0, Rational(1)}};
  // state is m0 for certain and static, yet y1' = p1 claims m1
  CHECK_THROWS_AS(update_belief1(m, 0, sure, 0, 0, 1, 0), InconsistentObservationError);
}

TEST_CASE("agent-2 filter: deterministic drift merges histories forward") {
  TeamModel m = load_model_text(kDrift);
  Belief2 b0 = initial_belief2(m, 0);
  Prescription g = only_gamma(0, b0);
  Belief2 b1 = update_belief2(m, b0, g, NewInfo2{0, 0});
  CHECK(b1.t == 1);
  REQUIRE(b1.p.size() == 2);
  // both support points share the extended history (o, a, o)
  PrivateHistory l1 = PrivateHistory{{0}, {}}.extended(0, 0);
  CHECK(b1.p[0].x == 0);
  CHECK(b1.p[0].l == l1);
  CHECK(b1.p[0].prob == Rational(3, 8));  // was m0 and stayed: 1/2 * 3/4
  CHECK(b1.p[1].x == 1);
  CHECK(b1.p[1].l == l1);
  CHECK(b1.p[1].prob == Rational(5, 8));
}

TEST_CASE("agent-2 filter: agent 1's private signal spreads the histories") {
  TeamModel m = load_model_text(kReveal);
  Belief2 b0 = initial_belief2(m, 0);
  Prescription g = only_gamma(0, b0);
  Belief2 b1 = update_belief2(m, b0, g, NewInfo2{0, 0});
  REQUIRE(b1.p.size() == 2);
  // agent 2 can't see y1' but tracks its joint with the static state
  CHECK(b1.p[0].x == 0);
  CHECK(b1.p[0].l == PrivateHistory{{0}, {}}.extended(0, 0));
  CHECK(b1.p[0].prob == Rational(1, 2));
  CHECK(b1.p[1].x == 1);
  CHECK(b1.p[1].l == PrivateHistory{{0}, {}}.extended(1, 0));
  CHECK(b1.p[1].prob == Rational(1, 2));
  // reconstruction at either private history pins the state down
  Belief1 e0 = reconstruct_belief1(b1, b1.p[0].l);
  REQUIRE(e0.p.size() == 1);
  CHECK(e0.p[0].first == 0);
}

TEST_CASE("next-observation distribution is a valid distribution") {
  TeamModel m = load_model(fixture("maintenance.json"));
  Belief2 b0 = initial_belief2(m, 0);
  PrescriptionSet set = enumerate_prescriptions(0, prescription_domain(b0), m.n_u1(0), 0);
  for (long i = 0; i < set.size(); ++i) {
    for (int u2 = 0; u2 < m.n_u2(0); ++u2) {
      std::vector<Rational> z = z2_distribution(m, b0, set.at(i), u2);
      REQUIRE(static_cast<int>(z.size()) == m.n_y2(1));
      Rational total(0);
      for (const Rational& q : z) {
        CHECK(!q.is_negative());
        total += q;
      }
      CHECK(total == Rational(1));
    }
  }
  // blind agent 2 sees its only symbol with certainty
  TeamModel d = load_model_text(kDrift);
  Belief2 db = initial_belief2(d, 0);
  std::vector<Rational> z = z2_distribution(d, db, only_gamma(0, db), 0);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == Rational(1));
}

TEST_CASE("expected stage cost under agent-1 beliefs") {
  TeamModel m = load_model(fixture("maintenance.json"));
  Belief1 up;
  up.p = {{0, Rational(1)}};
  Belief1 down;
  down.p = {{1, Rational(1)}};
  Belief1 half;
  half.p = {{0, Rational(1, 2)}, {1, Rational(1, 2)}};
  CHECK(reduced_cost1(m, 0, up, 0, 0) == Rational(0));    // up, keep, run
  CHECK(reduced_cost1(m, 0, down, 0, 0) == Rational(6));  // down, keep, run
  CHECK(reduced_cost1(m, 0, half, 0, 0) == Rational(3));
  CHECK(reduced_cost1(m, 0, half, 1, 0) == Rational(4));  // probe adds 1
}

TEST_CASE("expected stage cost under agent-2 beliefs routes through the prescription") {
  TeamModel m = load_model(fixture("maintenance.json"));
  PrivateHistory lg{{0}, {}};
  PrivateHistory lb{{1}, {}};
  Belief2 pi2;
  pi2.t = 0;
  pi2.p = {{0, lg, Rational(1, 2)}, {1, lb, Rational(1, 2)}};
  // reconstructions are the two point masses; send keep after g, probe after b
  std::map<Belief1, int> table;
  table[reconstruct_belief1(pi2, lg)] = 0;
  table[reconstruct_belief1(pi2, lb)] = 1;
  Prescription g(0, table);
  // 1/2 * c(up, keep, run) + 1/2 * c(down, probe, run) = 0/2 + 7/2
  CHECK(reduced_cost2(m, 0, pi2, g, 0) == Rational(7, 2));
  // under halt both branches cost 2 and 3
  CHECK(reduced_cost2(m, 0, pi2, g, 1) == Rational(5, 2));
}

TEST_CASE("recursive filters match brute-force conditionals on pinned models") {
  for (const char* text : {kSpot, kDrift, kReveal}) {
    TeamModel m = load_model_text(text);
    StructuralStrategy s = make_structural(m, lex_first_chooser());
    CHECK(filter_sweep(m, s).empty());
  }
  TeamModel m = load_model(fixture("maintenance.json"));
  for (const Chooser& c : {lex_first_chooser(), lex_last_chooser(), seeded_chooser(5)}) {
    StructuralStrategy s = make_structural(m, c);
    std::vector<std::string> bad = filter_sweep(m, s);
    for (const std::string& line : bad) MESSAGE(line);
    CHECK(bad.empty());
  }
}

TEST_CASE("recursive filters match brute-force conditionals on random instances") {
  for (std::uint64_t seed : {101u, 102u, 103u, 104u}) {
    TeamModel m = generate_random_instance(seed, InstanceDims{});
    for (const Chooser& c : {lex_first_chooser(), lex_last_chooser(), seeded_chooser(seed)}) {
      StructuralStrategy s = make_structural(m, c);
      std::vector<std::string> bad = filter_sweep(m, s);
      for (const std::string& line : bad) MESSAGE(line);
      CHECK(bad.empty());
    }
  }
}
