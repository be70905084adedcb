#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "teamdp/beliefs.hpp"
#include "teamdp/model.hpp"
#include "teamdp/prescriptions.hpp"
#include "teamdp/rational.hpp"

namespace teamdp {

struct SolverBounds {
  long max_beliefs = 1'000'000;       // distinct memoized agent-2 beliefs
  long max_prescriptions = 1'000'000; // prescriptions enumerated per node
};

// Decision at a non-final belief node: agent 2's action and the
// prescription it hands agent 1.
struct StepDecision {
  int u2 = 0;
  Prescription gamma;
};

// Decision at a final-stage node. At the last stage the prescription
// degenerates: agent 1 may condition directly on agent 2's current action,
// so the policy stores agent 1's action for every (belief, agent-2 action)
// pair alongside agent 2's own choice.
struct FinalDecision {
  int u2 = 0;
  std::map<std::pair<Belief1, int>, int> u1_of;  // (pi1, u2) -> u1
};

struct ValueCacheEntry {
  Rational value;
  bool is_final = false;
  StepDecision step;    // meaningful when !is_final
  FinalDecision last;   // meaningful when is_final
};

// The full output of a solve: optimal expected total cost plus the chosen
// decision at every reachable agent-2 belief, keyed by the belief itself
// (the stage lives inside Belief2).
struct SolvedPolicy {
  std::string fingerprint;  // of the model this policy was solved for
  Rational value;
  std::map<Belief2, ValueCacheEntry> nodes;
};

// Best agent-1 action against a fixed agent-2 action at the final stage:
// minimizes expected stage cost under pi1, lowest action index on ties.
std::pair<Rational, int> value_final_inner(const TeamModel& m, const Belief1& pi1, int u2);

// Final-stage value at an agent-2 belief, computed in two sub-steps:
// agent 1 best-responds per private history given u2, then agent 2
// minimizes the history-weighted total over u2. Lowest u2 index on ties.
std::pair<Rational, FinalDecision> value_final(const TeamModel& m, const Belief2& pi2);

// Memoized backward recursion over reachable agent-2 beliefs. Only beliefs
// actually reachable from the initial observations (or explicitly asked
// about) are ever expanded.
class Solver {
 public:
  explicit Solver(const TeamModel& m, SolverBounds bounds = {});

  // J_t at an arbitrary agent-2 belief (pi2.t picks the stage). For
  // non-final stages this is one Bellman step: minimize over agent-2
  // actions and prescriptions the reduced stage cost plus the expected
  // value at the updated belief, recursing on demand.
  const ValueCacheEntry& value(const Belief2& pi2);

  // Expected optimal total cost, averaging J_0 over agent 2's first
  // observation, plus every decision reached along the way.
  SolvedPolicy solve();

  long beliefs_expanded() const { return static_cast<long>(cache_.size()); }

 private:
  ValueCacheEntry compute(const Belief2& pi2);

  const TeamModel& m_;
  SolverBounds bounds_;
  std::map<Belief2, ValueCacheEntry> cache_;
};

struct FinalCheck {
  Rational two_step;  // value via the per-history decomposition
  Rational direct;    // value via minimizing over whole prescriptions
  bool match = false;
};

// Recomputes a final-stage value the expensive way — enumerate every
// prescription over the belief's domain jointly with agent 2's action —
// and compares with value_final. The two must agree exactly.
FinalCheck final_stage_equivalence_check(const TeamModel& m, const Belief2& pi2,
                                         const SolverBounds& bounds = {});

// Versioned, fingerprinted, byte-reproducible text form of a policy.
std::string serialize_policy(const TeamModel& m, const SolvedPolicy& policy);

// Inverse of serialize_policy. Throws ParseError on malformed text and
// ValidationError if the fingerprint does not match the given model.
SolvedPolicy parse_policy(const TeamModel& m, const std::string& text);

// Replays a solved policy one stage at a time: feed both observations,
// get both actions. Tracks agent 2's belief (and agent 1's private
// history) internally; after the final stage the executor is done.
// Observations that are impossible under the model/policy raise
// InconsistentTrajectoryError; a reachable belief missing from the policy
// raises MissingEntryError.
class PolicyExecutor {
 public:
  PolicyExecutor(const TeamModel& m, const SolvedPolicy& policy);

  std::pair<int, int> step(int y1, int y2);  // -> (u1, u2)
  bool done() const { return t_ > m_.horizon; }
  int stage() const { return t_; }

 private:
  const TeamModel& m_;
  const SolvedPolicy& policy_;
  int t_ = 0;
  Belief2 pi2_;
  PrivateHistory l_;
  std::optional<StepDecision> last_step_;
  int last_u1_ = -1;
};

}  // namespace teamdp
