#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "teamdp/beliefs.hpp"
#include "teamdp/dp.hpp"
#include "teamdp/model.hpp"
#include "teamdp/rational.hpp"

namespace teamdp {

// Everything agent 1 has seen up to and including stage t: both observation
// streams and both action streams (agent 2 shares with agent 1).
struct M1Node {
  std::vector<int> y1, y2;  // length t+1
  std::vector<int> u1, u2;  // length t
  friend std::strong_ordering operator<=>(const M1Node& a, const M1Node& b) = default;
  friend bool operator==(const M1Node& a, const M1Node& b) = default;
};

// Agent 2's own record at stage t.
struct M2Node {
  std::vector<int> y2;  // length t+1
  std::vector<int> u2;  // length t
  friend std::strong_ordering operator<=>(const M2Node& a, const M2Node& b) = default;
  friend bool operator==(const M2Node& a, const M2Node& b) = default;
};

// A fully tabulated pair of strategies: explicit action tables indexed by
// information nodes, one table per stage. Entries are only required at
// nodes the profile itself reaches with positive probability.
struct StrategyProfile {
  std::vector<std::map<M1Node, int>> g1;  // [t]: node -> u1
  std::vector<std::map<M2Node, int>> g2;  // [t]: node -> u2
};

// Exact expected total cost of a profile, by direct expansion of the joint
// trajectory tree with explicit primitive draws (no belief machinery).
// Throws MissingEntryError if a positive-probability node has no entry.
Rational evaluate_strategy(const TeamModel& m, const StrategyProfile& profile);

// All information nodes the profile reaches with positive probability at
// stage t, in canonical order.
std::vector<M1Node> reachable_m1_nodes(const TeamModel& m, const StrategyProfile& profile, int t);
std::vector<M2Node> reachable_m2_nodes(const TeamModel& m, const StrategyProfile& profile, int t);

// Conditional distributions at a node, by direct summation over all
// trajectories consistent with it — the ground truth the recursive filters
// are checked against. Throw NullEventError if the node has zero
// probability under the profile.
Belief1 brute_force_belief1(const TeamModel& m, const StrategyProfile& profile,
                            const M1Node& node);
Belief2 brute_force_belief2(const TeamModel& m, const StrategyProfile& profile,
                            const M2Node& node);

struct OracleResult {
  Rational value;
  StrategyProfile argmin;       // first optimum in enumeration order
  long profiles_examined = 0;   // complete agent-2 strategies evaluated
};

// Globally optimal team cost by exhaustive search: enumerates every
// deterministic agent-2 strategy over its reachable information nodes —
// all stages, the final one included — in lexicographic order (action
// index ascending), and pairs each with agent 1's exact best response,
// computed by a backward min-sum pass over agent 1's information tree.
// Distinct agent-1 nodes partition trajectories, so once the whole
// agent-2 strategy is fixed their action choices decouple and the
// per-node minimization is exact. Strict improvement keeps the first
// optimum. Throws ResourceLimitError when max_profiles (> 0) is exceeded.
OracleResult brute_force_optimal(const TeamModel& m, long max_profiles);

// Size request for a generated instance. Spaces are stage-invariant.
struct InstanceDims {
  int nx = 2, nu1 = 2, nu2 = 2, ny1 = 2, ny2 = 2, nw = 2, nv1 = 2, nv2 = 2;
  int horizon = 1;
};

// Deterministic pseudo-random instance from a seed. The generator is
// platform-stable (own splitmix64 + rejection sampling, no std::
// distributions) and its draw order is frozen: identical (seed, dims)
// always yield the identical model, on any build. Distributions use
// weights 0..7 (redrawn if all zero, zeros allowed so null events occur),
// costs are k/d with k in 0..8, d in {1,2,4}.
TeamModel generate_random_instance(std::uint64_t seed, const InstanceDims& dims);

struct SimResult {
  long n = 0;
  double mean = 0.0;    // average realized total cost
  double stderr_ = 0.0; // sample standard error of the mean
};

// Monte-Carlo rollout of a solved policy (executed through its policy
// executor) or of an explicit profile. Sampling is exact: each draw puts
// the distribution over a common denominator and draws uniformly below it
// by rejection, so only the summary statistics are floating point.
SimResult simulate(const TeamModel& m, const SolvedPolicy& policy, long n, std::uint64_t seed);
SimResult simulate(const TeamModel& m, const StrategyProfile& profile, long n,
                   std::uint64_t seed);

// Unrolls a solved policy into explicit action tables by walking every
// positive-probability observation sequence with a policy executor.
StrategyProfile tabulate_policy(const TeamModel& m, const SolvedPolicy& policy);

}  // namespace teamdp
