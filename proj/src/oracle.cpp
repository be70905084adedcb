#include "teamdp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"

namespace teamdp {

namespace {

// Observation kernels tabulated once; the enumerations below hit them in
// tight loops.
struct Kernels {
  std::vector<std::vector<std::vector<Rational>>> k1, k2;  // [t][x][y]
};

Kernels build_kernels(const TeamModel& m) {
  Kernels k;
  k.k1.resize(m.horizon + 1);
  k.k2.resize(m.horizon + 1);
  for (int t = 0; t <= m.horizon; ++t) {
    k.k1[t].resize(m.n_states(t));
    k.k2[t].resize(m.n_states(t));
    for (int x = 0; x < m.n_states(t); ++x) {
      k.k1[t][x] = observation_kernel(m, 1, t, x);
      k.k2[t][x] = observation_kernel(m, 2, t, x);
    }
  }
  return k;
}

using StateMass = std::map<int, Rational>;     // x -> unnormalized joint mass
using Level = std::map<M1Node, StateMass>;     // all stage-t nodes, positive mass only

M2Node m2_of(const M1Node& n) { return M2Node{n.y2, n.u2}; }

Level initial_level(const TeamModel& m, const Kernels& k) {
  Level level;
  for (int x = 0; x < m.n_states(0); ++x) {
    if (m.x0[x].is_zero()) continue;
    for (int y1 = 0; y1 < m.n_y1(0); ++y1) {
      if (k.k1[0][x][y1].is_zero()) continue;
      for (int y2 = 0; y2 < m.n_y2(0); ++y2) {
        if (k.k2[0][x][y2].is_zero()) continue;
        M1Node node{{y1}, {y2}, {}, {}};
        level[node][x] += m.x0[x] * k.k1[0][x][y1] * k.k2[0][x][y2];
      }
    }
  }
  return level;
}

// One forward step where every node's actions are already fixed.
Level advance_level(const TeamModel& m, const Kernels& k, int t, const Level& level,
                    const std::map<M1Node, std::pair<int, int>>& actions) {
  Level next;
  for (const auto& [node, mass] : level) {
    auto [u1, u2] = actions.at(node);
    for (const auto& [x, px] : mass) {
      for (int w = 0; w < m.n_w(t); ++w) {
        if (m.w_prob[t][w].is_zero()) continue;
        int nx = m.next_state(t, x, u1, u2, w);
        Rational base = px * m.w_prob[t][w];
        for (int y1 = 0; y1 < m.n_y1(t + 1); ++y1) {
          if (k.k1[t + 1][nx][y1].is_zero()) continue;
          for (int y2 = 0; y2 < m.n_y2(t + 1); ++y2) {
            if (k.k2[t + 1][nx][y2].is_zero()) continue;
            M1Node child = node;
            child.y1.push_back(y1);
            child.y2.push_back(y2);
            child.u1.push_back(u1);
            child.u2.push_back(u2);
            next[child][nx] += base * k.k1[t + 1][nx][y1] * k.k2[t + 1][nx][y2];
          }
        }
      }
    }
  }
  return next;
}

std::pair<int, int> profile_actions(const StrategyProfile& profile, int t, const M1Node& node) {
  if (t >= static_cast<int>(profile.g1.size()) || t >= static_cast<int>(profile.g2.size()))
    throw MissingEntryError("strategy profile has no stage-" + std::to_string(t) + " tables");
  auto it1 = profile.g1[t].find(node);
  if (it1 == profile.g1[t].end())
    throw MissingEntryError("strategy profile: no agent-1 action at a reachable stage-" +
                            std::to_string(t) + " node");
  auto it2 = profile.g2[t].find(m2_of(node));
  if (it2 == profile.g2[t].end())
    throw MissingEntryError("strategy profile: no agent-2 action at a reachable stage-" +
                            std::to_string(t) + " node");
  return {it1->second, it2->second};
}

std::map<M1Node, std::pair<int, int>> actions_from_profile(const StrategyProfile& profile, int t,
                                                           const Level& level) {
  std::map<M1Node, std::pair<int, int>> out;
  for (const auto& [node, mass] : level) out[node] = profile_actions(profile, t, node);
  return out;
}

// Forward walk to stage `t` under a fixed profile.
Level level_at(const TeamModel& m, const Kernels& k, const StrategyProfile& profile, int t) {
  Level level = initial_level(m, k);
  for (int s = 0; s < t; ++s)
    level = advance_level(m, k, s, level, actions_from_profile(profile, s, level));
  return level;
}

}  // namespace

Rational evaluate_strategy(const TeamModel& m, const StrategyProfile& profile) {
  Kernels k = build_kernels(m);
  Level level = initial_level(m, k);
  Rational total(0);
  for (int t = 0; t <= m.horizon; ++t) {
    auto actions = actions_from_profile(profile, t, level);
    for (const auto& [node, mass] : level) {
      auto [u1, u2] = actions.at(node);
      for (const auto& [x, px] : mass) total += px * m.stage_cost(t, x, u1, u2);
    }
    if (t < m.horizon) level = advance_level(m, k, t, level, actions);
  }
  return total;
}

std::vector<M1Node> reachable_m1_nodes(const TeamModel& m, const StrategyProfile& profile,
                                       int t) {
  Kernels k = build_kernels(m);
  Level level = level_at(m, k, profile, t);
  std::vector<M1Node> out;
  for (const auto& [node, mass] : level) out.push_back(node);
  return out;
}

std::vector<M2Node> reachable_m2_nodes(const TeamModel& m, const StrategyProfile& profile,
                                       int t) {
  Kernels k = build_kernels(m);
  Level level = level_at(m, k, profile, t);
  std::set<M2Node> seen;
  for (const auto& [node, mass] : level) seen.insert(m2_of(node));
  return std::vector<M2Node>(seen.begin(), seen.end());
}

Belief1 brute_force_belief1(const TeamModel& m, const StrategyProfile& profile,
                            const M1Node& node) {
  int t = static_cast<int>(node.y1.size()) - 1;
  if (t < 0 || t > m.horizon) throw Error("brute_force_belief1: bad node stage");
  Kernels k = build_kernels(m);
  Level level = level_at(m, k, profile, t);
  auto it = level.find(node);
  if (it == level.end())
    throw NullEventError("brute_force_belief1: node has probability zero under the profile");
  std::vector<Rational> mass(m.n_states(t), Rational(0));
  for (const auto& [x, px] : it->second) mass[x] = px;
  return Belief1::normalized(mass);
}

Belief2 brute_force_belief2(const TeamModel& m, const StrategyProfile& profile,
                            const M2Node& node) {
  int t = static_cast<int>(node.y2.size()) - 1;
  if (t < 0 || t > m.horizon) throw Error("brute_force_belief2: bad node stage");
  Kernels k = build_kernels(m);
  Level level = level_at(m, k, profile, t);
  std::map<std::pair<int, PrivateHistory>, Rational> mass;
  Rational total(0);
  for (const auto& [n, sm] : level) {
    if (n.y2 != node.y2 || n.u2 != node.u2) continue;
    PrivateHistory l{n.y1, n.u1};
    for (const auto& [x, px] : sm) {
      mass[{x, l}] += px;
      total += px;
    }
  }
  if (total.is_zero())
    throw NullEventError("brute_force_belief2: node has probability zero under the profile");
  Belief2 out;
  out.t = t;
  for (auto& [key, v] : mass)
    if (!v.is_zero()) out.p.push_back({key.first, key.second, v / total});
  return out;
}

namespace {

// --- exhaustive search ---------------------------------------------------
//
// Agent-2 strategies are enumerated stage by stage: at each stage every
// reachable agent-2 history (y2 prefix; its past actions are implied by
// the assignments already on the stack) gets an action, assignments in
// lexicographic order over (sorted prefixes) x (action index). Between
// stages the trajectory tree is pushed forward with agent 1's action left
// open — nodes carry their full u1 history — so after the last assignment
// a backward min-sum pass picks agent 1's exact best response per node.
// Agent-2 actions are enumerated exhaustively at EVERY stage, the final
// one included: a per-group greedy choice at the last stage would be
// optimized against masses in which agent 1's earlier actions are still
// branched open — a mixture of mutually exclusive continuations — and can
// miss the joint optimum. Only agent 1's replies decouple (per node, by
// backward induction) once the whole agent-2 strategy is fixed.

struct BruteCtx {
  const TeamModel& m;
  const Kernels& k;
  long max_profiles;
  long examined = 0;
  bool have_best = false;
  Rational best_value;
  StrategyProfile best_profile;
  std::vector<Level> levels;                             // [0..t]
  std::vector<std::map<std::vector<int>, int>> assigns;  // [0..t]: y2 prefix -> u2
};

// Forward step with u1 open: every agent-1 action is branched, u2 comes
// from the stage assignment keyed by the node's y2 prefix.
Level advance_open(const BruteCtx& c, int t, const Level& level,
                   const std::map<std::vector<int>, int>& assign) {
  const TeamModel& m = c.m;
  Level next;
  for (const auto& [node, mass] : level) {
    int u2 = assign.at(node.y2);
    for (int u1 = 0; u1 < m.n_u1(t); ++u1) {
      for (const auto& [x, px] : mass) {
        for (int w = 0; w < m.n_w(t); ++w) {
          if (m.w_prob[t][w].is_zero()) continue;
          int nx = m.next_state(t, x, u1, u2, w);
          Rational base = px * m.w_prob[t][w];
          for (int y1 = 0; y1 < m.n_y1(t + 1); ++y1) {
            if (c.k.k1[t + 1][nx][y1].is_zero()) continue;
            for (int y2 = 0; y2 < m.n_y2(t + 1); ++y2) {
              if (c.k.k2[t + 1][nx][y2].is_zero()) continue;
              M1Node child = node;
              child.y1.push_back(y1);
              child.y2.push_back(y2);
              child.u1.push_back(u1);
              child.u2.push_back(u2);
              next[child][nx] += base * c.k.k1[t + 1][nx][y1] * c.k.k2[t + 1][nx][y2];
            }
          }
        }
      }
    }
  }
  return next;
}

// Complete agent-2 strategy reached (one action table per stage, the last
// included): best-respond for agent 1 by backward induction over its
// information nodes, compare with the incumbent.
void brute_leaf(BruteCtx& c) {
  const TeamModel& m = c.m;
  int T = m.horizon;

  if (c.max_profiles > 0 && c.examined >= c.max_profiles)
    throw ResourceLimitError("oracle: profile enumeration exceeds bound " +
                             std::to_string(c.max_profiles));
  ++c.examined;

  // Final stage: best agent-1 action per node under the assigned u2
  // (ties: lowest index).
  std::map<M1Node, Rational> value_next;
  std::vector<std::map<M1Node, int>> chosen_u1(T + 1);
  for (const auto& [node, mass] : c.levels[T]) {
    int u2 = c.assigns[T].at(node.y2);
    Rational best_node;
    int best_a = -1;
    for (int u1 = 0; u1 < m.n_u1(T); ++u1) {
      Rational v(0);
      for (const auto& [x, px] : mass) v += px * m.stage_cost(T, x, u1, u2);
      if (best_a < 0 || v < best_node) {
        best_node = v;
        best_a = u1;
      }
    }
    value_next[node] = best_node;
    chosen_u1[T][node] = best_a;
  }

  // Backward over earlier stages: per node, best u1 against the fixed
  // agent-2 assignment, child values looked up by extended key.
  for (int t = T - 1; t >= 0; --t) {
    std::map<M1Node, Rational> value_t;
    for (const auto& [node, mass] : c.levels[t]) {
      int u2 = c.assigns[t].at(node.y2);
      Rational best_v;
      int best_a = -1;
      for (int u1 = 0; u1 < m.n_u1(t); ++u1) {
        Rational v(0);
        for (const auto& [x, px] : mass) v += px * m.stage_cost(t, x, u1, u2);
        for (int y1 = 0; y1 < m.n_y1(t + 1); ++y1)
          for (int y2 = 0; y2 < m.n_y2(t + 1); ++y2) {
            M1Node child = node;
            child.y1.push_back(y1);
            child.y2.push_back(y2);
            child.u1.push_back(u1);
            child.u2.push_back(u2);
            auto it = value_next.find(child);
            if (it != value_next.end()) v += it->second;
          }
        if (best_a < 0 || v < best_v) {
          best_v = v;
          best_a = u1;
        }
      }
      value_t[node] = best_v;
      chosen_u1[t][node] = best_a;
    }
    value_next = std::move(value_t);
  }

  Rational total(0);
  for (const auto& [node, v] : value_next) total += v;

  if (!c.have_best || total < c.best_value) {
    c.have_best = true;
    c.best_value = total;
    StrategyProfile p;
    p.g1.assign(T + 1, {});
    p.g2.assign(T + 1, {});
    for (int t = 0; t <= T; ++t) {
      for (const auto& [node, mass] : c.levels[t]) {
        p.g1[t][node] = chosen_u1[t].at(node);
        p.g2[t][m2_of(node)] = c.assigns[t].at(node.y2);
      }
    }
    c.best_profile = std::move(p);
  }
}

void brute_recurse(BruteCtx& c, int t) {
  if (t > c.m.horizon) {
    brute_leaf(c);
    return;
  }
  std::set<std::vector<int>> prefixes;
  for (const auto& [node, mass] : c.levels[t]) prefixes.insert(node.y2);
  std::vector<std::vector<int>> keys(prefixes.begin(), prefixes.end());
  std::vector<int> digits(keys.size(), 0);
  int base = c.m.n_u2(t);
  bool grow = t < c.m.horizon;  // the last stage has no forward step
  for (;;) {
    std::map<std::vector<int>, int> assign;
    for (std::size_t i = 0; i < keys.size(); ++i) assign[keys[i]] = digits[i];
    c.assigns.push_back(assign);
    if (grow) c.levels.push_back(advance_open(c, t, c.levels[t], assign));
    brute_recurse(c, t + 1);
    if (grow) c.levels.pop_back();
    c.assigns.pop_back();
    // odometer, last key least significant
    std::size_t i = keys.size();
    while (i > 0) {
      --i;
      if (++digits[i] < base) break;
      digits[i] = 0;
      if (i == 0) return;
    }
    if (keys.empty()) return;
  }
}

}  // namespace

OracleResult brute_force_optimal(const TeamModel& m, long max_profiles) {
  Kernels k = build_kernels(m);
  BruteCtx c{m, k, max_profiles, 0, false, Rational(0), {}, {}, {}};
  c.levels.reserve(m.horizon + 1);
  c.levels.push_back(initial_level(m, k));
  if (c.levels[0].empty()) throw Error("brute_force_optimal: no possible first observation");
  brute_recurse(c, 0);
  OracleResult out;
  out.value = c.best_value;
  out.argmin = std::move(c.best_profile);
  out.profiles_examined = c.examined;
  return out;
}

// --- instance generation ---------------------------------------------------

namespace {

// splitmix64: tiny, seedable, identical on every platform. The draw order
// below is frozen — it is part of the (seed, dims) -> instance contract.
struct SplitMix64 {
  std::uint64_t s;
  std::uint64_t next() {
    std::uint64_t z = (s += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n) by rejection
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= lim);
    return r % n;
  }
};

std::vector<std::string> make_labels(const char* prefix, int n) {
  std::vector<std::string> out;
  for (int i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

// Integer weights 0..7, at least one positive, normalized exactly.
std::vector<Rational> random_dist(SplitMix64& rng, int n) {
  std::vector<long> weights(n);
  long total = 0;
  do {
    total = 0;
    for (int i = 0; i < n; ++i) {
      weights[i] = static_cast<long>(rng.below(8));
      total += weights[i];
    }
  } while (total == 0);
  std::vector<Rational> out;
  for (int i = 0; i < n; ++i) out.emplace_back(weights[i], total);
  return out;
}

}  // namespace

TeamModel generate_random_instance(std::uint64_t seed, const InstanceDims& d) {
  if (d.nx < 1 || d.nu1 < 1 || d.nu2 < 1 || d.ny1 < 1 || d.ny2 < 1 || d.nw < 1 || d.nv1 < 1 ||
      d.nv2 < 1 || d.horizon < 0)
    throw Error("generate_random_instance: all space sizes must be >= 1, horizon >= 0");
  SplitMix64 rng{seed};
  TeamModel m;
  int T = d.horizon;
  m.horizon = T;
  m.states.assign(T + 1, make_labels("s", d.nx));
  m.actions1.assign(T + 1, make_labels("a", d.nu1));
  m.actions2.assign(T + 1, make_labels("b", d.nu2));
  m.obs1.assign(T + 1, make_labels("c", d.ny1));
  m.obs2.assign(T + 1, make_labels("d", d.ny2));
  m.w_labels.assign(T, make_labels("w", d.nw));
  m.v1_labels.assign(T + 1, make_labels("m", d.nv1));
  m.v2_labels.assign(T + 1, make_labels("n", d.nv2));

  m.x0 = random_dist(rng, d.nx);
  m.w_prob.clear();
  for (int t = 0; t < T; ++t) m.w_prob.push_back(random_dist(rng, d.nw));
  m.v1_prob.clear();
  for (int t = 0; t <= T; ++t) m.v1_prob.push_back(random_dist(rng, d.nv1));
  m.v2_prob.clear();
  for (int t = 0; t <= T; ++t) m.v2_prob.push_back(random_dist(rng, d.nv2));

  m.allocate_tables();
  for (int t = 0; t < T; ++t)
    for (int x = 0; x < d.nx; ++x)
      for (int u1 = 0; u1 < d.nu1; ++u1)
        for (int u2 = 0; u2 < d.nu2; ++u2)
          for (int w = 0; w < d.nw; ++w)
            m.set_next_state(t, x, u1, u2, w, static_cast<int>(rng.below(d.nx)));
  for (int t = 0; t <= T; ++t)
    for (int x = 0; x < d.nx; ++x)
      for (int v = 0; v < d.nv1; ++v) m.set_obs1(t, x, v, static_cast<int>(rng.below(d.ny1)));
  for (int t = 0; t <= T; ++t)
    for (int x = 0; x < d.nx; ++x)
      for (int v = 0; v < d.nv2; ++v) m.set_obs2(t, x, v, static_cast<int>(rng.below(d.ny2)));
  static const long dens[3] = {1, 2, 4};
  for (int t = 0; t <= T; ++t)
    for (int x = 0; x < d.nx; ++x)
      for (int u1 = 0; u1 < d.nu1; ++u1)
        for (int u2 = 0; u2 < d.nu2; ++u2)
          m.set_stage_cost(t, x, u1, u2,
                           Rational(static_cast<long>(rng.below(9)), dens[rng.below(3)]));
  return m;
}

// --- simulation --------------------------------------------------------------

namespace {

// Exact categorical draw: put the distribution over a common denominator D,
// draw uniformly in [0, D), walk the cumulative numerators.
int draw_categorical(SplitMix64& rng, const std::vector<Rational>& dist) {
  mpz_class d(1);
  for (const auto& p : dist) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), p.den().get_mpz_t());
  if (!d.fits_ulong_p())
    throw ResourceLimitError("simulate: distribution common denominator exceeds 64 bits");
  unsigned long dd = d.get_ui();
  std::uint64_t r = rng.below(dd);
  mpz_class acc(0);
  for (std::size_t i = 0; i < dist.size(); ++i) {
    acc += dist[i].num() * (d / dist[i].den());
    if (mpz_cmp_ui(acc.get_mpz_t(), r) > 0) return static_cast<int>(i);
  }
  throw Error("simulate: categorical draw fell off the end");  // sum < 1: invalid dist
}

// One rollout; `act` maps (t, y1, y2) to the pair of actions.
template <typename ActFn>
Rational rollout(const TeamModel& m, SplitMix64& rng, ActFn&& act) {
  int x = draw_categorical(rng, m.x0);
  Rational cost(0);
  for (int t = 0; t <= m.horizon; ++t) {
    int v1 = draw_categorical(rng, m.v1_prob[t]);
    int v2 = draw_categorical(rng, m.v2_prob[t]);
    int y1 = m.obs1_of(t, x, v1);
    int y2 = m.obs2_of(t, x, v2);
    auto [u1, u2] = act(t, y1, y2);
    cost += m.stage_cost(t, x, u1, u2);
    if (t < m.horizon) {
      int w = draw_categorical(rng, m.w_prob[t]);
      x = m.next_state(t, x, u1, u2, w);
    }
  }
  return cost;
}

SimResult summarize(std::vector<double>& costs) {
  SimResult r;
  r.n = static_cast<long>(costs.size());
  double sum = 0;
  for (double c : costs) sum += c;
  r.mean = sum / static_cast<double>(r.n);
  if (r.n > 1) {
    double ss = 0;
    for (double c : costs) ss += (c - r.mean) * (c - r.mean);
    r.stderr_ = std::sqrt(ss / (static_cast<double>(r.n) - 1)) /
                std::sqrt(static_cast<double>(r.n));
  }
  return r;
}

}  // namespace

SimResult simulate(const TeamModel& m, const SolvedPolicy& policy, long n, std::uint64_t seed) {
  if (n < 1) throw Error("simulate: need at least one trajectory");
  SplitMix64 rng{seed};
  std::vector<double> costs;
  costs.reserve(n);
  for (long i = 0; i < n; ++i) {
    PolicyExecutor exec(m, policy);
    Rational c = rollout(m, rng, [&](int, int y1, int y2) { return exec.step(y1, y2); });
    costs.push_back(c.to_double());
  }
  return summarize(costs);
}

SimResult simulate(const TeamModel& m, const StrategyProfile& profile, long n,
                   std::uint64_t seed) {
  if (n < 1) throw Error("simulate: need at least one trajectory");
  SplitMix64 rng{seed};
  std::vector<double> costs;
  costs.reserve(n);
  for (long i = 0; i < n; ++i) {
    M1Node node;
    Rational c = rollout(m, rng, [&](int t, int y1, int y2) {
      node.y1.push_back(y1);
      node.y2.push_back(y2);
      auto [u1, u2] = profile_actions(profile, t, node);
      node.u1.push_back(u1);
      node.u2.push_back(u2);
      return std::pair<int, int>(u1, u2);
    });
    costs.push_back(c.to_double());
  }
  return summarize(costs);
}

StrategyProfile tabulate_policy(const TeamModel& m, const SolvedPolicy& policy) {
  Kernels k = build_kernels(m);
  StrategyProfile out;
  out.g1.assign(m.horizon + 1, {});
  out.g2.assign(m.horizon + 1, {});

  struct Branch {
    M1Node node;          // after observing stage-t observations
    StateMass mass;
    PolicyExecutor exec;  // not yet stepped at stage t
  };
  std::vector<Branch> frontier;
  {
    Level init = initial_level(m, k);
    for (auto& [node, mass] : init)
      frontier.push_back({node, mass, PolicyExecutor(m, policy)});
  }
  for (int t = 0; t <= m.horizon; ++t) {
    std::vector<Branch> next;
    for (auto& br : frontier) {
      auto [u1, u2] = br.exec.step(br.node.y1[t], br.node.y2[t]);
      out.g1[t][br.node] = u1;
      M2Node n2 = m2_of(br.node);
      auto [it, inserted] = out.g2[t].try_emplace(n2, u2);
      if (!inserted && it->second != u2)
        throw Error("tabulate_policy: policy is not agent-2-measurable");
      if (t == m.horizon) continue;
      // push the branch forward through every positive-probability pair
      std::map<std::pair<int, int>, StateMass> children;
      for (const auto& [x, px] : br.mass) {
        for (int w = 0; w < m.n_w(t); ++w) {
          if (m.w_prob[t][w].is_zero()) continue;
          int nx = m.next_state(t, x, u1, u2, w);
          Rational base = px * m.w_prob[t][w];
          for (int y1 = 0; y1 < m.n_y1(t + 1); ++y1) {
            if (k.k1[t + 1][nx][y1].is_zero()) continue;
            for (int y2 = 0; y2 < m.n_y2(t + 1); ++y2) {
              if (k.k2[t + 1][nx][y2].is_zero()) continue;
              children[{y1, y2}][nx] += base * k.k1[t + 1][nx][y1] * k.k2[t + 1][nx][y2];
            }
          }
        }
      }
      for (auto& [obs, mass] : children) {
        M1Node child = br.node;
        child.y1.push_back(obs.first);
        child.y2.push_back(obs.second);
        child.u1.push_back(u1);
        child.u2.push_back(u2);
        next.push_back({child, mass, br.exec});
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace teamdp
