#include "teamdp/beliefs.hpp"

#include <algorithm>
#include <map>

#include "teamdp/errors.hpp"
#include "teamdp/prescriptions.hpp"

namespace teamdp {

std::string PrivateHistory::str(const TeamModel& m) const {
  std::string out;
  for (std::size_t i = 0; i < y1.size(); ++i) {
    if (i > 0) out += "," + m.actions1[i - 1][u1[i - 1]] + ",";
    out += m.obs1[i][y1[i]];
  }
  return out;
}

std::strong_ordering operator<=>(const PrivateHistory& a, const PrivateHistory& b) {
  // chronological: y0, u0, y1, u1, ..., yt; shorter prefix first
  std::size_t n = std::min(a.y1.size(), b.y1.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.y1[i] <=> b.y1[i]; c != 0) return c;
    if (i < a.u1.size() && i < b.u1.size()) {
      if (auto c = a.u1[i] <=> b.u1[i]; c != 0) return c;
    } else if (i < a.u1.size() || i < b.u1.size()) {
      return a.u1.size() <=> b.u1.size();
    }
  }
  if (auto c = a.y1.size() <=> b.y1.size(); c != 0) return c;
  return a.u1.size() <=> b.u1.size();
}

Rational Belief1::at(int x) const {
  for (const auto& [xi, pi] : p)
    if (xi == x) return pi;
  return Rational(0);
}

std::string Belief1::str(const TeamModel& m, int t) const {
  std::string out;
  for (const auto& [x, prob] : p) {
    if (!out.empty()) out += ";";
    out += m.states[t][x] + "=" + prob.str();
  }
  return out;
}

Belief1 Belief1::normalized(const std::vector<Rational>& mass) {
  Rational total(0);
  for (const auto& v : mass) total += v;
  if (total.is_zero()) throw NullEventError("belief normalization over a zero-mass event");
  Belief1 out;
  for (std::size_t x = 0; x < mass.size(); ++x)
    if (!mass[x].is_zero()) out.p.emplace_back(static_cast<int>(x), mass[x] / total);
  return out;
}

std::string Belief2::str(const TeamModel& m) const {
  std::string out;
  for (const auto& e : p) {
    if (!out.empty()) out += ";";
    out += "(" + m.states[t][e.x] + "," + e.l.str(m) + ")=" + e.prob.str();
  }
  return out;
}

namespace {

// Shared finisher: sort support, drop zeros, divide by total mass.
Belief2 normalize_belief2(int t, std::map<std::pair<int, PrivateHistory>, Rational> mass,
                          const char* what) {
  Rational total(0);
  for (const auto& [k, v] : mass) total += v;
  if (total.is_zero()) throw InconsistentObservationError(what);
  Belief2 out;
  out.t = t;
  for (auto& [k, v] : mass)
    if (!v.is_zero()) out.p.push_back({k.first, k.second, v / total});
  return out;
}

}  // namespace

Belief2 initial_belief2(const TeamModel& m, int y2_0) {
  if (y2_0 < 0 || y2_0 >= m.n_y2(0)) throw Error("initial_belief2: observation out of range");
  std::map<std::pair<int, PrivateHistory>, Rational> mass;
  for (int x = 0; x < m.n_states(0); ++x) {
    if (m.x0[x].is_zero()) continue;
    auto k1 = observation_kernel(m, 1, 0, x);
    auto k2 = observation_kernel(m, 2, 0, x);
    if (k2[y2_0].is_zero()) continue;
    for (int y1 = 0; y1 < m.n_y1(0); ++y1) {
      if (k1[y1].is_zero()) continue;
      PrivateHistory l;
      l.y1.push_back(y1);
      mass[{x, l}] += m.x0[x] * k1[y1] * k2[y2_0];
    }
  }
  return normalize_belief2(0, std::move(mass),
                           "initial_belief2: first observation has probability zero");
}

Belief1 reconstruct_belief1(const Belief2& pi2, const PrivateHistory& l) {
  Rational total(0);
  std::vector<std::pair<int, Rational>> slice;
  for (const auto& e : pi2.p)
    if (e.l == l) {
      slice.emplace_back(e.x, e.prob);
      total += e.prob;
    }
  if (total.is_zero())
    throw NullEventError("reconstruct_belief1: private history has zero mass");
  Belief1 out;
  for (auto& [x, v] : slice) out.p.emplace_back(x, v / total);
  // pi2 support is sorted by (x, l), so the slice is already sorted by x
  return out;
}

Belief1 update_belief1(const TeamModel& m, int t, const Belief1& pi1, int u1, int u2,
                       int y1_next, int y2_next) {
  if (t < 0 || t >= m.horizon) throw Error("update_belief1: stage out of range");
  std::vector<Rational> mass(m.n_states(t + 1), Rational(0));
  for (const auto& [x, px] : pi1.p) {
    for (int w = 0; w < m.n_w(t); ++w) {
      if (m.w_prob[t][w].is_zero()) continue;
      int nx = m.next_state(t, x, u1, u2, w);
      mass[nx] += px * m.w_prob[t][w];
    }
  }
  for (int nx = 0; nx < m.n_states(t + 1); ++nx) {
    if (mass[nx].is_zero()) continue;
    auto k1 = observation_kernel(m, 1, t + 1, nx);
    auto k2 = observation_kernel(m, 2, t + 1, nx);
    mass[nx] *= k1[y1_next] * k2[y2_next];
  }
  try {
    return Belief1::normalized(mass);
  } catch (const NullEventError&) {
    throw InconsistentObservationError(
        "update_belief1: observation pair has probability zero");
  }
}

// Agent-1 actions under a prescription, one per distinct private history
// in the support. Reconstruction failures cannot happen here: every
// history in the support has positive mass by canonicality.
static std::map<PrivateHistory, int> actions_by_history(const Belief2& pi2,
                                                        const Prescription& gamma) {
  std::map<PrivateHistory, int> out;
  for (const auto& e : pi2.p)
    if (!out.count(e.l)) out[e.l] = gamma.apply(reconstruct_belief1(pi2, e.l));
  return out;
}

Belief2 update_belief2(const TeamModel& m, const Belief2& pi2, const Prescription& gamma,
                       const NewInfo2& z2) {
  int t = pi2.t;
  if (t < 0 || t >= m.horizon) throw Error("update_belief2: stage out of range");
  if (z2.y2_next < 0 || z2.y2_next >= m.n_y2(t + 1))
    throw Error("update_belief2: observation out of range");
  if (z2.u2_taken < 0 || z2.u2_taken >= m.n_u2(t))
    throw Error("update_belief2: action out of range");

  std::map<PrivateHistory, int> u1_of = actions_by_history(pi2, gamma);

  std::map<std::pair<int, PrivateHistory>, Rational> mass;
  for (const auto& e : pi2.p) {
    int u1 = u1_of.at(e.l);
    for (int w = 0; w < m.n_w(t); ++w) {
      if (m.w_prob[t][w].is_zero()) continue;
      int nx = m.next_state(t, e.x, u1, z2.u2_taken, w);
      auto k1 = observation_kernel(m, 1, t + 1, nx);
      auto k2 = observation_kernel(m, 2, t + 1, nx);
      if (k2[z2.y2_next].is_zero()) continue;
      Rational base = e.prob * m.w_prob[t][w] * k2[z2.y2_next];
      for (int y1 = 0; y1 < m.n_y1(t + 1); ++y1) {
        if (k1[y1].is_zero()) continue;
        mass[{nx, e.l.extended(y1, u1)}] += base * k1[y1];
      }
    }
  }
  return normalize_belief2(t + 1, std::move(mass),
                           "update_belief2: observation has probability zero");
}

std::vector<Rational> z2_distribution(const TeamModel& m, const Belief2& pi2,
                                      const Prescription& gamma, int u2) {
  int t = pi2.t;
  if (t < 0 || t >= m.horizon) throw Error("z2_distribution: stage out of range");
  if (u2 < 0 || u2 >= m.n_u2(t)) throw Error("z2_distribution: action out of range");
  std::map<PrivateHistory, int> u1_of = actions_by_history(pi2, gamma);
  std::vector<Rational> dist(m.n_y2(t + 1), Rational(0));
  for (const auto& e : pi2.p) {
    int u1 = u1_of.at(e.l);
    for (int w = 0; w < m.n_w(t); ++w) {
      if (m.w_prob[t][w].is_zero()) continue;
      int nx = m.next_state(t, e.x, u1, u2, w);
      auto k2 = observation_kernel(m, 2, t + 1, nx);
      for (int y2 = 0; y2 < m.n_y2(t + 1); ++y2) dist[y2] += e.prob * m.w_prob[t][w] * k2[y2];
    }
  }
  return dist;
}

Rational reduced_cost1(const TeamModel& m, int t, const Belief1& pi1, int u1, int u2) {
  Rational out(0);
  for (const auto& [x, px] : pi1.p) out += px * m.stage_cost(t, x, u1, u2);
  return out;
}

Rational reduced_cost2(const TeamModel& m, int t, const Belief2& pi2, const Prescription& gamma,
                       int u2) {
  std::map<PrivateHistory, int> u1_of = actions_by_history(pi2, gamma);
  Rational out(0);
  for (const auto& e : pi2.p) out += e.prob * m.stage_cost(t, e.x, u1_of.at(e.l), u2);
  return out;
}

}  // namespace teamdp
