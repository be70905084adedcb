#pragma once

#include <compare>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "teamdp/model.hpp"
#include "teamdp/rational.hpp"

namespace teamdp {

class Prescription;  // prescriptions.hpp; broken cycle, beliefs only name it

// Agent 1's private information after stage t: its own observations
// y1_0..y1_t and actions u1_0..u1_(t-1). Everything else agent 1 knows is
// also known to agent 2 (the sharing is one-way, 2 -> 1).
struct PrivateHistory {
  std::vector<int> y1;
  std::vector<int> u1;

  int stage() const { return static_cast<int>(y1.size()) - 1; }

  PrivateHistory extended(int y_next, int u_taken) const {
    PrivateHistory h = *this;
    h.u1.push_back(u_taken);
    h.y1.push_back(y_next);
    return h;
  }

  // Interleaved chronological order: y0, u0, y1, u1, ..., yt.
  std::string str(const TeamModel& m) const;

  friend std::strong_ordering operator<=>(const PrivateHistory& a, const PrivateHistory& b);
  friend bool operator==(const PrivateHistory& a, const PrivateHistory& b) = default;
};

// Distribution over states, canonical form: entries sorted by state index,
// zero entries dropped, values in lowest terms summing to one. Canonical
// form doubles as the equality/memoization key, so two routes to the same
// conditional distribution compare equal.
struct Belief1 {
  std::vector<std::pair<int, Rational>> p;

  Rational at(int x) const;
  std::string str(const TeamModel& m, int t) const;  // "up=2/3;down=1/3"

  // Normalizes a mass vector (may contain zeros) into canonical form.
  // Total mass zero is a conditioning error: throws NullEventError.
  static Belief1 normalized(const std::vector<Rational>& mass);

  friend std::strong_ordering operator<=>(const Belief1& a, const Belief1& b) = default;
  friend bool operator==(const Belief1& a, const Belief1& b) = default;
};

// Agent 2's information state at stage t: a joint distribution over the
// current state and agent 1's private history, conditioned on agent 2's
// observations, past shared actions and past prescriptions. Canonical form:
// entries sorted by (state index, history), zeros dropped.
struct Belief2 {
  struct Entry {
    int x;
    PrivateHistory l;
    Rational prob;
    friend std::strong_ordering operator<=>(const Entry& a, const Entry& b) = default;
    friend bool operator==(const Entry& a, const Entry& b) = default;
  };

  int t = 0;
  std::vector<Entry> p;

  std::string str(const TeamModel& m) const;  // "(up,g)=2/3;(down,g)=1/3"

  friend std::strong_ordering operator<=>(const Belief2& a, const Belief2& b) = default;
  friend bool operator==(const Belief2& a, const Belief2& b) = default;
};

// What agent 2 learns between stages: its next observation plus the shared
// action it just took.
struct NewInfo2 {
  int y2_next;
  int u2_taken;
};

// Agent 2's first information state, conditioned on its first observation.
// Support runs over (x, l=(y1_0)). Throws InconsistentObservationError if
// y2_0 has probability zero under the prior.
Belief2 initial_belief2(const TeamModel& m, int y2_0);

// The reconstruction map: agent 1's belief is the slice of agent 2's
// belief at agent 1's actual private history, renormalized. Throws
// NullEventError when the history has zero mass under pi2.
Belief1 reconstruct_belief1(const Belief2& pi2, const PrivateHistory& l);

// Agent 1's own one-step filter: prior pi1 at stage t, both actions, both
// next observations (agent 1 sees agent 2's data too). Returns the stage
// t+1 belief; throws InconsistentObservationError when the pair
// (y1_next, y2_next) has probability zero.
Belief1 update_belief1(const TeamModel& m, int t, const Belief1& pi1, int u1, int u2,
                       int y1_next, int y2_next);

// Agent 2's one-step filter. The prescription gamma is what agent 2 told
// agent 1 to do at stage t (a map from reconstructed beliefs to agent-1
// actions); z2 carries agent 2's next observation and its own stage-t
// action. Throws InconsistentObservationError when z2 has probability zero.
Belief2 update_belief2(const TeamModel& m, const Belief2& pi2, const Prescription& gamma,
                       const NewInfo2& z2);

// Distribution of agent 2's next observation given its current belief, the
// stage-t prescription, and its own action. Indexed by obs2[t+1].
std::vector<Rational> z2_distribution(const TeamModel& m, const Belief2& pi2,
                                      const Prescription& gamma, int u2);

// Expected stage-t cost under agent 1's belief and fixed actions.
Rational reduced_cost1(const TeamModel& m, int t, const Belief1& pi1, int u1, int u2);

// Expected stage-t cost under agent 2's belief when agent 1 follows the
// prescription and agent 2 plays u2.
Rational reduced_cost2(const TeamModel& m, int t, const Belief2& pi2, const Prescription& gamma,
                       int u2);

}  // namespace teamdp
