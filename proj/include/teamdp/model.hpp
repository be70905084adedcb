#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "teamdp/rational.hpp"

namespace teamdp {

// A finite two-agent sequential team instance. Time runs t = 0..horizon
// inclusive and both agents act at every stage, including the last one;
// the disturbance only exists for t < horizon (there is no state beyond
// the horizon to drive).
//
// All spaces are per-stage label lists; every table is stored flat per
// stage and indexed by label positions. Entries may be missing (partial
// tables are representable so validation can report them); validate()
// must pass before the solver or the oracle touch an instance.
struct TeamModel {
  int horizon = 0;

  // Spaces, one label list per stage. states/actions*/obs* have
  // horizon+1 entries. Disturbance and noise label lists double as the
  // support of their stage distributions: w has horizon entries (none
  // needed at the last stage), v1/v2 have horizon+1.
  std::vector<std::vector<std::string>> states;
  std::vector<std::vector<std::string>> actions1;
  std::vector<std::vector<std::string>> actions2;
  std::vector<std::vector<std::string>> obs1;
  std::vector<std::vector<std::string>> obs2;
  std::vector<std::vector<std::string>> w_labels;
  std::vector<std::vector<std::string>> v1_labels;
  std::vector<std::vector<std::string>> v2_labels;

  // Probabilities aligned with the label lists above.
  std::vector<Rational> x0;                     // over states[0]
  std::vector<std::vector<Rational>> w_prob;    // [t] over w_labels[t]
  std::vector<std::vector<Rational>> v1_prob;   // [t] over v1_labels[t]
  std::vector<std::vector<Rational>> v2_prob;   // [t] over v2_labels[t]

  // Tables, flat per stage; -1 / nullopt marks a missing entry.
  // transition[t] is indexed by ((x*|U1|+u1)*|U2|+u2)*|W|+w and holds a
  // state index into states[t+1]. obs_fnK[t] is indexed by x*|VK|+v and
  // holds an observation index. cost[t] is indexed by (x*|U1|+u1)*|U2|+u2.
  std::vector<std::vector<int>> transition;
  std::vector<std::vector<int>> obs_fn1;
  std::vector<std::vector<int>> obs_fn2;
  std::vector<std::vector<std::optional<Rational>>> cost;

  int n_states(int t) const { return static_cast<int>(states.at(t).size()); }
  int n_u1(int t) const { return static_cast<int>(actions1.at(t).size()); }
  int n_u2(int t) const { return static_cast<int>(actions2.at(t).size()); }
  int n_y1(int t) const { return static_cast<int>(obs1.at(t).size()); }
  int n_y2(int t) const { return static_cast<int>(obs2.at(t).size()); }
  int n_w(int t) const { return static_cast<int>(w_labels.at(t).size()); }
  int n_v1(int t) const { return static_cast<int>(v1_labels.at(t).size()); }
  int n_v2(int t) const { return static_cast<int>(v2_labels.at(t).size()); }

  // Sizes all tables to "missing" for the declared spaces. Call after the
  // spaces are filled in, before populating entries.
  void allocate_tables();

  int next_state(int t, int x, int u1, int u2, int w) const {
    return transition[t][((static_cast<std::size_t>(x) * n_u1(t) + u1) * n_u2(t) + u2) * n_w(t) + w];
  }
  int obs1_of(int t, int x, int v) const { return obs_fn1[t][static_cast<std::size_t>(x) * n_v1(t) + v]; }
  int obs2_of(int t, int x, int v) const { return obs_fn2[t][static_cast<std::size_t>(x) * n_v2(t) + v]; }
  const Rational& stage_cost(int t, int x, int u1, int u2) const {
    return *cost[t][(static_cast<std::size_t>(x) * n_u1(t) + u1) * n_u2(t) + u2];
  }

  void set_next_state(int t, int x, int u1, int u2, int w, int nx) {
    transition[t][((static_cast<std::size_t>(x) * n_u1(t) + u1) * n_u2(t) + u2) * n_w(t) + w] = nx;
  }
  void set_obs1(int t, int x, int v, int y) { obs_fn1[t][static_cast<std::size_t>(x) * n_v1(t) + v] = y; }
  void set_obs2(int t, int x, int v, int y) { obs_fn2[t][static_cast<std::size_t>(x) * n_v2(t) + v] = y; }
  void set_stage_cost(int t, int x, int u1, int u2, Rational c) {
    cost[t][(static_cast<std::size_t>(x) * n_u1(t) + u1) * n_u2(t) + u2] = std::move(c);
  }
};

// Loads a model document from a JSON file. Throws IoError if the file
// cannot be read, ParseError on malformed JSON / wrong shapes / unknown
// keys, ValidationError naming the first violated model invariant.
TeamModel load_model(const std::string& path);

// Same, from an in-memory JSON text.
TeamModel load_model_text(const std::string& text);

// Loads without enforcing the model invariants, so a caller can present
// the complete validate_model listing instead of the first violation.
// Structural errors (unreadable file, malformed JSON, unknown keys or
// labels) still throw.
TeamModel load_model_unchecked(const std::string& path);
TeamModel load_model_text_unchecked(const std::string& text);

// Checks every invariant of a structurally complete TeamModel and returns
// one human-readable line per violation (empty means valid). Does not
// throw on violations; throws nothing for a well-shaped struct.
std::vector<std::string> validate_model(const TeamModel& m);

// Canonical JSON serialization: per-stage space lists, probabilities as
// "p/q" strings, table entries sorted by index tuples, two-space indent.
// load_model_text(serialize_model(m)) reproduces m exactly for any model
// that passes validation.
std::string serialize_model(const TeamModel& m);

// FNV-1a 64-bit over serialize_model(m), as 16 lowercase hex digits.
// Policy files carry it so a policy is never replayed against a
// different model.
std::string model_fingerprint(const TeamModel& m);

// P(y | t, x) for agent k's observation at stage t in state x, obtained
// by summing noise probabilities over the observation function. Rows are
// exact distributions over obs_k[t].
std::vector<Rational> observation_kernel(const TeamModel& m, int agent, int t, int x);

}  // namespace teamdp
