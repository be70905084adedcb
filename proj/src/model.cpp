#include "teamdp/model.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "teamdp/errors.hpp"

namespace teamdp {

using nlohmann::json;

namespace {

// Labels appear inside comma/paren-structured text encodings (histories,
// belief supports, policy files), so the alphabet is restricted to keep
// those encodings unambiguous without escaping.
bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '+' || c == '-';
    if (!ok) return false;
  }
  return true;
}

int find_label(const std::vector<std::string>& labels, const std::string& s) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  return -1;
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) { known = true; break; }
    if (!known) throw ParseError(where + ": unknown key '" + it.key() + "'");
  }
}

std::string label_of(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) throw ParseError(where + ": '" + std::string(key) + "' must be a string");
  return v.get<std::string>();
}

int stage_of(const json& j, const std::string& where) {
  const json& v = need(j, "t", where);
  if (!v.is_number_integer()) throw ParseError(where + ": 't' must be an integer");
  return v.get<int>();
}

// Probabilities and costs are exact: a "p/q" string or a JSON integer.
// Floats are rejected so no value ever passes through a double.
Rational exact_number(const json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return Rational::parse(v.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ParseError(where + ": expected \"p/q\" string or integer");
}

// A space key holds either one shared label list (array of strings) or one
// list per stage (array of `count` arrays).
std::vector<std::vector<std::string>> parse_space(const json& v, const std::string& name,
                                                  int count) {
  if (!v.is_array()) throw ParseError(name + ": expected an array");
  bool shared = true;
  for (const json& e : v)
    if (!e.is_string()) { shared = false; break; }
  if (shared) {
    std::vector<std::string> labels = v.get<std::vector<std::string>>();
    return std::vector<std::vector<std::string>>(count, labels);
  }
  for (const json& e : v)
    if (!e.is_array()) throw ParseError(name + ": expected strings or per-stage arrays of strings");
  if (static_cast<int>(v.size()) != count)
    throw ParseError(name + ": per-stage form must have " + std::to_string(count) +
                     " lists, got " + std::to_string(v.size()));
  std::vector<std::vector<std::string>> out;
  for (const json& e : v) {
    for (const json& s : e)
      if (!s.is_string()) throw ParseError(name + ": labels must be strings");
    out.push_back(e.get<std::vector<std::string>>());
  }
  return out;
}

// Distribution lists ({"label","prob"} objects) both name a primitive space
// and weight it; duplicates would make the space ill-defined.
void parse_dist(const json& v, const std::string& name, std::vector<std::string>* labels,
                std::vector<Rational>* probs) {
  if (!v.is_array()) throw ParseError(name + ": expected an array of {label, prob} entries");
  for (const json& e : v) {
    if (!e.is_object()) throw ParseError(name + ": entries must be objects");
    reject_unknown_keys(e, {"label", "prob"}, name);
    std::string label = label_of(e, "label", name);
    Rational p = exact_number(need(e, "prob", name), name);
    if (find_label(*labels, label) >= 0)
      throw ValidationError(name + ": duplicate label '" + label + "'");
    labels->push_back(label);
    probs->push_back(std::move(p));
  }
}

TeamModel build_model(const json& doc) {
  if (!doc.is_object()) throw ParseError("model document must be a JSON object");
  reject_unknown_keys(doc,
                      {"horizon", "states", "actions1", "actions2", "obs1", "obs2", "w", "v1",
                       "v2", "x0", "transition", "obs_fn1", "obs_fn2", "cost"},
                      "model");

  const json& hj = need(doc, "horizon", "model");
  if (!hj.is_number_integer()) throw ParseError("horizon: must be an integer");
  int T = hj.get<int>();
  if (T < 0) throw ValidationError("horizon: must be >= 0, got " + std::to_string(T));

  TeamModel m;
  m.horizon = T;
  m.states = parse_space(need(doc, "states", "model"), "states", T + 1);
  m.actions1 = parse_space(need(doc, "actions1", "model"), "actions1", T + 1);
  m.actions2 = parse_space(need(doc, "actions2", "model"), "actions2", T + 1);
  m.obs1 = parse_space(need(doc, "obs1", "model"), "obs1", T + 1);
  m.obs2 = parse_space(need(doc, "obs2", "model"), "obs2", T + 1);

  // Disturbance/noise distributions are strictly per-stage: w has one list
  // per transition (none at the horizon), v1/v2 one per observation stage.
  auto parse_dists = [](const json& v, const std::string& name, int count,
                        std::vector<std::vector<std::string>>* labels,
                        std::vector<std::vector<Rational>>* probs) {
    if (!v.is_array() || static_cast<int>(v.size()) != count)
      throw ParseError(name + ": expected " + std::to_string(count) + " per-stage lists");
    labels->resize(count);
    probs->resize(count);
    for (int t = 0; t < count; ++t)
      parse_dist(v[t], name + "[" + std::to_string(t) + "]", &(*labels)[t], &(*probs)[t]);
  };
  parse_dists(need(doc, "w", "model"), "w", T, &m.w_labels, &m.w_prob);
  parse_dists(need(doc, "v1", "model"), "v1", T + 1, &m.v1_labels, &m.v1_prob);
  parse_dists(need(doc, "v2", "model"), "v2", T + 1, &m.v2_labels, &m.v2_prob);

  // Label lookup requires unambiguous lists; duplicates are fatal here,
  // before any table entry is resolved.
  auto check_dups = [](const std::vector<std::vector<std::string>>& lists,
                       const std::string& name) {
    for (std::size_t t = 0; t < lists.size(); ++t) {
      std::set<std::string> seen;
      for (const std::string& s : lists[t])
        if (!seen.insert(s).second)
          throw ValidationError(name + "[" + std::to_string(t) + "]: duplicate label '" + s + "'");
    }
  };
  check_dups(m.states, "states");
  check_dups(m.actions1, "actions1");
  check_dups(m.actions2, "actions2");
  check_dups(m.obs1, "obs1");
  check_dups(m.obs2, "obs2");

  // x0 is a distribution over the declared initial states; labels omitted
  // from the list get probability zero.
  {
    std::vector<std::string> labels;
    std::vector<Rational> probs;
    parse_dist(need(doc, "x0", "model"), "x0", &labels, &probs);
    m.x0.assign(m.n_states(0), Rational(0));
    for (std::size_t i = 0; i < labels.size(); ++i) {
      int x = find_label(m.states[0], labels[i]);
      if (x < 0) throw ValidationError("x0: unknown state label '" + labels[i] + "'");
      m.x0[x] = probs[i];
    }
  }

  m.allocate_tables();

  auto resolve = [](const std::vector<std::string>& labels, const std::string& s,
                    const std::string& where, const std::string& what) {
    int i = find_label(labels, s);
    if (i < 0) throw ValidationError(where + ": unknown " + what + " label '" + s + "'");
    return i;
  };

  {
    const json& tr = need(doc, "transition", "model");
    if (!tr.is_array()) throw ParseError("transition: expected an array");
    for (const json& e : tr) {
      if (!e.is_object()) throw ParseError("transition: entries must be objects");
      reject_unknown_keys(e, {"t", "x", "u1", "u2", "w", "next"}, "transition");
      int t = stage_of(e, "transition");
      if (t < 0 || t >= T)
        throw ValidationError("transition: stage " + std::to_string(t) + " out of range");
      int x = resolve(m.states[t], label_of(e, "x", "transition"), "transition", "state");
      int u1 = resolve(m.actions1[t], label_of(e, "u1", "transition"), "transition", "action1");
      int u2 = resolve(m.actions2[t], label_of(e, "u2", "transition"), "transition", "action2");
      int w = resolve(m.w_labels[t], label_of(e, "w", "transition"), "transition", "disturbance");
      int nx = resolve(m.states[t + 1], label_of(e, "next", "transition"), "transition", "state");
      if (m.next_state(t, x, u1, u2, w) != -1)
        throw ValidationError("transition: duplicate entry (t=" + std::to_string(t) + ", x=" +
                              m.states[t][x] + ", u1=" + m.actions1[t][u1] + ", u2=" +
                              m.actions2[t][u2] + ", w=" + m.w_labels[t][w] + ")");
      m.set_next_state(t, x, u1, u2, w, nx);
    }
  }

  auto load_obs = [&](const char* key, int agent) {
    const json& ob = need(doc, key, "model");
    if (!ob.is_array()) throw ParseError(std::string(key) + ": expected an array");
    for (const json& e : ob) {
      if (!e.is_object()) throw ParseError(std::string(key) + ": entries must be objects");
      reject_unknown_keys(e, {"t", "x", "v", "y"}, key);
      int t = stage_of(e, key);
      if (t < 0 || t > T)
        throw ValidationError(std::string(key) + ": stage " + std::to_string(t) + " out of range");
      const auto& vl = agent == 1 ? m.v1_labels[t] : m.v2_labels[t];
      const auto& yl = agent == 1 ? m.obs1[t] : m.obs2[t];
      int x = resolve(m.states[t], label_of(e, "x", key), key, "state");
      int v = resolve(vl, label_of(e, "v", key), key, "noise");
      int y = resolve(yl, label_of(e, "y", key), key, "observation");
      int prev = agent == 1 ? m.obs1_of(t, x, v) : m.obs2_of(t, x, v);
      if (prev != -1)
        throw ValidationError(std::string(key) + ": duplicate entry (t=" + std::to_string(t) +
                              ", x=" + m.states[t][x] + ", v=" + vl[v] + ")");
      if (agent == 1)
        m.set_obs1(t, x, v, y);
      else
        m.set_obs2(t, x, v, y);
    }
  };
  load_obs("obs_fn1", 1);
  load_obs("obs_fn2", 2);

  {
    const json& co = need(doc, "cost", "model");
    if (!co.is_array()) throw ParseError("cost: expected an array");
    for (const json& e : co) {
      if (!e.is_object()) throw ParseError("cost: entries must be objects");
      reject_unknown_keys(e, {"t", "x", "u1", "u2", "value"}, "cost");
      int t = stage_of(e, "cost");
      if (t < 0 || t > T)
        throw ValidationError("cost: stage " + std::to_string(t) + " out of range");
      int x = resolve(m.states[t], label_of(e, "x", "cost"), "cost", "state");
      int u1 = resolve(m.actions1[t], label_of(e, "u1", "cost"), "cost", "action1");
      int u2 = resolve(m.actions2[t], label_of(e, "u2", "cost"), "cost", "action2");
      if (m.cost[t][(static_cast<std::size_t>(x) * m.n_u1(t) + u1) * m.n_u2(t) + u2])
        throw ValidationError("cost: duplicate entry (t=" + std::to_string(t) + ", x=" +
                              m.states[t][x] + ", u1=" + m.actions1[t][u1] + ", u2=" +
                              m.actions2[t][u2] + ")");
      m.set_stage_cost(t, x, u1, u2, exact_number(need(e, "value", "cost"), "cost"));
    }
  }

  return m;
}

void check_valid_or_throw(const TeamModel& m) {
  std::vector<std::string> violations = validate_model(m);
  if (!violations.empty()) throw ValidationError(violations.front());
}

}  // namespace

void TeamModel::allocate_tables() {
  transition.assign(horizon, {});
  for (int t = 0; t < horizon; ++t)
    transition[t].assign(static_cast<std::size_t>(n_states(t)) * n_u1(t) * n_u2(t) * n_w(t), -1);
  obs_fn1.assign(horizon + 1, {});
  obs_fn2.assign(horizon + 1, {});
  cost.assign(horizon + 1, {});
  for (int t = 0; t <= horizon; ++t) {
    obs_fn1[t].assign(static_cast<std::size_t>(n_states(t)) * n_v1(t), -1);
    obs_fn2[t].assign(static_cast<std::size_t>(n_states(t)) * n_v2(t), -1);
    cost[t].assign(static_cast<std::size_t>(n_states(t)) * n_u1(t) * n_u2(t), std::nullopt);
  }
}

TeamModel load_model_text_unchecked(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model: invalid JSON: ") + e.what());
  }
  return build_model(doc);
}

TeamModel load_model_text(const std::string& text) {
  TeamModel m = load_model_text_unchecked(text);
  check_valid_or_throw(m);
  return m;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read model file '" + path + "'");
  return buf.str();
}

}  // namespace

TeamModel load_model(const std::string& path) { return load_model_text(read_file(path)); }

TeamModel load_model_unchecked(const std::string& path) {
  return load_model_text_unchecked(read_file(path));
}

std::vector<std::string> validate_model(const TeamModel& m) {
  std::vector<std::string> out;
  auto bad = [&](std::string msg) { out.push_back(std::move(msg)); };

  if (m.horizon < 0) {
    bad("horizon: must be >= 0, got " + std::to_string(m.horizon));
    return out;
  }
  int T = m.horizon;

  // Shape sanity first: everything below indexes by stage.
  auto shape = [&](std::size_t got, std::size_t want, const char* name) {
    if (got != want)
      bad(std::string(name) + ": expected " + std::to_string(want) + " per-stage lists, got " +
          std::to_string(got));
  };
  shape(m.states.size(), T + 1, "states");
  shape(m.actions1.size(), T + 1, "actions1");
  shape(m.actions2.size(), T + 1, "actions2");
  shape(m.obs1.size(), T + 1, "obs1");
  shape(m.obs2.size(), T + 1, "obs2");
  shape(m.w_labels.size(), T, "w");
  shape(m.v1_labels.size(), T + 1, "v1");
  shape(m.v2_labels.size(), T + 1, "v2");
  shape(m.w_prob.size(), T, "w");
  shape(m.v1_prob.size(), T + 1, "v1");
  shape(m.v2_prob.size(), T + 1, "v2");
  shape(m.transition.size(), T, "transition");
  shape(m.obs_fn1.size(), T + 1, "obs_fn1");
  shape(m.obs_fn2.size(), T + 1, "obs_fn2");
  shape(m.cost.size(), T + 1, "cost");
  if (!out.empty()) return out;  // indexing below would be unsafe

  auto check_space = [&](const std::vector<std::vector<std::string>>& lists, const char* name) {
    for (std::size_t t = 0; t < lists.size(); ++t) {
      std::string where = std::string(name) + "[" + std::to_string(t) + "]";
      if (lists[t].empty()) bad(where + ": empty space");
      std::set<std::string> seen;
      for (const std::string& s : lists[t]) {
        if (!valid_label(s))
          bad(where + ": label '" + s + "' not in [A-Za-z0-9_.+-]");
        if (!seen.insert(s).second) bad(where + ": duplicate label '" + s + "'");
      }
    }
  };
  check_space(m.states, "states");
  check_space(m.actions1, "actions1");
  check_space(m.actions2, "actions2");
  check_space(m.obs1, "obs1");
  check_space(m.obs2, "obs2");
  check_space(m.w_labels, "w");
  check_space(m.v1_labels, "v1");
  check_space(m.v2_labels, "v2");
  if (!out.empty()) return out;  // table checks assume well-formed spaces

  auto check_dist = [&](const std::vector<Rational>& probs, std::size_t want,
                        const std::string& where) {
    if (probs.size() != want) {
      bad(where + ": " + std::to_string(probs.size()) + " probabilities for " +
          std::to_string(want) + " labels");
      return;
    }
    Rational sum(0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (probs[i].is_negative()) bad(where + ": negative probability at index " + std::to_string(i));
      sum += probs[i];
    }
    if (!(sum == Rational(1)))
      bad(where + ": distribution not normalized (sum " + sum.str() + ")");
  };
  check_dist(m.x0, m.states[0].size(), "x0");
  for (int t = 0; t < T; ++t)
    check_dist(m.w_prob[t], m.w_labels[t].size(), "w[" + std::to_string(t) + "]");
  for (int t = 0; t <= T; ++t) {
    check_dist(m.v1_prob[t], m.v1_labels[t].size(), "v1[" + std::to_string(t) + "]");
    check_dist(m.v2_prob[t], m.v2_labels[t].size(), "v2[" + std::to_string(t) + "]");
  }

  for (int t = 0; t < T; ++t) {
    std::size_t want = static_cast<std::size_t>(m.n_states(t)) * m.n_u1(t) * m.n_u2(t) * m.n_w(t);
    if (m.transition[t].size() != want) {
      bad("transition: wrong table size at t=" + std::to_string(t));
      continue;
    }
    for (int x = 0; x < m.n_states(t); ++x)
      for (int u1 = 0; u1 < m.n_u1(t); ++u1)
        for (int u2 = 0; u2 < m.n_u2(t); ++u2)
          for (int w = 0; w < m.n_w(t); ++w) {
            int nx = m.next_state(t, x, u1, u2, w);
            std::string cell = "(t=" + std::to_string(t) + ", x=" + m.states[t][x] + ", u1=" +
                               m.actions1[t][u1] + ", u2=" + m.actions2[t][u2] + ", w=" +
                               m.w_labels[t][w] + ")";
            if (nx == -1)
              bad("transition: table not total (missing " + cell + ")");
            else if (nx < 0 || nx >= m.n_states(t + 1))
              bad("transition: entry out of range at " + cell);
          }
  }

  auto check_obs = [&](int agent, const char* name) {
    for (int t = 0; t <= T; ++t) {
      int nv = agent == 1 ? m.n_v1(t) : m.n_v2(t);
      int ny = agent == 1 ? m.n_y1(t) : m.n_y2(t);
      const auto& table = agent == 1 ? m.obs_fn1[t] : m.obs_fn2[t];
      const auto& vl = agent == 1 ? m.v1_labels[t] : m.v2_labels[t];
      if (table.size() != static_cast<std::size_t>(m.n_states(t)) * nv) {
        bad(std::string(name) + ": wrong table size at t=" + std::to_string(t));
        continue;
      }
      for (int x = 0; x < m.n_states(t); ++x)
        for (int v = 0; v < nv; ++v) {
          int y = table[static_cast<std::size_t>(x) * nv + v];
          std::string cell = "(t=" + std::to_string(t) + ", x=" + m.states[t][x] + ", v=" +
                             vl[v] + ")";
          if (y == -1)
            bad(std::string(name) + ": table not total (missing " + cell + ")");
          else if (y < 0 || y >= ny)
            bad(std::string(name) + ": entry out of range at " + cell);
        }
    }
  };
  check_obs(1, "obs_fn1");
  check_obs(2, "obs_fn2");

  for (int t = 0; t <= T; ++t) {
    std::size_t want = static_cast<std::size_t>(m.n_states(t)) * m.n_u1(t) * m.n_u2(t);
    if (m.cost[t].size() != want) {
      bad("cost: wrong table size at t=" + std::to_string(t));
      continue;
    }
    for (int x = 0; x < m.n_states(t); ++x)
      for (int u1 = 0; u1 < m.n_u1(t); ++u1)
        for (int u2 = 0; u2 < m.n_u2(t); ++u2) {
          const auto& c = m.cost[t][(static_cast<std::size_t>(x) * m.n_u1(t) + u1) * m.n_u2(t) + u2];
          std::string cell = "(t=" + std::to_string(t) + ", x=" + m.states[t][x] + ", u1=" +
                             m.actions1[t][u1] + ", u2=" + m.actions2[t][u2] + ")";
          if (!c)
            bad("cost: table not total (missing " + cell + ")");
          else if (c->is_negative())
            bad("cost: negative cost at " + cell);
        }
  }

  return out;
}

std::string serialize_model(const TeamModel& m) {
  json doc;
  doc["horizon"] = m.horizon;
  auto put_space = [&](const char* key, const std::vector<std::vector<std::string>>& lists) {
    doc[key] = lists;  // always per-stage form: canonical
  };
  put_space("states", m.states);
  put_space("actions1", m.actions1);
  put_space("actions2", m.actions2);
  put_space("obs1", m.obs1);
  put_space("obs2", m.obs2);

  auto dist_json = [](const std::vector<std::string>& labels, const std::vector<Rational>& probs) {
    json arr = json::array();
    for (std::size_t i = 0; i < labels.size(); ++i)
      arr.push_back({{"label", labels[i]}, {"prob", probs[i].str()}});
    return arr;
  };
  {
    json warr = json::array(), v1arr = json::array(), v2arr = json::array();
    for (int t = 0; t < m.horizon; ++t) warr.push_back(dist_json(m.w_labels[t], m.w_prob[t]));
    for (int t = 0; t <= m.horizon; ++t) {
      v1arr.push_back(dist_json(m.v1_labels[t], m.v1_prob[t]));
      v2arr.push_back(dist_json(m.v2_labels[t], m.v2_prob[t]));
    }
    doc["w"] = warr;
    doc["v1"] = v1arr;
    doc["v2"] = v2arr;
  }
  doc["x0"] = dist_json(m.states[0], m.x0);

  {
    json arr = json::array();
    for (int t = 0; t < m.horizon; ++t)
      for (int x = 0; x < m.n_states(t); ++x)
        for (int u1 = 0; u1 < m.n_u1(t); ++u1)
          for (int u2 = 0; u2 < m.n_u2(t); ++u2)
            for (int w = 0; w < m.n_w(t); ++w)
              arr.push_back({{"t", t},
                             {"x", m.states[t][x]},
                             {"u1", m.actions1[t][u1]},
                             {"u2", m.actions2[t][u2]},
                             {"w", m.w_labels[t][w]},
                             {"next", m.states[t + 1][m.next_state(t, x, u1, u2, w)]}});
    doc["transition"] = arr;
  }
  auto obs_json = [&](int agent) {
    json arr = json::array();
    for (int t = 0; t <= m.horizon; ++t) {
      int nv = agent == 1 ? m.n_v1(t) : m.n_v2(t);
      const auto& vl = agent == 1 ? m.v1_labels[t] : m.v2_labels[t];
      const auto& yl = agent == 1 ? m.obs1[t] : m.obs2[t];
      for (int x = 0; x < m.n_states(t); ++x)
        for (int v = 0; v < nv; ++v) {
          int y = agent == 1 ? m.obs1_of(t, x, v) : m.obs2_of(t, x, v);
          arr.push_back({{"t", t}, {"x", m.states[t][x]}, {"v", vl[v]}, {"y", yl[y]}});
        }
    }
    return arr;
  };
  doc["obs_fn1"] = obs_json(1);
  doc["obs_fn2"] = obs_json(2);
  {
    json arr = json::array();
    for (int t = 0; t <= m.horizon; ++t)
      for (int x = 0; x < m.n_states(t); ++x)
        for (int u1 = 0; u1 < m.n_u1(t); ++u1)
          for (int u2 = 0; u2 < m.n_u2(t); ++u2)
            arr.push_back({{"t", t},
                           {"x", m.states[t][x]},
                           {"u1", m.actions1[t][u1]},
                           {"u2", m.actions2[t][u2]},
                           {"value", m.stage_cost(t, x, u1, u2).str()}});
    doc["cost"] = arr;
  }
  return doc.dump(2) + "\n";
}

std::string model_fingerprint(const TeamModel& m) {
  std::string text = serialize_model(m);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::vector<Rational> observation_kernel(const TeamModel& m, int agent, int t, int x) {
  if (agent != 1 && agent != 2) throw Error("observation_kernel: agent must be 1 or 2");
  if (t < 0 || t > m.horizon) throw Error("observation_kernel: stage out of range");
  if (x < 0 || x >= m.n_states(t)) throw Error("observation_kernel: state out of range");
  int nv = agent == 1 ? m.n_v1(t) : m.n_v2(t);
  int ny = agent == 1 ? m.n_y1(t) : m.n_y2(t);
  const auto& vp = agent == 1 ? m.v1_prob[t] : m.v2_prob[t];
  std::vector<Rational> row(ny, Rational(0));
  for (int v = 0; v < nv; ++v) {
    int y = agent == 1 ? m.obs1_of(t, x, v) : m.obs2_of(t, x, v);
    if (y < 0) throw ValidationError("observation_kernel: observation function not total");
    row[y] += vp[v];
  }
  return row;
}

}  // namespace teamdp
