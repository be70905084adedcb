#include "teamdp/dp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "teamdp/errors.hpp"

namespace teamdp {

std::pair<Rational, int> value_final_inner(const TeamModel& m, const Belief1& pi1, int u2) {
  int T = m.horizon;
  Rational best;
  int best_u1 = -1;
  for (int u1 = 0; u1 < m.n_u1(T); ++u1) {
    Rational v = reduced_cost1(m, T, pi1, u1, u2);
    if (best_u1 < 0 || v < best) {
      best = v;
      best_u1 = u1;
    }
  }
  return {best, best_u1};
}

std::pair<Rational, FinalDecision> value_final(const TeamModel& m, const Belief2& pi2) {
  if (pi2.t != m.horizon) throw Error("value_final: belief is not at the final stage");
  int T = m.horizon;

  // weight of each private history and the belief agent 1 holds there
  std::map<PrivateHistory, Rational> weight;
  for (const auto& e : pi2.p) weight[e.l] += e.prob;
  std::map<PrivateHistory, Belief1> recon;
  for (const auto& [l, wgt] : weight) recon.emplace(l, reconstruct_belief1(pi2, l));

  // agent 1's best response per (belief, u2), shared across histories that
  // reconstruct to the same belief
  FinalDecision dec;
  std::map<std::pair<Belief1, int>, Rational> inner_value;
  for (const auto& [l, pi1] : recon)
    for (int u2 = 0; u2 < m.n_u2(T); ++u2) {
      auto key = std::make_pair(pi1, u2);
      if (inner_value.count(key)) continue;
      auto [v, u1] = value_final_inner(m, pi1, u2);
      inner_value.emplace(key, v);
      dec.u1_of.emplace(key, u1);
    }

  Rational best;
  int best_u2 = -1;
  for (int u2 = 0; u2 < m.n_u2(T); ++u2) {
    Rational s(0);
    for (const auto& [l, wgt] : weight) s += wgt * inner_value.at({recon.at(l), u2});
    if (best_u2 < 0 || s < best) {
      best = s;
      best_u2 = u2;
    }
  }
  dec.u2 = best_u2;
  return {best, dec};
}

Solver::Solver(const TeamModel& m, SolverBounds bounds) : m_(m), bounds_(bounds) {}

const ValueCacheEntry& Solver::value(const Belief2& pi2) {
  auto it = cache_.find(pi2);
  if (it != cache_.end()) return it->second;
  if (bounds_.max_beliefs > 0 && static_cast<long>(cache_.size()) >= bounds_.max_beliefs)
    throw ResourceLimitError("solver: belief cache exceeds bound " +
                             std::to_string(bounds_.max_beliefs) + " (at stage " +
                             std::to_string(pi2.t) + ")");
  ValueCacheEntry entry = compute(pi2);
  return cache_.emplace(pi2, std::move(entry)).first->second;
}

ValueCacheEntry Solver::compute(const Belief2& pi2) {
  if (pi2.t < 0 || pi2.t > m_.horizon) throw Error("solver: belief stage out of range");
  if (pi2.t == m_.horizon) {
    auto [v, dec] = value_final(m_, pi2);
    ValueCacheEntry e;
    e.value = std::move(v);
    e.is_final = true;
    e.last = std::move(dec);
    return e;
  }

  int t = pi2.t;
  PrescriptionSet gammas =
      enumerate_prescriptions(t, prescription_domain(pi2), m_.n_u1(t), bounds_.max_prescriptions);
  bool first = true;
  Rational best;
  StepDecision best_dec;
  // lowest agent-2 action first, then lowest prescription index: with
  // strict improvement this keeps the lexicographically-first minimizer
  for (int u2 = 0; u2 < m_.n_u2(t); ++u2) {
    for (long gi = 0; gi < gammas.size(); ++gi) {
      Prescription gamma = gammas.at(gi);
      Rational val = reduced_cost2(m_, t, pi2, gamma, u2);
      std::vector<Rational> zdist = z2_distribution(m_, pi2, gamma, u2);
      for (int y2 = 0; y2 < m_.n_y2(t + 1); ++y2) {
        if (zdist[y2].is_zero()) continue;
        Belief2 child = update_belief2(m_, pi2, gamma, NewInfo2{y2, u2});
        val += zdist[y2] * value(child).value;
      }
      if (first || val < best) {
        best = std::move(val);
        best_dec = StepDecision{u2, std::move(gamma)};
        first = false;
      }
    }
  }
  ValueCacheEntry e;
  e.value = std::move(best);
  e.is_final = false;
  e.step = std::move(best_dec);
  return e;
}

SolvedPolicy Solver::solve() {
  // agent 2's first observation distribution under the prior
  std::vector<Rational> py2(m_.n_y2(0), Rational(0));
  for (int x = 0; x < m_.n_states(0); ++x) {
    if (m_.x0[x].is_zero()) continue;
    auto row = observation_kernel(m_, 2, 0, x);
    for (int y2 = 0; y2 < m_.n_y2(0); ++y2) py2[y2] += m_.x0[x] * row[y2];
  }
  Rational total(0);
  for (int y2 = 0; y2 < m_.n_y2(0); ++y2) {
    if (py2[y2].is_zero()) continue;
    total += py2[y2] * value(initial_belief2(m_, y2)).value;
  }
  SolvedPolicy sp;
  sp.fingerprint = model_fingerprint(m_);
  sp.value = std::move(total);
  sp.nodes = cache_;
  return sp;
}

FinalCheck final_stage_equivalence_check(const TeamModel& m, const Belief2& pi2,
                                         const SolverBounds& bounds) {
  FinalCheck out;
  out.two_step = value_final(m, pi2).first;
  int T = m.horizon;
  PrescriptionSet gammas =
      enumerate_prescriptions(T, prescription_domain(pi2), m.n_u1(T), bounds.max_prescriptions);
  bool first = true;
  for (int u2 = 0; u2 < m.n_u2(T); ++u2)
    for (long gi = 0; gi < gammas.size(); ++gi) {
      Rational v = reduced_cost2(m, T, pi2, gammas.at(gi), u2);
      if (first || v < out.direct) {
        out.direct = std::move(v);
        first = false;
      }
    }
  out.match = out.two_step == out.direct;
  return out;
}

// --- policy text form -------------------------------------------------------
//
// Line-oriented, versioned, deterministic. Grammar (labels are from the
// model, values always "p/q"):
//
//   policy-v1
//   fingerprint <16 hex>
//   value <p/q>
//   nodes <count>
//   ( node <index>
//     t <stage>
//     belief <belief2-encoding>
//     nodevalue <p/q>
//     u2 <action2-label>
//     gamma <count>            |  final <count>
//     <belief1> -> <label>     |  <belief1> | <label2> -> <label1>
//   )*
//   end

std::string serialize_policy(const TeamModel& m, const SolvedPolicy& policy) {
  std::ostringstream out;
  out << "policy-v1\n";
  out << "fingerprint " << policy.fingerprint << "\n";
  out << "value " << policy.value.str() << "\n";
  out << "nodes " << policy.nodes.size() << "\n";
  long i = 0;
  for (const auto& [pi2, entry] : policy.nodes) {
    out << "node " << i++ << "\n";
    out << "t " << pi2.t << "\n";
    out << "belief " << pi2.str(m) << "\n";
    out << "nodevalue " << entry.value.str() << "\n";
    if (entry.is_final) {
      out << "u2 " << m.actions2[pi2.t][entry.last.u2] << "\n";
      out << "final " << entry.last.u1_of.size() << "\n";
      for (const auto& [key, u1] : entry.last.u1_of)
        out << key.first.str(m, pi2.t) << " | " << m.actions2[pi2.t][key.second] << " -> "
            << m.actions1[pi2.t][u1] << "\n";
    } else {
      out << "u2 " << m.actions2[pi2.t][entry.step.u2] << "\n";
      out << "gamma " << entry.step.gamma.table().size() << "\n";
      for (const auto& [pi1, u1] : entry.step.gamma.table())
        out << pi1.str(m, pi2.t) << " -> " << m.actions1[pi2.t][u1] << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

namespace {

struct LineReader {
  std::vector<std::string> lines;
  std::size_t pos = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }
  std::string take(const char* what) {
    if (pos >= lines.size())
      throw ParseError(std::string("policy: unexpected end of file, expected ") + what);
    return lines[pos++];
  }
  // "key rest" -> rest
  std::string field(const char* key) {
    std::string line = take(key);
    std::string prefix = std::string(key) + " ";
    if (line.rfind(prefix, 0) != 0)
      throw ParseError("policy line " + std::to_string(pos) + ": expected '" + key + " ...', got '" +
                       line + "'");
    return line.substr(prefix.size());
  }
};

int label_index(const std::vector<std::string>& labels, const std::string& s,
                const std::string& what) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == s) return static_cast<int>(i);
  throw ParseError("policy: unknown " + what + " label '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "up=2/3;down=1/3" at a known stage
Belief1 parse_belief1(const TeamModel& m, int t, const std::string& text) {
  Belief1 out;
  for (const std::string& part : split(text, ';')) {
    auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("policy: bad belief entry '" + part + "'");
    int x = label_index(m.states[t], part.substr(0, eq), "state");
    out.p.emplace_back(x, Rational::parse(part.substr(eq + 1)));
  }
  if (!std::is_sorted(out.p.begin(), out.p.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; }))
    throw ParseError("policy: belief support not in canonical order: '" + text + "'");
  return out;
}

// "y0,u0,y1,...,yt" starting at stage 0
PrivateHistory parse_history(const TeamModel& m, const std::vector<std::string>& fields) {
  PrivateHistory l;
  if (fields.size() % 2 != 1) throw ParseError("policy: private history has even field count");
  for (std::size_t i = 0; i < fields.size(); ++i) {
    int stage = static_cast<int>(i / 2);
    if (i % 2 == 0)
      l.y1.push_back(label_index(m.obs1[stage], fields[i], "observation"));
    else
      l.u1.push_back(label_index(m.actions1[stage], fields[i], "action1"));
  }
  return l;
}

// "(up,g)=2/3;(down,g,keep,b)=1/3" at a known stage
Belief2 parse_belief2(const TeamModel& m, int t, const std::string& text) {
  Belief2 out;
  out.t = t;
  for (const std::string& part : split(text, ';')) {
    if (part.size() < 2 || part.front() != '(')
      throw ParseError("policy: bad belief entry '" + part + "'");
    auto close = part.find(")=");
    if (close == std::string::npos) throw ParseError("policy: bad belief entry '" + part + "'");
    std::vector<std::string> fields = split(part.substr(1, close - 1), ',');
    if (fields.size() != static_cast<std::size_t>(2 * t + 2))
      throw ParseError("policy: belief entry has wrong history length: '" + part + "'");
    int x = label_index(m.states[t], fields[0], "state");
    PrivateHistory l =
        parse_history(m, std::vector<std::string>(fields.begin() + 1, fields.end()));
    out.p.push_back({x, l, Rational::parse(part.substr(close + 2))});
  }
  if (!std::is_sorted(out.p.begin(), out.p.end()))
    throw ParseError("policy: belief support not in canonical order");
  return out;
}

}  // namespace

SolvedPolicy parse_policy(const TeamModel& m, const std::string& text) {
  LineReader r(text);
  if (r.take("policy-v1 header") != "policy-v1")
    throw ParseError("policy: missing policy-v1 header");
  SolvedPolicy sp;
  sp.fingerprint = r.field("fingerprint");
  if (sp.fingerprint != model_fingerprint(m))
    throw ValidationError("policy fingerprint " + sp.fingerprint +
                          " does not match the model (" + model_fingerprint(m) + ")");
  sp.value = Rational::parse(r.field("value"));
  long n = std::stol(r.field("nodes"));
  for (long i = 0; i < n; ++i) {
    r.field("node");
    int t = std::stoi(r.field("t"));
    if (t < 0 || t > m.horizon) throw ParseError("policy: node stage out of range");
    Belief2 pi2 = parse_belief2(m, t, r.field("belief"));
    ValueCacheEntry entry;
    entry.value = Rational::parse(r.field("nodevalue"));
    int u2 = label_index(m.actions2[t], r.field("u2"), "action2");
    std::string line = r.take("gamma/final");
    if (line.rfind("final ", 0) == 0) {
      if (t != m.horizon) throw ParseError("policy: final block at a non-final stage");
      entry.is_final = true;
      entry.last.u2 = u2;
      long k = std::stol(line.substr(6));
      for (long j = 0; j < k; ++j) {
        std::string row = r.take("final mapping");
        auto bar = row.find(" | ");
        auto arrow = row.find(" -> ");
        if (bar == std::string::npos || arrow == std::string::npos || arrow < bar)
          throw ParseError("policy: bad final mapping '" + row + "'");
        Belief1 pi1 = parse_belief1(m, t, row.substr(0, bar));
        int mu2 = label_index(m.actions2[t], row.substr(bar + 3, arrow - bar - 3), "action2");
        int u1 = label_index(m.actions1[t], row.substr(arrow + 4), "action1");
        if (!entry.last.u1_of.emplace(std::make_pair(pi1, mu2), u1).second)
          throw ParseError("policy: duplicate final mapping");
      }
    } else if (line.rfind("gamma ", 0) == 0) {
      if (t == m.horizon) throw ParseError("policy: gamma block at the final stage");
      entry.is_final = false;
      long k = std::stol(line.substr(6));
      std::map<Belief1, int> table;
      for (long j = 0; j < k; ++j) {
        std::string row = r.take("prescription mapping");
        auto arrow = row.find(" -> ");
        if (arrow == std::string::npos)
          throw ParseError("policy: bad prescription mapping '" + row + "'");
        Belief1 pi1 = parse_belief1(m, t, row.substr(0, arrow));
        int u1 = label_index(m.actions1[t], row.substr(arrow + 4), "action1");
        if (!table.emplace(pi1, u1).second)
          throw ParseError("policy: duplicate prescription mapping");
      }
      entry.step = StepDecision{u2, Prescription(t, std::move(table))};
    } else {
      throw ParseError("policy: expected 'gamma <n>' or 'final <n>', got '" + line + "'");
    }
    if (!sp.nodes.emplace(std::move(pi2), std::move(entry)).second)
      throw ParseError("policy: duplicate belief node");
  }
  if (r.take("end") != "end") throw ParseError("policy: missing end marker");
  if (r.pos != r.lines.size())
    throw ParseError("policy: trailing content after the end marker");
  return sp;
}

// --- execution ---------------------------------------------------------------

PolicyExecutor::PolicyExecutor(const TeamModel& m, const SolvedPolicy& policy)
    : m_(m), policy_(policy) {
  if (policy_.fingerprint != model_fingerprint(m_))
    throw ValidationError("policy fingerprint does not match the model");
}

std::pair<int, int> PolicyExecutor::step(int y1, int y2) {
  if (done()) throw Error("policy executor: stepped past the final stage");
  if (y1 < 0 || y1 >= m_.n_y1(t_) || y2 < 0 || y2 >= m_.n_y2(t_))
    throw Error("policy executor: observation out of range");
  try {
    if (t_ == 0) {
      pi2_ = initial_belief2(m_, y2);
      l_ = PrivateHistory{{y1}, {}};
    } else {
      pi2_ = update_belief2(m_, pi2_, last_step_->gamma, NewInfo2{y2, last_step_->u2});
      l_ = l_.extended(y1, last_u1_);
    }
  } catch (const NullEventError& e) {
    throw InconsistentTrajectoryError(std::string("trajectory impossible under the model: ") +
                                      e.what());
  }
  Belief1 pi1;
  try {
    pi1 = reconstruct_belief1(pi2_, l_);
  } catch (const NullEventError& e) {
    throw InconsistentTrajectoryError(std::string("trajectory impossible under the model: ") +
                                      e.what());
  }
  auto it = policy_.nodes.find(pi2_);
  if (it == policy_.nodes.end())
    throw MissingEntryError("policy has no entry for the belief reached at stage " +
                            std::to_string(t_));
  const ValueCacheEntry& entry = it->second;
  int u1, u2;
  if (entry.is_final) {
    if (t_ != m_.horizon) throw Error("policy executor: final entry at a non-final stage");
    u2 = entry.last.u2;
    auto f = entry.last.u1_of.find({pi1, u2});
    if (f == entry.last.u1_of.end())
      throw MissingEntryError("policy final-stage table lacks the reached belief");
    u1 = f->second;
  } else {
    if (t_ == m_.horizon) throw Error("policy executor: non-final entry at the final stage");
    u2 = entry.step.u2;
    try {
      u1 = entry.step.gamma.apply(pi1);
    } catch (const IncompletePrescriptionError&) {
      throw MissingEntryError("policy prescription lacks the reached belief at stage " +
                              std::to_string(t_));
    }
    last_step_ = entry.step;
  }
  last_u1_ = u1;
  ++t_;
  return {u1, u2};
}

}  // namespace teamdp
