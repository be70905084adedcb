#include "teamdp/prescriptions.hpp"

#include <set>

#include "teamdp/errors.hpp"

namespace teamdp {

int Prescription::apply(const Belief1& pi1) const {
  auto it = table_.find(pi1);
  if (it == table_.end())
    throw IncompletePrescriptionError("prescription has no entry for the given belief");
  return it->second;
}

std::string Prescription::str(const TeamModel& m) const {
  std::string out;
  for (const auto& [pi1, u1] : table_) {
    if (!out.empty()) out += "\n";
    out += pi1.str(m, stage_) + " -> " + m.actions1[stage_][u1];
  }
  return out;
}

std::vector<Belief1> prescription_domain(const Belief2& pi2) {
  std::set<Belief1> seen;
  std::set<PrivateHistory> histories;
  for (const auto& e : pi2.p) histories.insert(e.l);
  for (const auto& l : histories) seen.insert(reconstruct_belief1(pi2, l));
  return std::vector<Belief1>(seen.begin(), seen.end());
}

PrescriptionSet::PrescriptionSet(int stage, std::vector<Belief1> domain, int n_actions,
                                 long max_count)
    : stage_(stage), domain_(std::move(domain)), n_actions_(n_actions) {
  if (n_actions_ < 1) throw Error("PrescriptionSet: need at least one action");
  long cap = max_count > 0 ? max_count : (1L << 62);
  size_ = 1;
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (size_ > cap / n_actions_)
      throw ResourceLimitError("prescription enumeration over a " +
                               std::to_string(domain_.size()) + "-point domain with " +
                               std::to_string(n_actions_) + " actions exceeds bound " +
                               std::to_string(cap));
    size_ *= n_actions_;
  }
}

Prescription PrescriptionSet::at(long index) const {
  if (index < 0 || index >= size_) throw Error("PrescriptionSet: index out of range");
  std::map<Belief1, int> table;
  // first domain point is the most significant digit
  long rest = index;
  for (std::size_t i = domain_.size(); i-- > 0;) {
    table[domain_[i]] = static_cast<int>(rest % n_actions_);
    rest /= n_actions_;
  }
  return Prescription(stage_, std::move(table));
}

PrescriptionSet enumerate_prescriptions(int stage, std::vector<Belief1> domain, int n_actions,
                                        long max_count) {
  return PrescriptionSet(stage, std::move(domain), n_actions, max_count);
}

}  // namespace teamdp
