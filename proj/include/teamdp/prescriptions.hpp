#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "teamdp/beliefs.hpp"
#include "teamdp/model.hpp"

namespace teamdp {

// A stage-t instruction from agent 2 to agent 1: for every belief agent 1
// could hold (as reconstructed from agent 2's own belief), the action agent
// 1 must take. Total on its declared domain; applying it off-domain is an
// error, not a default.
class Prescription {
 public:
  Prescription() = default;
  Prescription(int stage, std::map<Belief1, int> table)
      : stage_(stage), table_(std::move(table)) {}

  int stage() const { return stage_; }
  const std::map<Belief1, int>& table() const { return table_; }

  // Exact lookup by canonical belief equality.
  int apply(const Belief1& pi1) const;

  // One line per mapping, in domain order: "up=2/3;down=1/3 -> keep".
  std::string str(const TeamModel& m) const;

  friend bool operator==(const Prescription& a, const Prescription& b) = default;
  friend std::strong_ordering operator<=>(const Prescription& a, const Prescription& b) = default;

 private:
  int stage_ = 0;
  std::map<Belief1, int> table_;
};

// The beliefs agent 1 can hold when agent 2's belief is pi2: one per
// distinct private history in pi2's support, deduplicated (different
// histories may reconstruct to the same belief) and sorted canonically.
std::vector<Belief1> prescription_domain(const Belief2& pi2);

// All a^k prescriptions over a k-point domain with a actions, in
// lexicographic order: index 0 maps everything to action 0; the first
// domain point is the most significant digit. Prescriptions are decoded
// on demand so enumeration is O(1) space.
class PrescriptionSet {
 public:
  // Throws ResourceLimitError if a^k exceeds max_count (when max_count > 0).
  PrescriptionSet(int stage, std::vector<Belief1> domain, int n_actions, long max_count);

  long size() const { return size_; }
  Prescription at(long index) const;

 private:
  int stage_;
  std::vector<Belief1> domain_;
  int n_actions_;
  long size_;
};

PrescriptionSet enumerate_prescriptions(int stage, std::vector<Belief1> domain, int n_actions,
                                        long max_count);

}  // namespace teamdp
