#include <doctest.h>

#include <set>
#include <string>
#include <vector>

#include "teamdp/beliefs.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/model.hpp"
#include "teamdp/prescriptions.hpp"
#include "teamdp/rational.hpp"

using namespace teamdp;

namespace {

Belief1 point(int x) {
  Belief1 b;
  b.p = {{x, Rational(1)}};
  return b;
}

Belief1 mix(int x0, int x1, Rational p0) {
  Belief1 b;
  Rational p1 = Rational(1) - p0;
  b.p = {{x0, p0}, {x1, p1}};
  return b;
}

}  // namespace

TEST_CASE("prescription domain deduplicates reconstructed beliefs") {
  // two histories with proportional slices reconstruct to the same belief
  PrivateHistory la{{0}, {}};
  PrivateHistory lb{{1}, {}};
  Belief2 pi2;
  pi2.t = 0;
  pi2.p = {{0, la, Rational(1, 3)},
           {1, la, Rational(1, 3)},
           {0, lb, Rational(1, 6)},
           {1, lb, Rational(1, 6)}};
  std::vector<Belief1> dom = prescription_domain(pi2);
  REQUIRE(dom.size() == 1);
  CHECK(dom[0] == mix(0, 1, Rational(1, 2)));

  // distinct slices stay distinct and come out sorted
  Belief2 q;
  q.t = 0;
  q.p = {{0, la, Rational(1, 2)}, {1, lb, Rational(1, 2)}};
  std::vector<Belief1> dom2 = prescription_domain(q);
  REQUIRE(dom2.size() == 2);
  CHECK(dom2[0] == point(0));
  CHECK(dom2[1] == point(1));
  CHECK(dom2[0] < dom2[1]);
}

TEST_CASE("prescription lookup is exact and total on its domain") {
  std::map<Belief1, int> table;
  table[point(0)] = 1;
  table[mix(0, 1, Rational(2, 3))] = 0;
  Prescription g(0, table);
  CHECK(g.stage() == 0);
  CHECK(g.apply(point(0)) == 1);
  CHECK(g.apply(mix(0, 1, Rational(2, 3))) == 0);
  // same distribution reached by another route compares equal
  CHECK(g.apply(Belief1::normalized({Rational(4, 6), Rational(1, 3)})) == 0);
  CHECK_THROWS_AS(g.apply(point(1)), IncompletePrescriptionError);
}

TEST_CASE("prescription sets have size actions^domain") {
  std::vector<Belief1> dom1 = {point(0)};
  std::vector<Belief1> dom2 = {point(0), point(1)};
  std::vector<Belief1> dom3 = {point(0), point(1), mix(0, 1, Rational(1, 2))};
  CHECK(enumerate_prescriptions(0, dom1, 2, 0).size() == 2);
  CHECK(enumerate_prescriptions(0, dom2, 2, 0).size() == 4);
  CHECK(enumerate_prescriptions(0, dom3, 3, 0).size() == 27);
  CHECK(enumerate_prescriptions(0, {}, 5, 0).size() == 1);  // empty map
}

TEST_CASE("prescriptions enumerate in lexicographic order") {
  std::vector<Belief1> dom = {point(0), point(1)};
  PrescriptionSet set = enumerate_prescriptions(1, dom, 3, 0);
  REQUIRE(set.size() == 9);
  // index 0: everything to action 0; last index: everything to the top action
  CHECK(set.at(0).apply(point(0)) == 0);
  CHECK(set.at(0).apply(point(1)) == 0);
  CHECK(set.at(8).apply(point(0)) == 2);
  CHECK(set.at(8).apply(point(1)) == 2);
  // the first domain point is the most significant digit
  CHECK(set.at(1).apply(point(0)) == 0);
  CHECK(set.at(1).apply(point(1)) == 1);
  CHECK(set.at(3).apply(point(0)) == 1);
  CHECK(set.at(3).apply(point(1)) == 0);
  CHECK(set.at(0).stage() == 1);
}

TEST_CASE("enumeration covers every table exactly once") {
  std::vector<Belief1> dom = {point(0), point(1), point(2)};
  PrescriptionSet set = enumerate_prescriptions(0, dom, 2, 0);
  REQUIRE(set.size() == 8);
  std::set<std::vector<int>> seen;
  for (long i = 0; i < set.size(); ++i) {
    Prescription g = set.at(i);
    std::vector<int> row;
    for (const Belief1& b : dom) row.push_back(g.apply(b));
    CHECK(seen.insert(row).second);  // no repeats
  }
  CHECK(seen.size() == 8);
}

TEST_CASE("enumeration bound rejects oversized prescription spaces") {
  std::vector<Belief1> dom;
  for (int x = 0; x < 40; ++x) dom.push_back(point(x));
  // 3^40 overflows any reasonable bound; the guard must fire, not wrap
  CHECK_THROWS_AS(enumerate_prescriptions(0, dom, 3, 1000), ResourceLimitError);
  CHECK_THROWS_AS(enumerate_prescriptions(0, dom, 3, 0), ResourceLimitError);
  // a generous bound admits a small set
  CHECK(enumerate_prescriptions(0, {point(0)}, 3, 1000).size() == 3);
}
