#include <doctest.h>

#include <cmath>
#include <random>

#include "cogorder/analysis.hpp"
#include "cogorder/error.hpp"
#include "cogorder/solver.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cogorder;

TEST_CASE("positions") {
  const Ordering o{"B", "A", "C"};
  CHECK(positions(o) == PositionVector{{"A", 1}, {"B", 0}, {"C", 2}});
  CHECK_THROWS_AS(positions(Ordering{"A", "A"}), DomainError);
}

TEST_CASE("distance examples") {
  const Ordering abc{"A", "B", "C"};
  CHECK(ordering_distance(abc, abc) == 0.0);
  CHECK(ordering_distance(abc, Ordering{"A", "C", "B"}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(ordering_distance(abc, Ordering{"C", "B", "A"}) == doctest::Approx(std::sqrt(8.0)));
  CHECK_THROWS_WITH_AS(ordering_distance(abc, Ordering{"A", "B", "D"}), doctest::Contains("D"), DomainError);
}

TEST_CASE("distance between the study orderings") {
  const auto& k = fixtures::validation().known_orderings;
  const auto d = ordering_distance(k.at("paper_optimal"), k.at("paper_pessimal"));
  // Index differences computed by hand: AIRL 1, LIQH 3, BKRF 0, FRBN 3, STSO 4, DIMH 0, EXBG 3, CFRM 1, PRBP 1, PRLT 2.
  CHECK(d == doctest::Approx(std::sqrt(50.0)));
}

TEST_CASE("consensus") {
  const Ordering abc{"A", "B", "C"};
  CHECK(consensus_ordering(std::vector<Ordering>{abc}) == abc);
  CHECK(consensus_ordering(std::vector<Ordering>{abc, abc, abc}) == abc);
  CHECK(consensus_ordering(std::vector<Ordering>{abc, abc, {"B", "A", "C"}}) == abc);
  // Every slot ties; the lower code wins the first slot and leftovers follow mean position.
  CHECK(consensus_ordering(std::vector<Ordering>{abc, {"C", "B", "A"}}) == Ordering{"A", "B", "C"});
  CHECK_THROWS_AS(consensus_ordering(std::vector<Ordering>{}), DomainError);
  CHECK_THROWS_AS(consensus_ordering(std::vector<Ordering>{abc, {"A", "B"}}), DomainError);
}

TEST_CASE("property: consensus is a permutation of the input set") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 9;
    std::vector<Ordering> in;
    for (int i = 0; i < 1 + trial % 6; ++i) in.push_back(oracle::random_permutation(rng, n));
    auto c = consensus_ordering(in);
    auto sorted = in.front();
    std::sort(c.begin(), c.end());
    std::sort(sorted.begin(), sorted.end());
    CHECK(c == sorted);
  }
}

TEST_CASE("property: metric axioms") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 12;
    const auto a = oracle::random_permutation(rng, n);
    const auto b = oracle::random_permutation(rng, n);
    const auto c = oracle::random_permutation(rng, n);
    CHECK(ordering_distance(a, a) == 0.0);
    CHECK(std::abs(ordering_distance(a, b) - ordering_distance(b, a)) <= 1e-9);
    CHECK(ordering_distance(a, c) <= ordering_distance(a, b) + ordering_distance(b, c) + 1e-9);
    if (a != b) CHECK(ordering_distance(a, b) > 0.0);
  }
}

TEST_CASE("transition report") {
  const auto wf = fixtures::checkin_with("AUPS");
  const auto s = solve({wf, CostModel{}}).front();
  const auto rows = transition_report(s);
  REQUIRE(rows.size() == 12);
  CHECK(rows.back().running_total == s.total);
  EffectSize sum;
  for (const auto& r : rows) {
    sum += r.transition_total;
    CHECK(r.running_total == sum);
  }
  const Solution lone{{"LANG"}, EffectSize{}, {}, {}};
  CHECK(transition_report(lone).empty());
}
