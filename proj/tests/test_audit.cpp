#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "amm/audit.hpp"
#include "amm/fixtures.hpp"
#include "amm/gen.hpp"
#include "amm/mechanisms.hpp"
#include "oracle.hpp"

using namespace amm;

namespace {

std::vector<Problem> corpus(int count, std::uint32_t seed, int max_n = 5,
                            int max_m = 3) {
  std::mt19937 rng(seed);
  std::vector<Problem> out;
  for (int t = 0; t < count; ++t) {
    GenConfig cfg;
    cfg.num_students = 1 + static_cast<int>(rng() % max_n);
    cfg.num_schools = 1 + static_cast<int>(rng() % max_m);
    cfg.capacity_max = 2;
    cfg.acceptability_prob = 0.3 + 0.6 * (rng() % 8) / 8.0;
    out.push_back(generate_problem(cfg, rng));
  }
  return out;
}

Problem empty_prefs() {
  Problem p;
  p.students = {"i1"};
  p.schools = {{"a", 1}};
  p.priorities = {{0}};
  p.preferences = {{}};
  p.rebuild_index();
  return p;
}

}  // namespace

TEST_CASE("check_non_wasteful") {
  auto a = fixtures::fixture_a();
  Matching da(2);
  da.assignment = {0, kUnassigned};  // b has slack but nobody wants it more
  CHECK(check_non_wasteful(a, da).ok);

  Matching wasteful(2);
  wasteful.assignment = {kUnassigned, 0};
  auto v = check_non_wasteful(a, wasteful);
  REQUIRE_FALSE(v.ok);
  CHECK(*v.pair == PairWitness{0, 1});  // i1 prefers b to nothing, b empty

  CHECK(check_non_wasteful(empty_prefs(), Matching(1)).ok);
}

TEST_CASE("check_fair") {
  auto a = fixtures::fixture_a();
  Matching eam(2);
  eam.assignment = {1, 0};
  auto v = check_fair(a, eam);
  REQUIRE_FALSE(v.ok);
  CHECK(*v.pair == PairWitness{0, 0, 1});  // (i1, a, i2)

  auto b = fixtures::fixture_b();
  CHECK(check_fair(b, run_da(b)).ok);

  CHECK(check_fair(empty_prefs(), Matching(1)).ok);
}

TEST_CASE("check_stable") {
  auto a = fixtures::fixture_a();
  auto b = fixtures::fixture_b();
  CHECK(check_stable(a, run_da(a)).ok);
  CHECK(check_stable(b, run_da(b)).ok);

  Matching eam(2);
  eam.assignment = {1, 0};
  CHECK_FALSE(check_stable(a, eam).ok);

  CHECK(check_stable(empty_prefs(), Matching(1)).ok);
}

TEST_CASE("check_fair_unassigned") {
  auto b = fixtures::fixture_b();
  Matching mu(4);
  mu.assignment = {1, 0, 2, kUnassigned};  // the FAM/EAM outcome
  CHECK(check_fair_unassigned(b, mu).ok);

  Matching alt(4);
  alt.assignment = {1, 2, 0, kUnassigned};  // j holds c over unassigned h
  auto v = check_fair_unassigned(b, alt);
  REQUIRE_FALSE(v.ok);
  CHECK(*v.pair == PairWitness{3, 2, 1});  // (h, c, j)

  Matching full(2);
  full.assignment = {0, 1};
  CHECK(check_fair_unassigned(fixtures::fixture_a(), full).ok);
}

TEST_CASE("check_maximal") {
  auto a = fixtures::fixture_a();
  Matching two(2);
  two.assignment = {1, 0};
  CHECK(check_maximal(a, two).ok);
  Matching one(2);
  one.assignment = {0, kUnassigned};
  CHECK_FALSE(check_maximal(a, one).ok);
  CHECK(check_maximal(empty_prefs(), Matching(1)).ok);
}

TEST_CASE("dominates") {
  auto c = fixtures::fixture_c();
  Matching both(2);
  both.assignment = {1, 0};  // i->b, j->a
  Matching solo(2);
  solo.assignment = {0, kUnassigned};  // i->a
  // i strictly prefers a, so neither dominates the other
  CHECK_FALSE(dominates(c, both, solo));
  CHECK_FALSE(dominates(c, solo, both));
  CHECK_FALSE(dominates(c, both, both));

  Matching none(2);
  CHECK(dominates(c, solo, none));  // single-student upgrade
}

TEST_CASE("check_efficient in both modes") {
  auto a = fixtures::fixture_a();
  auto b = fixtures::fixture_b();
  auto mu_a = run_eam(a, {0, 1});
  auto mu_b = run_eam(b, {2, 1, 0, 3});
  for (auto mode : {EfficiencyMode::Exact, EfficiencyMode::Lemma}) {
    CHECK(check_efficient(a, mu_a, mode).ok);
    CHECK(check_efficient(b, mu_b, mode).ok);
  }

  Matching da_a(2);
  da_a.assignment = {0, kUnassigned};
  CHECK(check_efficient(a, da_a, EfficiencyMode::Exact).ok);
  // lemma mode is only defined for maximal matchings
  CHECK_THROWS_AS(check_efficient(a, da_a, EfficiencyMode::Lemma),
                  std::invalid_argument);
}

TEST_CASE("exact efficiency respects its state cap") {
  auto b = fixtures::fixture_b();
  auto mu = run_eam(b, {2, 1, 0, 3});
  CHECK_THROWS_AS(check_efficient(b, mu, EfficiencyMode::Exact, 3),
                  EnumerationCapExceeded);
}

TEST_CASE("size_wise_dominates") {
  Matching two(2), one(2), zero(2);
  two.assignment = {0, 1};
  one.assignment = {0, kUnassigned};
  CHECK(size_wise_dominates(two, one));
  CHECK_FALSE(size_wise_dominates(one, one));
  CHECK_FALSE(size_wise_dominates(zero, zero));
}

TEST_CASE("rural hospital gap is zero everywhere") {
  CHECK(rural_hospital_gap(fixtures::fixture_a()) == 0);
  CHECK(rural_hospital_gap(fixtures::fixture_b()) == 0);
  for (const auto& p : corpus(150, 64, 6, 4))
    CHECK(rural_hospital_gap(p) == 0);
}

TEST_CASE("stability implies fairness for unassigned students") {
  for (const auto& p : corpus(80, 65))
    for (const auto& mu : oracle::all_ir_matchings(p))
      if (check_stable(p, mu).ok) CHECK(check_fair_unassigned(p, mu).ok);
}

TEST_CASE("exact and lemma modes agree on every maximal matching") {
  for (const auto& p : corpus(60, 66)) {
    int target = max_assignable_size(p);
    for (const auto& mu : oracle::all_ir_matchings(p)) {
      if (mu.size() != target) continue;
      CHECK(check_efficient(p, mu, EfficiencyMode::Exact).ok ==
            check_efficient(p, mu, EfficiencyMode::Lemma).ok);
    }
  }
}

TEST_CASE("false verdicts carry witnesses that re-validate") {
  for (const auto& p : corpus(60, 67)) {
    for (const auto& mu : oracle::all_ir_matchings(p)) {
      if (auto v = check_fair(p, mu); !v.ok) {
        REQUIRE(v.pair);
        CHECK(prefers(p, v.pair->student, v.pair->school,
                      mu.assignment[v.pair->student]));
        CHECK(mu.assignment[v.pair->occupant] == v.pair->school);
        CHECK(p.higher_priority(v.pair->school, v.pair->student,
                                v.pair->occupant));
      }
      if (auto v = check_non_wasteful(p, mu); !v.ok) {
        REQUIRE(v.pair);
        CHECK(prefers(p, v.pair->student, v.pair->school,
                      mu.assignment[v.pair->student]));
        CHECK(static_cast<int>(assigned_to(mu, v.pair->school).size()) <
              p.schools[v.pair->school].capacity);
      }
      if (mu.size() == max_assignable_size(p)) {
        if (auto v = check_efficient(p, mu, EfficiencyMode::Exact); !v.ok) {
          REQUIRE(v.dominating);
          CHECK(dominates(p, *v.dominating, mu));
        }
      }
    }
  }
}
