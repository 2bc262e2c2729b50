#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "amm/audit.hpp"
#include "amm/fixtures.hpp"
#include "amm/game.hpp"
#include "amm/gen.hpp"
#include "amm/mechanisms.hpp"

using namespace amm;

namespace {

Mechanism eam_mech(Ordering order) {
  return [order = std::move(order)](const Problem& p) {
    return run_eam(p, order);
  };
}

Mechanism fam_mech(Ordering order) {
  return [order = std::move(order)](const Problem& p) {
    return run_fam(p, order);
  };
}

std::vector<Problem> family(int count, std::uint32_t seed) {
  std::vector<Problem> out;
  for (int t = 0; t < count; ++t) {
    std::mt19937 rng(seed + static_cast<std::uint32_t>(t));
    GenConfig cfg;
    cfg.num_students = 2 + static_cast<int>(rng() % 2);
    cfg.num_schools = 2 + static_cast<int>(rng() % 2);
    cfg.acceptability_prob = 0.4 + 0.5 * (rng() % 8) / 8.0;
    out.push_back(generate_problem(cfg, rng));
  }
  return out;
}

Problem single_student_market() {
  Problem p;
  p.students = {"i1"};
  p.schools = {{"a", 1}};
  p.priorities = {{0}};
  p.preferences = {{0}};
  p.rebuild_index();
  return p;
}

Problem empty_prefs_market() {
  Problem p;
  p.students = {"i1", "i2"};
  p.schools = {{"a", 1}};
  p.priorities = {{0, 1}};
  p.preferences = {{}, {}};
  p.rebuild_index();
  return p;
}

}  // namespace

TEST_CASE("enumerate_reports counts and canonical order") {
  CHECK(enumerate_reports(0).size() == 1);
  CHECK(enumerate_reports(1).size() == 2);
  CHECK(enumerate_reports(3).size() == 16);  // 1 + 3 + 6 + 6

  const auto& r2 = enumerate_reports(2);
  std::vector<std::vector<int>> expected{{}, {0}, {1}, {0, 1}, {1, 0}};
  CHECK(r2 == expected);
}

TEST_CASE("best_response_exists") {
  auto a = fixtures::fixture_a();
  auto mech = eam_mech({0, 1});
  // i2 already gets a (their top choice) under the truthful EAM outcome
  CHECK_FALSE(best_response_exists(mech, a, truthful_profile(a), 1));

  auto c = fixtures::fixture_c();
  auto mech_c = eam_mech({0, 1});
  auto dev = best_response_exists(mech_c, c, truthful_profile(c), 0);
  REQUIRE(dev);
  CHECK(*dev == fixtures::fixture_c_misreport_i());

  auto solo = single_student_market();
  CHECK_FALSE(best_response_exists(eam_mech({0}), solo,
                                   truthful_profile(solo), 0));
  CHECK_THROWS_AS(
      best_response_exists(mech, a, truthful_profile(a), 5),
      std::out_of_range);
}

TEST_CASE("is_equilibrium") {
  auto a = fixtures::fixture_a();
  auto mech = eam_mech({0, 1});
  // each student reports only their serial-dictatorship school
  auto sd = run_sd(a, {0, 1});
  ReportProfile profile(2);
  for (int i = 0; i < 2; ++i)
    if (sd.assignment[i] != kUnassigned) profile[i] = {sd.assignment[i]};
  CHECK(is_equilibrium(mech, a, profile));

  auto b = fixtures::fixture_b();
  CHECK(is_equilibrium(scripted_equilibrium_mechanism_fixture_b(), b,
                       truthful_profile(b)));

  auto c = fixtures::fixture_c();
  CHECK_FALSE(is_equilibrium(eam_mech({0, 1}), c, truthful_profile(c)));
}

TEST_CASE("enumerate_equilibria on fixture A under EAM") {
  auto a = fixtures::fixture_a();
  auto records = enumerate_equilibria(eam_mech({0, 1}), a);
  REQUIRE_FALSE(records.empty());
  auto sd = run_sd(a, {0, 1});
  for (const auto& rec : records) {
    CHECK(rec.outcome == sd);
    CHECK(rec.verified);
    CHECK(rec.deviations_checked ==
          2 * enumerate_reports(a.num_schools()).size());
  }
}

TEST_CASE("truth is among the equilibria of a single-student market") {
  auto p = single_student_market();
  auto records = enumerate_equilibria(eam_mech({0}), p);
  bool truth_found = false;
  for (const auto& rec : records)
    truth_found = truth_found || rec.profile == truthful_profile(p);
  CHECK(truth_found);
}

TEST_CASE("enumerate_equilibria refuses oversized profile spaces") {
  auto b = fixtures::fixture_b();
  EnumerationCaps caps{100};  // 16^4 profiles needed
  try {
    enumerate_equilibria(eam_mech({2, 1, 0, 3}), b, caps);
    FAIL("expected ProfileCapExceeded");
  } catch (const ProfileCapExceeded& e) {
    CHECK(e.cap == 100);
    CHECK(e.required == 16ull * 16 * 16 * 16);
  }
}

TEST_CASE("equilibrium size bounds") {
  auto a = fixtures::fixture_a();
  auto bounds = equilibrium_size_bounds(eam_mech({0, 1}), a);
  REQUIRE(bounds);
  CHECK(*bounds == std::pair<int, int>{1, 1});
  CHECK(run_sd(a, {0, 1}).size() == 1);

  auto b = fixtures::fixture_b();
  auto fam_bounds = equilibrium_size_bounds(fam_mech({2, 1, 0, 3}), b);
  REQUIRE(fam_bounds);
  CHECK(fam_bounds->first >= run_da(b).size());

  auto empty = empty_prefs_market();
  auto empty_bounds = equilibrium_size_bounds(eam_mech({0, 1}), empty);
  REQUIRE(empty_bounds);
  CHECK(*empty_bounds == std::pair<int, int>{0, 0});
}

TEST_CASE("Prop 5 exhaustively on the enumeration family") {
  for (const auto& p : family(20, 300)) {
    auto order = default_ordering(p);
    auto records = enumerate_equilibria(eam_mech(order), p);
    REQUIRE_FALSE(records.empty());
    auto sd = run_sd(p, order);
    for (const auto& rec : records) CHECK(rec.outcome == sd);
    CHECK_FALSE(enumerate_equilibria(fam_mech(order), p).empty());
  }
}

TEST_CASE("every FAM equilibrium matches at least |DA(truth)| students") {
  for (const auto& p : family(20, 301)) {
    auto bounds = equilibrium_size_bounds(fam_mech(default_ordering(p)), p);
    REQUIRE(bounds);
    CHECK(bounds->first >= run_da(p).size());
  }
}

TEST_CASE("scripted fixture-B mechanism certifies the size-3 equilibrium") {
  auto b = fixtures::fixture_b();
  auto mech = scripted_equilibrium_mechanism_fixture_b();
  CHECK(is_equilibrium(mech, b, truthful_profile(b)));
  CHECK(mech(b).size() == 3);
  CHECK(run_da(b).size() == 2);
}

TEST_CASE("manipulation_size_effect") {
  auto c = fixtures::fixture_c();
  auto entries = manipulation_size_effect(eam_mech({0, 1}), c);
  bool found = false;
  for (const auto& e : entries) {
    CHECK(e.size_after <= e.size_before);
    found = found || (e.student == 0 &&
                      e.report == fixtures::fixture_c_misreport_i() &&
                      e.size_before == 2 && e.size_after == 1);
  }
  CHECK(found);

  auto a = fixtures::fixture_a();
  for (const auto& e : manipulation_size_effect(eam_mech({0, 1}), a))
    CHECK(e.size_after <= e.size_before);

  // DA is strategy-proof: no profitable deviation from truth
  CHECK(manipulation_size_effect([](const Problem& p) { return run_da(p); },
                                 a)
            .empty());
  CHECK(manipulation_size_effect([](const Problem& p) { return run_da(p); },
                                 fixtures::fixture_b())
            .empty());
}

TEST_CASE("manipulation never grows the matching for EAM or FAM") {
  for (const auto& p : family(20, 302)) {
    auto order = default_ordering(p);
    for (const auto& e : manipulation_size_effect(eam_mech(order), p))
      CHECK(e.size_after <= e.size_before);
    for (const auto& e : manipulation_size_effect(fam_mech(order), p))
      CHECK(e.size_after <= e.size_before);
  }
}

TEST_CASE("sincerity_sweep") {
  auto c = fixtures::fixture_c();
  auto mech = eam_mech({0, 1});

  // everyone sincere: the truthful outcome
  auto all = sincerity_sweep(mech, c, {1, 1}, {0, 1});
  CHECK(all.converged);
  CHECK(all.matched == 2);
  CHECK(all.profile == truthful_profile(c));

  // only i strategic: i deviates and the count drops to 1
  auto strategic_i = sincerity_sweep(mech, c, {0, 1}, {0, 1});
  CHECK(strategic_i.converged);
  CHECK(strategic_i.matched == 1);
  CHECK(is_equilibrium(mech, c, strategic_i.profile));
}

TEST_CASE("converged sweeps keep sincere students truthful") {
  for (const auto& p : family(15, 303)) {
    auto order = default_ordering(p);
    auto mech = fam_mech(order);
    std::vector<char> sincere(p.num_students(), 0);
    if (p.num_students() > 1) sincere[0] = 1;
    auto result = sincerity_sweep(mech, p, sincere, order);
    for (int i = 0; i < p.num_students(); ++i)
      if (sincere[i]) CHECK(result.profile[i] == p.preferences[i]);
    if (result.converged) {
      // a fixed point of best-response dynamics is an equilibrium of the
      // restricted game
      bool restricted_eq = true;
      for (int i = 0; i < p.num_students(); ++i)
        if (!sincere[i] && best_response_exists(mech, p, result.profile, i))
          restricted_eq = false;
      CHECK(restricted_eq);
    }
  }
}

TEST_CASE("no zoo mechanism size-wise dominates EAM in equilibrium") {
  auto problems = family(15, 304);
  std::vector<std::pair<const char*, Mechanism>> zoo;
  zoo.emplace_back("da", [](const Problem& p) { return run_da(p); });
  zoo.emplace_back("ttc", [](const Problem& p) { return run_ttc(p); });
  zoo.emplace_back("boston", [](const Problem& p) { return run_boston(p); });
  zoo.emplace_back("sd", [](const Problem& p) {
    return run_sd(p, default_ordering(p));
  });
  zoo.emplace_back("fam", [](const Problem& p) {
    return run_fam(p, default_ordering(p));
  });

  for (const auto& [name, phi] : zoo) {
    bool all_weak = true;   // on every problem: min_phi >= max_eam
    bool some_strict = false;
    for (const auto& p : problems) {
      auto eam_bounds = equilibrium_size_bounds(eam_mech(default_ordering(p)), p);
      auto phi_bounds = equilibrium_size_bounds(phi, p);
      if (!eam_bounds || !phi_bounds) continue;
      if (phi_bounds->first < eam_bounds->second) all_weak = false;
      if (phi_bounds->first > eam_bounds->second) some_strict = true;
    }
    bool dominated = all_weak && some_strict;
    CHECK_MESSAGE(!dominated, name);
  }
}
