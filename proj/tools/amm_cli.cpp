// amm: school-choice assignment maximization toolkit.
//
// Subcommands: run (mechanism on a problem), audit (axiom report for a
// matching), equilibria (exhaustive catalog of the reporting game), gen
// (seeded random problem), repro (scripted claim checks).

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "amm/audit.hpp"
#include "amm/fixtures.hpp"
#include "amm/game.hpp"
#include "amm/gen.hpp"
#include "amm/io.hpp"
#include "amm/mechanisms.hpp"

using nlohmann::json;

namespace {

amm::Problem resolve_problem(const std::string& arg) {
  if (arg == "fixtureA") return amm::fixtures::fixture_a();
  if (arg == "fixtureB") return amm::fixtures::fixture_b();
  if (arg == "fixtureC") return amm::fixtures::fixture_c();
  return amm::io::load_problem(arg);
}

amm::Ordering parse_ordering(const amm::Problem& p, const std::string& spec) {
  amm::Ordering out;
  std::stringstream ss(spec);
  std::string token;
  while (std::getline(ss, token, ',')) {
    int i = p.student_index(token);
    if (i < 0) throw std::runtime_error("ordering: unknown student " + token);
    out.push_back(i);
  }
  return out;
}

amm::MechanismConfig make_config(const amm::Problem& p,
                                 const std::string& mechanism,
                                 const std::string& ordering_spec) {
  amm::MechanismConfig cfg;
  cfg.kind = amm::mechanism_kind_from_string(mechanism);
  bool needs_ordering = cfg.kind == amm::MechanismKind::EAM ||
                        cfg.kind == amm::MechanismKind::FAM ||
                        cfg.kind == amm::MechanismKind::SD;
  if (needs_ordering) {
    if (ordering_spec.empty())
      throw std::runtime_error("--ordering is required for " + mechanism);
    cfg.ordering = parse_ordering(p, ordering_spec);
  }
  return cfg;
}

std::string matching_brief(const amm::Problem& p, const amm::Matching& mu) {
  std::string out;
  for (int i = 0; i < p.num_students(); ++i) {
    if (i) out += " ";
    int s = mu.assignment[i];
    out += p.students[i] + "->" +
           (s == amm::kUnassigned ? "-" : p.schools[s].id);
  }
  return out;
}

void require_valid(const amm::Problem& p) {
  auto violations = amm::validate_problem(p);
  if (!violations.empty()) {
    std::string msg = "invalid problem:";
    for (const auto& v : violations) msg += " " + v;
    throw std::runtime_error(msg);
  }
}

// ---------------------------------------------------------------------------
// repro targets
// ---------------------------------------------------------------------------

struct Claim {
  json details = json::object();
  bool pass = true;

  void expect(bool ok, const std::string& what) {
    details["checks"].push_back({{"check", what}, {"ok", ok}});
    pass = pass && ok;
  }
};

std::vector<amm::Problem> seeded_corpus(int count, std::uint32_t base_seed,
                                        int max_students, int max_schools,
                                        int max_capacity) {
  std::vector<amm::Problem> out;
  for (int t = 0; t < count; ++t) {
    std::mt19937 rng(base_seed + static_cast<std::uint32_t>(t));
    amm::GenConfig cfg;
    cfg.num_students = 1 + static_cast<int>(rng() % max_students);
    cfg.num_schools = 1 + static_cast<int>(rng() % max_schools);
    cfg.capacity_min = 1;
    cfg.capacity_max = max_capacity;
    cfg.acceptability_prob = 0.3 + 0.6 * (rng() % 8) / 8.0;
    out.push_back(amm::generate_problem(cfg, rng));
  }
  return out;
}

amm::Ordering seeded_ordering(const amm::Problem& p, std::mt19937& rng) {
  auto o = amm::default_ordering(p);
  std::shuffle(o.begin(), o.end(), rng);
  return o;
}

Claim repro_prop1() {
  Claim c;
  auto p = amm::fixtures::fixture_a();
  amm::Ordering order{0, 1};
  c.expect(amm::run_da(p).size() == 1, "da matches 1");
  c.expect(amm::run_ttc(p).size() == 1, "ttc matches 1");
  c.expect(amm::run_boston(p).size() == 1, "boston matches 1");
  c.expect(amm::run_sd(p, order).size() == 1, "sd matches 1");
  c.expect(amm::max_assignable_size(p) == 2, "max assignable size 2");
  c.expect(amm::run_eam(p, order).size() == 2, "eam matches 2");
  return c;
}

Claim repro_thm1() {
  Claim c;
  auto corpus = seeded_corpus(200, 11000, 5, 3, 2);
  bool all_ok = true;
  for (const auto& p : corpus) {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 2; ++rep) {
      auto order = seeded_ordering(p, rng);
      auto mu = amm::run_eam(p, order);
      bool ok = amm::is_individually_rational(p, mu) &&
                mu.size() == amm::max_assignable_size(p) &&
                !amm::find_improving_move(p, mu) &&
                amm::check_efficient(p, mu, amm::EfficiencyMode::Exact).ok;
      all_ok = all_ok && ok;
    }
  }
  c.expect(all_ok, "eam is IR, maximal, and efficient on the corpus");
  c.details["problems"] = corpus.size();
  return c;
}

Claim repro_thm2() {
  Claim c;
  auto corpus = seeded_corpus(200, 12000, 5, 3, 2);
  bool all_ok = true;
  for (const auto& p : corpus) {
    std::mt19937 rng(7);
    for (int rep = 0; rep < 2; ++rep) {
      auto order = seeded_ordering(p, rng);
      auto mu = amm::run_fam(p, order);
      bool ok = amm::is_individually_rational(p, mu) &&
                amm::check_maximal(p, mu).ok &&
                amm::check_fair_unassigned(p, mu).ok &&
                mu.size() == amm::run_eam(p, order).size();
      all_ok = all_ok && ok;
    }
  }
  c.expect(all_ok, "fam is maximal, fair for unassigned, same size as eam");
  c.details["problems"] = corpus.size();
  return c;
}

std::vector<amm::Problem> enumeration_family(int count, std::uint32_t seed) {
  std::vector<amm::Problem> out;
  for (int t = 0; t < count; ++t) {
    std::mt19937 rng(seed + static_cast<std::uint32_t>(t));
    amm::GenConfig cfg;
    cfg.num_students = 2 + static_cast<int>(rng() % 2);
    cfg.num_schools = 2 + static_cast<int>(rng() % 2);
    cfg.acceptability_prob = 0.4 + 0.5 * (rng() % 8) / 8.0;
    out.push_back(amm::generate_problem(cfg, rng));
  }
  return out;
}

Claim repro_prop5() {
  Claim c;
  auto family = enumeration_family(12, 50000);
  bool eam_ok = true;
  bool fam_ok = true;
  for (const auto& p : family) {
    auto order = amm::default_ordering(p);
    auto eam = [order](const amm::Problem& q) { return run_eam(q, order); };
    auto fam = [order](const amm::Problem& q) { return run_fam(q, order); };
    auto eam_eqs = amm::enumerate_equilibria(eam, p);
    eam_ok = eam_ok && !eam_eqs.empty();
    auto sd_truth = amm::run_sd(p, order);
    for (const auto& rec : eam_eqs)
      eam_ok = eam_ok && rec.outcome == sd_truth;
    fam_ok = fam_ok && !amm::enumerate_equilibria(fam, p).empty();
  }
  c.expect(eam_ok, "eam equilibria exist and all equal sd(truth)");
  c.expect(fam_ok, "fam equilibria exist");
  c.details["problems"] = family.size();
  return c;
}

Claim repro_thm4() {
  Claim c;
  auto family = enumeration_family(12, 54000);
  bool part1 = true;
  for (const auto& p : family) {
    auto order = amm::default_ordering(p);
    auto fam = [order](const amm::Problem& q) { return run_fam(q, order); };
    auto bounds = amm::equilibrium_size_bounds(fam, p);
    int da_size = amm::run_da(p).size();
    part1 = part1 && bounds && bounds->first >= da_size &&
            amm::rural_hospital_gap(p) == 0;
  }
  c.expect(part1, "every fam equilibrium size >= |da(truth)|, rural gap 0");

  auto p = amm::fixtures::fixture_b();
  auto scripted = amm::scripted_equilibrium_mechanism_fixture_b();
  bool truth_eq = amm::is_equilibrium(scripted, p, p.preferences);
  int scripted_size = scripted(p).size();
  int da_size = amm::run_da(p).size();
  c.expect(truth_eq, "scripted mechanism: truth is an equilibrium");
  c.expect(scripted_size == 3 && da_size == 2,
           "scripted size 3 vs da size 2");
  c.details["scripted_size"] = scripted_size;
  c.details["da_size"] = da_size;
  return c;
}

Claim repro_prop6() {
  Claim c;
  auto family = enumeration_family(12, 56000);
  bool never_up = true;
  for (const auto& p : family) {
    auto order = amm::default_ordering(p);
    for (auto mech : {amm::Mechanism([order](const amm::Problem& q) {
                        return run_eam(q, order);
                      }),
                      amm::Mechanism([order](const amm::Problem& q) {
                        return run_fam(q, order);
                      })})
      for (const auto& e : amm::manipulation_size_effect(mech, p))
        never_up = never_up && e.size_after <= e.size_before;
  }
  c.expect(never_up, "no profitable deviation increases the matched count");

  auto p = amm::fixtures::fixture_c();
  amm::Ordering order{0, 1};
  auto eam = [order](const amm::Problem& q) { return run_eam(q, order); };
  auto entries = amm::manipulation_size_effect(eam, p);
  bool found_drop = false;
  for (const auto& e : entries)
    found_drop = found_drop ||
                 (e.student == 0 && e.report == amm::fixtures::fixture_c_misreport_i() &&
                  e.size_before == 2 && e.size_after == 1);
  c.expect(found_drop, "strict drop 2 -> 1 on the two-student instance");
  return c;
}

Claim repro_cor1() {
  Claim c;
  auto family = seeded_corpus(30, 58000, 4, 3, 1);
  bool monotone = true;
  int non_converged = 0;
  for (const auto& p : family) {
    auto order = amm::default_ordering(p);
    auto fam = amm::Mechanism(
        [order](const amm::Problem& q) { return run_fam(q, order); });
    int prev = -1;
    bool prev_valid = false;
    // Nested sincere sets growing along the ordering.
    for (int cut = 0; cut <= p.num_students(); ++cut) {
      std::vector<char> sincere(p.num_students(), 0);
      for (int k = 0; k < cut; ++k) sincere[order[k]] = 1;
      auto result = amm::sincerity_sweep(fam, p, sincere, order);
      if (!result.converged) {
        ++non_converged;
        prev_valid = false;
        continue;
      }
      if (prev_valid && result.matched < prev) monotone = false;
      prev = result.matched;
      prev_valid = true;
    }
  }
  c.expect(monotone, "matched count non-decreasing in the sincere set");
  c.details["non_converged_runs"] = non_converged;
  return c;
}

int cmd_repro(const std::string& claim) {
  Claim c;
  if (claim == "prop1") c = repro_prop1();
  else if (claim == "thm1") c = repro_thm1();
  else if (claim == "thm2") c = repro_thm2();
  else if (claim == "prop5") c = repro_prop5();
  else if (claim == "thm4") c = repro_thm4();
  else if (claim == "prop6") c = repro_prop6();
  else if (claim == "cor1") c = repro_cor1();
  else throw std::runtime_error("unknown claim: " + claim);

  json out{{"claim", claim}, {"pass", c.pass}, {"details", c.details}};
  std::cout << out.dump(2) << "\n";
  std::cerr << "repro " << claim << ": " << (c.pass ? "pass" : "FAIL") << "\n";
  return c.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assignment-maximizing school choice toolkit"};
  app.require_subcommand(1);

  std::string problem_file, matching_file, mechanism = "eam", ordering_spec;
  std::string out_file, format = "json", claim;
  std::string move_policy = "shortest", fam_policy = "earliest";
  std::uint64_t cap = 10'000'000;
  std::uint32_t seed = 1;
  int n_students = 4, m_schools = 3, cap_min = 1, cap_max = 1;
  double accept_prob = 0.7;

  auto* run = app.add_subcommand("run", "run a mechanism on a problem");
  run->add_option("problem", problem_file)->required();
  run->add_option("--mechanism", mechanism)
      ->check(CLI::IsMember({"da", "ttc", "boston", "sd", "eam", "fam"}));
  run->add_option("--ordering", ordering_spec, "comma-separated student ids");
  run->add_option("--move-policy", move_policy)->check(CLI::IsMember({"shortest"}));
  run->add_option("--fam-policy", fam_policy)->check(CLI::IsMember({"earliest"}));
  run->add_option("--out", out_file, "write the matching file here");
  run->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* audit = app.add_subcommand("audit", "axiom report for a matching");
  audit->add_option("problem", problem_file)->required();
  audit->add_option("matching", matching_file)->required();
  audit->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

  auto* equilibria =
      app.add_subcommand("equilibria", "exhaustive equilibrium catalog");
  equilibria->add_option("problem", problem_file)->required();
  equilibria->add_option("--mechanism", mechanism)
      ->check(CLI::IsMember({"da", "ttc", "boston", "sd", "eam", "fam"}));
  equilibria->add_option("--ordering", ordering_spec);
  equilibria->add_option("--cap", cap, "profile evaluation budget");
  equilibria->add_option("--format", format)
      ->check(CLI::IsMember({"json", "text"}));

  auto* gen = app.add_subcommand("gen", "generate a seeded random problem");
  gen->add_option("--students", n_students)->check(CLI::NonNegativeNumber);
  gen->add_option("--schools", m_schools)->check(CLI::NonNegativeNumber);
  gen->add_option("--cap-min", cap_min);
  gen->add_option("--cap-max", cap_max);
  gen->add_option("--accept-prob", accept_prob)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_file);

  auto* repro = app.add_subcommand("repro", "scripted claim reproduction");
  repro->add_option("claim", claim)
      ->required()
      ->check(CLI::IsMember(
          {"prop1", "thm1", "thm2", "prop5", "thm4", "prop6", "cor1"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      auto p = resolve_problem(problem_file);
      require_valid(p);
      auto cfg = make_config(p, mechanism, ordering_spec);
      auto mu = amm::run_mechanism(p, cfg);
      auto report = amm::full_audit(p, mu);
      json matching_json = amm::io::matching_to_json(p, mu);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << matching_json.dump(2) << "\n";
      }
      json summary{{"mechanism", mechanism},
                   {"size", mu.size()},
                   {"matching", matching_json},
                   {"audit", amm::io::audit_report_to_json(p, report)}};
      if (format == "json")
        std::cout << summary.dump(2) << "\n";
      else
        std::cout << "size " << mu.size() << "\n"
                  << matching_brief(p, mu) << "\n"
                  << amm::io::audit_report_to_text(p, report);
      std::cerr << mechanism << ": size " << mu.size() << " ["
                << matching_brief(p, mu) << "]\n";
      return 0;
    }

    if (audit->parsed()) {
      auto p = resolve_problem(problem_file);
      require_valid(p);
      auto mu = amm::io::load_matching(p, matching_file);
      if (!amm::respects_capacities(p, mu))
        throw std::runtime_error("matching violates capacities");
      auto report = amm::full_audit(p, mu);
      if (format == "json")
        std::cout << amm::io::audit_report_to_json(p, report).dump(2) << "\n";
      else
        std::cout << amm::io::audit_report_to_text(p, report);
      std::cerr << "audited " << matching_file << " (size " << mu.size()
                << ")\n";
      return 0;
    }

    if (equilibria->parsed()) {
      auto p = resolve_problem(problem_file);
      require_valid(p);
      auto cfg = make_config(p, mechanism, ordering_spec);
      auto mech = amm::Mechanism([cfg](const amm::Problem& q) {
        return amm::run_mechanism(q, cfg);
      });
      amm::EnumerationCaps caps{cap};
      std::vector<amm::EquilibriumRecord> records;
      try {
        records = amm::enumerate_equilibria(mech, p, caps);
      } catch (const amm::ProfileCapExceeded& e) {
        json refusal{{"error", "cap-exceeded"},
                     {"required_budget", e.required},
                     {"cap", e.cap}};
        std::cout << refusal.dump(2) << "\n";
        std::cerr << "refused: needs " << e.required
                  << " profile evaluations, cap is " << e.cap << "\n";
        return 1;
      }
      json out{{"mechanism", mechanism},
               {"cap", cap},
               {"equilibria", json::array()}};
      for (const auto& rec : records) {
        json profile = json::object();
        for (int i = 0; i < p.num_students(); ++i) {
          json ranked = json::array();
          for (int s : rec.profile[i]) ranked.push_back(p.schools[s].id);
          profile[p.students[i]] = ranked;
        }
        out["equilibria"].push_back(
            {{"profile", profile},
             {"size", rec.outcome.size()},
             {"outcome", amm::io::matching_to_json(p, rec.outcome)},
             {"deviations_checked", rec.deviations_checked}});
      }
      if (format == "json") {
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& rec : records)
          std::cout << "equilibrium size " << rec.outcome.size() << " "
                    << matching_brief(p, rec.outcome) << "\n";
      }
      std::cerr << records.size() << " equilibria\n";
      return 0;
    }

    if (gen->parsed()) {
      amm::GenConfig cfg{n_students, m_schools, cap_min, cap_max, accept_prob};
      auto p = amm::generate_problem(cfg, seed);
      json j = amm::io::problem_to_json(p);
      if (!out_file.empty()) {
        std::ofstream out(out_file);
        out << j.dump(2) << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
      std::cerr << "generated " << n_students << "x" << m_schools << " seed "
                << seed << "\n";
      return 0;
    }

    if (repro->parsed()) return cmd_repro(claim);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
