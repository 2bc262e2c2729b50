#include "amm/audit.hpp"

#include <cstdlib>

#include "amm/mechanisms.hpp"

namespace amm {

Verdict check_non_wasteful(const Problem& problem, const Matching& mu) {
  std::vector<int> load(problem.num_schools(), 0);
  for (int s : mu.assignment)
    if (s != kUnassigned) ++load[s];
  for (int i = 0; i < problem.num_students(); ++i)
    for (int s : problem.preferences[i]) {
      if (s == mu.assignment[i]) break;
      if (load[s] < problem.schools[s].capacity)
        return {.ok = false, .pair = PairWitness{i, s}};
    }
  return {};
}

Verdict check_fair(const Problem& problem, const Matching& mu) {
  for (int i = 0; i < problem.num_students(); ++i)
    for (int s : problem.preferences[i]) {
      if (s == mu.assignment[i]) break;
      for (int j : assigned_to(mu, s))
        if (problem.higher_priority(s, i, j))
          return {.ok = false, .pair = PairWitness{i, s, j}};
    }
  return {};
}

Verdict check_stable(const Problem& problem, const Matching& mu) {
  if (!is_individually_rational(problem, mu)) return {.ok = false};
  if (Verdict v = check_non_wasteful(problem, mu); !v) return v;
  return check_fair(problem, mu);
}

Verdict check_fair_unassigned(const Problem& problem, const Matching& mu) {
  for (int i = 0; i < problem.num_students(); ++i) {
    if (mu.assignment[i] != kUnassigned) continue;
    for (int s : problem.preferences[i])
      for (int j : assigned_to(mu, s))
        if (problem.higher_priority(s, i, j))
          return {.ok = false, .pair = PairWitness{i, s, j}};
  }
  return {};
}

Verdict check_maximal(const Problem& problem, const Matching& mu) {
  return {.ok = mu.size() == max_assignable_size(problem)};
}

bool dominates(const Problem& problem, const Matching& mu,
               const Matching& mu_prime) {
  bool strict = false;
  for (int i = 0; i < problem.num_students(); ++i) {
    if (!weakly_prefers(problem, i, mu.assignment[i], mu_prime.assignment[i]))
      return false;
    if (mu.assignment[i] != mu_prime.assignment[i]) strict = true;
  }
  return strict;
}

bool size_wise_dominates(const Matching& mu, const Matching& mu_prime) {
  return mu.size() > mu_prime.size();
}

Verdict check_efficient(const Problem& problem, const Matching& mu,
                        EfficiencyMode mode, std::uint64_t cap) {
  if (mode == EfficiencyMode::Lemma) {
    if (!check_maximal(problem, mu).ok)
      throw std::invalid_argument(
          "check_efficient: lemma mode requires a maximal matching");
    auto move = find_improving_move(problem, mu);
    if (!move) return {};
    return {.ok = false, .move = std::move(move)};
  }

  Verdict out;
  for_each_ir_matching(
      problem,
      [&](const Matching& candidate) {
        if (dominates(problem, candidate, mu)) {
          out = {.ok = false, .dominating = candidate};
          return false;
        }
        return true;
      },
      cap);
  return out;
}

int rural_hospital_gap(const Problem& problem) {
  return std::abs(run_da(problem).size() -
                  run_da_school_proposing(problem).size());
}

AuditReport full_audit(const Problem& problem, const Matching& mu,
                       std::uint64_t cap) {
  AuditReport r;
  r.individually_rational = {.ok = is_individually_rational(problem, mu)};
  r.non_wasteful = check_non_wasteful(problem, mu);
  r.fair = check_fair(problem, mu);
  r.stable = check_stable(problem, mu);
  r.fair_unassigned = check_fair_unassigned(problem, mu);
  r.maximal = check_maximal(problem, mu);
  try {
    r.efficient = check_efficient(problem, mu, EfficiencyMode::Exact, cap);
  } catch (const EnumerationCapExceeded&) {
    r.efficient = std::nullopt;
  }
  return r;
}

std::string describe_witness(const Problem& problem, const Verdict& v) {
  if (v.ok) return "";
  if (v.pair) {
    std::string out = "(" + problem.students[v.pair->student] + "," +
                      problem.schools[v.pair->school].id;
    if (v.pair->occupant >= 0)
      out += "," + problem.students[v.pair->occupant];
    return out + ")";
  }
  if (v.dominating) {
    std::string out = "dominated-by{";
    for (int i = 0; i < problem.num_students(); ++i) {
      if (i) out += ",";
      int s = v.dominating->assignment[i];
      out += problem.students[i] + ":" +
             (s == kUnassigned ? "-" : problem.schools[s].id);
    }
    return out + "}";
  }
  if (v.move) {
    std::string out =
        v.move->kind == ImprovingMove::Kind::Cycle ? "cycle[" : "chain[";
    for (size_t k = 0; k < v.move->hops.size(); ++k) {
      const Hop& h = v.move->hops[k];
      if (k) out += " ";
      out += problem.students[h.student] + ":" + problem.schools[h.from].id +
             ">" + problem.schools[h.to].id;
    }
    return out + "]";
  }
  return "(no witness)";
}

}  // namespace amm
