// Axiom checkers for matchings: individual rationality, non-wastefulness,
// fairness, stability, fairness for unassigned students, maximality and
// efficiency, with first-class witnesses for every failed verdict.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "amm/assignment.hpp"
#include "amm/core.hpp"

namespace amm {

/// A student-school pair witnessing an axiom violation; `occupant` is
/// the lower-priority student holding the seat where applicable.
struct PairWitness {
  int student;
  int school;
  int occupant = -1;

  bool operator==(const PairWitness&) const = default;
};

struct Verdict {
  bool ok = true;
  std::optional<PairWitness> pair;
  std::optional<Matching> dominating;
  std::optional<ImprovingMove> move;

  explicit operator bool() const { return ok; }
};

enum class EfficiencyMode { Exact, Lemma };

/// No school with slack is preferred by any student to their assignment.
Verdict check_non_wasteful(const Problem& problem, const Matching& mu);

/// No student prefers a school holding a lower-priority student.
Verdict check_fair(const Problem& problem, const Matching& mu);

/// IR + non-wasteful + fair.
Verdict check_stable(const Problem& problem, const Matching& mu);

/// No unassigned student finds acceptable a school holding a student of
/// lower priority.
Verdict check_fair_unassigned(const Problem& problem, const Matching& mu);

/// |mu| equals the maximum assignable size.
Verdict check_maximal(const Problem& problem, const Matching& mu);

/// mu weakly improves every student over mu_prime and strictly improves
/// at least one.
bool dominates(const Problem& problem, const Matching& mu,
               const Matching& mu_prime);

bool size_wise_dominates(const Matching& mu, const Matching& mu_prime);

class EnumerationCapExceeded : public std::runtime_error {
 public:
  explicit EnumerationCapExceeded(std::uint64_t cap)
      : std::runtime_error("enumeration cap of " + std::to_string(cap) +
                           " states exceeded"),
        cap(cap) {}
  std::uint64_t cap;
};

inline constexpr std::uint64_t kDefaultEfficiencyCap = 1'000'000;

/// Exact mode enumerates all individually rational matchings (up to
/// `cap` states, throwing EnumerationCapExceeded beyond); Lemma mode
/// requires a maximal matching and delegates to find_improving_move.
Verdict check_efficient(const Problem& problem, const Matching& mu,
                        EfficiencyMode mode,
                        std::uint64_t cap = kDefaultEfficiencyCap);

/// Visits every individually rational matching of the problem; stops
/// early if `visit` returns false. Throws EnumerationCapExceeded when
/// more than `cap` matchings would be visited.
template <typename Visit>
void for_each_ir_matching(const Problem& problem, Visit&& visit,
                          std::uint64_t cap = kDefaultEfficiencyCap);

/// | |student-proposing DA| - |school-proposing DA| |; zero whenever the
/// rural hospital theorem holds (always, for well-formed problems).
int rural_hospital_gap(const Problem& problem);

/// Full per-axiom report for one matching.
struct AuditReport {
  Verdict individually_rational;
  Verdict non_wasteful;
  Verdict fair;
  Verdict stable;
  Verdict fair_unassigned;
  Verdict maximal;
  std::optional<Verdict> efficient;  // absent when exact mode hit its cap
};

AuditReport full_audit(const Problem& problem, const Matching& mu,
                       std::uint64_t cap = kDefaultEfficiencyCap);

/// Human-readable witness description (empty when the verdict holds).
std::string describe_witness(const Problem& problem, const Verdict& v);

// --- template implementation ---

template <typename Visit>
void for_each_ir_matching(const Problem& problem, Visit&& visit,
                          std::uint64_t cap) {
  const int n = problem.num_students();
  std::vector<int> cap_left(problem.num_schools());
  for (int s = 0; s < problem.num_schools(); ++s)
    cap_left[s] = problem.schools[s].capacity;
  Matching mu(n);
  std::uint64_t visited = 0;
  bool stop = false;

  auto rec = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == n) {
      if (++visited > cap) throw EnumerationCapExceeded(cap);
      if (!visit(static_cast<const Matching&>(mu))) stop = true;
      return;
    }
    mu.assignment[i] = kUnassigned;
    self(self, i + 1);
    for (int s : problem.preferences[i]) {
      if (cap_left[s] == 0) continue;
      --cap_left[s];
      mu.assignment[i] = s;
      self(self, i + 1);
      mu.assignment[i] = kUnassigned;
      ++cap_left[s];
    }
  };
  rec(rec, 0);
}

}  // namespace amm
