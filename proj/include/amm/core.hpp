// Core domain types for school-choice markets: students, schools,
// priorities, preference lists, matchings.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace amm {

/// Sentinel for the outside option (student unassigned).
inline constexpr int kUnassigned = -1;

struct School {
  std::string id;
  int capacity = 0;
};

/// Permutation of student indices, best/first position first.
using Ordering = std::vector<int>;

/// A school-choice problem: the market (I, S, succ, q) together with a
/// preference profile P. Students and schools are referred to by dense
/// indices; the string ids round-trip through the JSON format.
///
/// All fields are set at construction time; call rebuild_index() after
/// any direct mutation. Every operation in the library treats Problem
/// as immutable.
struct Problem {
  std::vector<std::string> students;
  std::vector<School> schools;
  // priorities[s] = student indices, highest priority first (permutation of I)
  std::vector<std::vector<int>> priorities;
  // preferences[i] = ranked acceptable schools, best first; absent = unacceptable
  std::vector<std::vector<int>> preferences;

  int num_students() const { return static_cast<int>(students.size()); }
  int num_schools() const { return static_cast<int>(schools.size()); }

  int student_index(std::string_view id) const;  // -1 if unknown
  int school_index(std::string_view id) const;   // -1 if unknown

  /// Rank of school s in student i's list; -1 if unacceptable.
  int pref_rank(int i, int s) const { return pref_rank_[i][s]; }
  /// Rank of student i in school s's priority order (0 = highest).
  int prio_rank(int s, int i) const { return prio_rank_[s][i]; }

  bool acceptable(int i, int s) const { return pref_rank_[i][s] >= 0; }

  /// True iff i ranks x strictly above j in school s's priority order.
  bool higher_priority(int s, int i, int j) const {
    return prio_rank_[s][i] < prio_rank_[s][j];
  }

  /// Rebuild the rank lookup tables. Must be called after construction
  /// and only on a problem free of validation violations.
  void rebuild_index();

  /// Copy with one student's preference list replaced (index rebuilt).
  Problem with_preferences(int student, std::vector<int> ranked) const;

 private:
  std::vector<std::vector<int>> pref_rank_;  // [student][school]
  std::vector<std::vector<int>> prio_rank_;  // [school][student]
  std::unordered_map<std::string, int> student_by_id_;
  std::unordered_map<std::string, int> school_by_id_;
};

/// Total assignment map; assignment[i] is a school index or kUnassigned.
struct Matching {
  std::vector<int> assignment;

  Matching() = default;
  explicit Matching(int n) : assignment(n, kUnassigned) {}

  int size() const;  // number of assigned students

  bool operator==(const Matching&) const = default;
};

/// Students currently placed at school s.
std::vector<int> assigned_to(const Matching& mu, int school);

/// Checks every structural invariant of Problem; returns one message per
/// violation (empty = valid). Violations are data, not failures.
std::vector<std::string> validate_problem(const Problem& problem);

/// Strict preference x P_i y, where x/y are school indices or kUnassigned.
/// Ranked schools beat the outside option; the outside option beats
/// unranked schools (ties below the outside option broken by school index
/// so the relation stays a linear order).
bool prefers(const Problem& problem, int student, int x, int y);

/// Weak variant: x R_i y.
bool weakly_prefers(const Problem& problem, int student, int x, int y);

bool respects_capacities(const Problem& problem, const Matching& mu);

/// True iff every assigned student holds an acceptable school.
bool is_individually_rational(const Problem& problem, const Matching& mu);

}  // namespace amm
