#include "amm/core.hpp"

#include <algorithm>

namespace amm {

int Problem::student_index(std::string_view id) const {
  auto it = student_by_id_.find(std::string(id));
  return it == student_by_id_.end() ? -1 : it->second;
}

int Problem::school_index(std::string_view id) const {
  auto it = school_by_id_.find(std::string(id));
  return it == school_by_id_.end() ? -1 : it->second;
}

void Problem::rebuild_index() {
  const int n = num_students();
  const int m = num_schools();
  student_by_id_.clear();
  school_by_id_.clear();
  for (int i = 0; i < n; ++i) student_by_id_.emplace(students[i], i);
  for (int s = 0; s < m; ++s) school_by_id_.emplace(schools[s].id, s);

  // Tolerates partially built problems (validate_problem runs on those);
  // out-of-range entries are simply skipped here.
  pref_rank_.assign(n, std::vector<int>(m, -1));
  for (int i = 0; i < std::min(n, static_cast<int>(preferences.size())); ++i)
    for (int r = 0; r < static_cast<int>(preferences[i].size()); ++r) {
      int s = preferences[i][r];
      if (s >= 0 && s < m) pref_rank_[i][s] = r;
    }

  prio_rank_.assign(m, std::vector<int>(n, -1));
  for (int s = 0; s < std::min(m, static_cast<int>(priorities.size())); ++s)
    for (int r = 0; r < static_cast<int>(priorities[s].size()); ++r) {
      int i = priorities[s][r];
      if (i >= 0 && i < n) prio_rank_[s][i] = r;
    }
}

Problem Problem::with_preferences(int student, std::vector<int> ranked) const {
  Problem copy = *this;
  copy.preferences.at(student) = std::move(ranked);
  copy.rebuild_index();
  return copy;
}

int Matching::size() const {
  return static_cast<int>(std::count_if(assignment.begin(), assignment.end(),
                                        [](int s) { return s != kUnassigned; }));
}

std::vector<int> assigned_to(const Matching& mu, int school) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(mu.assignment.size()); ++i)
    if (mu.assignment[i] == school) out.push_back(i);
  return out;
}

std::vector<std::string> validate_problem(const Problem& problem) {
  std::vector<std::string> violations;
  const int n = problem.num_students();
  const int m = problem.num_schools();

  {
    auto ids = problem.students;
    std::sort(ids.begin(), ids.end());
    for (int i = 1; i < n; ++i)
      if (ids[i] == ids[i - 1])
        violations.push_back("duplicate-student-id(" + ids[i] + ")");
  }
  {
    std::vector<std::string> ids;
    for (const auto& s : problem.schools) ids.push_back(s.id);
    std::sort(ids.begin(), ids.end());
    for (int s = 1; s < m; ++s)
      if (ids[s] == ids[s - 1])
        violations.push_back("duplicate-school-id(" + ids[s] + ")");
  }

  for (const auto& school : problem.schools)
    if (school.capacity < 0)
      violations.push_back("negative-capacity(" + school.id + ")");

  if (static_cast<int>(problem.priorities.size()) != m) {
    violations.push_back("priorities-wrong-count");
  } else {
    for (int s = 0; s < m; ++s) {
      std::vector<char> seen(n, 0);
      bool ok = static_cast<int>(problem.priorities[s].size()) == n;
      for (int i : problem.priorities[s]) {
        if (i < 0 || i >= n || seen[i]) {
          ok = false;
          break;
        }
        seen[i] = 1;
      }
      if (!ok)
        violations.push_back("priority-not-permutation(" +
                             problem.schools[s].id + ")");
    }
  }

  if (static_cast<int>(problem.preferences.size()) != n) {
    violations.push_back("preferences-wrong-count");
  } else {
    for (int i = 0; i < n; ++i) {
      std::vector<char> seen(m, 0);
      for (int s : problem.preferences[i]) {
        if (s < 0 || s >= m) {
          violations.push_back("unknown-school-in-preferences(" +
                               problem.students[i] + ")");
          continue;
        }
        if (seen[s])
          violations.push_back("duplicate-preference(" + problem.students[i] +
                               "," + problem.schools[s].id + ")");
        seen[s] = 1;
      }
    }
  }

  return violations;
}

namespace {

// Position of x in student i's linear order over S + outside option.
// Ranked schools come first, then the outside option, then unranked
// schools ordered by index.
int order_slot(const Problem& p, int student, int x) {
  const int ranked = static_cast<int>(p.preferences[student].size());
  if (x == kUnassigned) return ranked;
  const int r = p.pref_rank(student, x);
  return r >= 0 ? r : ranked + 1 + x;
}

}  // namespace

bool prefers(const Problem& problem, int student, int x, int y) {
  if (student < 0 || student >= problem.num_students())
    throw std::out_of_range("prefers: unknown student");
  return order_slot(problem, student, x) < order_slot(problem, student, y);
}

bool weakly_prefers(const Problem& problem, int student, int x, int y) {
  return x == y || prefers(problem, student, x, y);
}

bool respects_capacities(const Problem& problem, const Matching& mu) {
  std::vector<int> load(problem.num_schools(), 0);
  for (int s : mu.assignment)
    if (s != kUnassigned) {
      if (s < 0 || s >= problem.num_schools())
        throw std::out_of_range("matching references unknown school");
      ++load[s];
    }
  for (int s = 0; s < problem.num_schools(); ++s)
    if (load[s] > problem.schools[s].capacity) return false;
  return true;
}

bool is_individually_rational(const Problem& problem, const Matching& mu) {
  if (static_cast<int>(mu.assignment.size()) != problem.num_students())
    throw std::out_of_range("matching references unknown students");
  for (int i = 0; i < problem.num_students(); ++i) {
    int s = mu.assignment[i];
    if (s == kUnassigned) continue;
    if (s < 0 || s >= problem.num_schools())
      throw std::out_of_range("matching references unknown school");
    if (!problem.acceptable(i, s)) return false;
  }
  return true;
}

}  // namespace amm
