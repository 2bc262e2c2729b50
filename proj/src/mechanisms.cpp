#include "amm/mechanisms.hpp"

#include <algorithm>
#include <deque>

namespace amm {

std::string to_string(MechanismKind kind) {
  switch (kind) {
    case MechanismKind::EAM: return "eam";
    case MechanismKind::FAM: return "fam";
    case MechanismKind::DA: return "da";
    case MechanismKind::TTC: return "ttc";
    case MechanismKind::Boston: return "boston";
    case MechanismKind::SD: return "sd";
  }
  return "?";
}

MechanismKind mechanism_kind_from_string(const std::string& name) {
  if (name == "eam") return MechanismKind::EAM;
  if (name == "fam") return MechanismKind::FAM;
  if (name == "da") return MechanismKind::DA;
  if (name == "ttc") return MechanismKind::TTC;
  if (name == "boston") return MechanismKind::Boston;
  if (name == "sd") return MechanismKind::SD;
  throw std::invalid_argument("unknown mechanism: " + name);
}

Ordering default_ordering(const Problem& problem) {
  Ordering o(problem.num_students());
  for (int i = 0; i < problem.num_students(); ++i) o[i] = i;
  return o;
}

Matching run_eam(const Problem& problem, const Ordering& ordering) {
  ForcedSet forced = greedy_forced_set(problem, ordering);
  Matching mu = select_step1_matching(problem, ordering, forced);
  while (auto move = find_improving_move(problem, mu))
    mu = apply_move(problem, mu, *move);
  return mu;
}

Matching fam_repair(const Problem& problem, Matching mu) {
  for (;;) {
    // Violating pairs: unassigned i, acceptable s, some occupant of s
    // with lower priority than i. Pick the earliest unassigned student
    // (input index order), then their most-preferred violating school.
    int pick_student = -1;
    int pick_school = -1;
    for (int i = 0; i < problem.num_students() && pick_student == -1; ++i) {
      if (mu.assignment[i] != kUnassigned) continue;
      for (int s : problem.preferences[i]) {
        bool violating = false;
        for (int j : assigned_to(mu, s))
          if (problem.higher_priority(s, i, j)) {
            violating = true;
            break;
          }
        if (violating) {
          pick_student = i;
          pick_school = s;
          break;
        }
      }
    }
    if (pick_student == -1) return mu;

    auto occupants = assigned_to(mu, pick_school);
    int lowest = occupants.front();
    for (int j : occupants)
      if (problem.higher_priority(pick_school, lowest, j)) lowest = j;
    mu.assignment[pick_student] = pick_school;
    mu.assignment[lowest] = kUnassigned;
  }
}

Matching run_fam(const Problem& problem, const Ordering& ordering) {
  return fam_repair(problem, run_eam(problem, ordering));
}

Matching run_da(const Problem& problem) {
  const int n = problem.num_students();
  Matching mu(n);
  std::vector<int> next_choice(n, 0);
  std::deque<int> free;
  for (int i = 0; i < n; ++i) free.push_back(i);

  while (!free.empty()) {
    int i = free.front();
    free.pop_front();
    const auto& prefs = problem.preferences[i];
    if (next_choice[i] >= static_cast<int>(prefs.size())) continue;
    int s = prefs[next_choice[i]++];
    auto held = assigned_to(mu, s);
    if (static_cast<int>(held.size()) < problem.schools[s].capacity) {
      mu.assignment[i] = s;
      continue;
    }
    if (held.empty()) {  // zero-capacity school
      free.push_back(i);
      continue;
    }
    int worst = held.front();
    for (int j : held)
      if (problem.higher_priority(s, worst, j)) worst = j;
    if (problem.higher_priority(s, i, worst)) {
      mu.assignment[worst] = kUnassigned;
      mu.assignment[i] = s;
      free.push_back(worst);
    } else {
      free.push_back(i);
    }
  }
  return mu;
}

Matching run_da_school_proposing(const Problem& problem) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  // held[i] = school currently holding student i's tentative acceptance
  std::vector<int> held(n, kUnassigned);
  // next student each school will propose to, per filled seat attempt
  std::vector<int> next(m, 0);
  std::vector<std::vector<int>> proposals_held(m);

  bool progress = true;
  while (progress) {
    progress = false;
    for (int s = 0; s < m; ++s) {
      while (static_cast<int>(proposals_held[s].size()) <
                 problem.schools[s].capacity &&
             next[s] < n) {
        int i = problem.priorities[s][next[s]++];
        if (!problem.acceptable(i, s)) continue;
        progress = true;
        if (held[i] == kUnassigned || prefers(problem, i, s, held[i])) {
          if (held[i] != kUnassigned) {
            auto& old = proposals_held[held[i]];
            old.erase(std::find(old.begin(), old.end(), i));
          }
          held[i] = s;
          proposals_held[s].push_back(i);
        }
      }
    }
  }
  Matching mu(n);
  mu.assignment = held;
  return mu;
}

Matching run_ttc(const Problem& problem) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  Matching mu(n);
  std::vector<char> student_out(n, 0);
  std::vector<int> cap(m);
  for (int s = 0; s < m; ++s) cap[s] = problem.schools[s].capacity;

  auto student_target = [&](int i) {
    for (int s : problem.preferences[i])
      if (cap[s] > 0) return s;
    return kUnassigned;
  };
  auto school_target = [&](int s) {
    for (int i : problem.priorities[s])
      if (!student_out[i]) return i;
    return -1;
  };

  for (;;) {
    // Students with no remaining acceptable school leave unassigned.
    bool removed = true;
    while (removed) {
      removed = false;
      for (int i = 0; i < n; ++i)
        if (!student_out[i] && student_target(i) == kUnassigned) {
          student_out[i] = 1;
          removed = true;
        }
    }
    int start = -1;
    for (int i = 0; i < n; ++i)
      if (!student_out[i]) {
        start = i;
        break;
      }
    if (start == -1) break;

    // Walk student -> top school -> top student until a repeat: cycle.
    std::vector<int> order(n, -1);
    std::vector<int> walk;
    int cur = start;
    while (order[cur] == -1) {
      order[cur] = static_cast<int>(walk.size());
      walk.push_back(cur);
      cur = school_target(student_target(cur));
    }
    for (size_t k = order[cur]; k < walk.size(); ++k) {
      int i = walk[k];
      int s = student_target(i);
      mu.assignment[i] = s;
      --cap[s];
      student_out[i] = 1;
    }
  }
  return mu;
}

Matching run_boston(const Problem& problem) {
  const int n = problem.num_students();
  const int m = problem.num_schools();
  Matching mu(n);
  std::vector<int> cap(m);
  for (int s = 0; s < m; ++s) cap[s] = problem.schools[s].capacity;

  int max_round = 0;
  for (int i = 0; i < n; ++i)
    max_round = std::max(max_round,
                         static_cast<int>(problem.preferences[i].size()));

  for (int round = 0; round < max_round; ++round) {
    std::vector<std::vector<int>> applicants(m);
    for (int i = 0; i < n; ++i) {
      if (mu.assignment[i] != kUnassigned) continue;
      if (round < static_cast<int>(problem.preferences[i].size()))
        applicants[problem.preferences[i][round]].push_back(i);
    }
    for (int s = 0; s < m; ++s) {
      auto& apps = applicants[s];
      std::sort(apps.begin(), apps.end(), [&](int a, int b) {
        return problem.higher_priority(s, a, b);
      });
      for (int i : apps) {
        if (cap[s] == 0) break;
        mu.assignment[i] = s;
        --cap[s];
      }
    }
  }
  return mu;
}

Matching run_sd(const Problem& problem, const Ordering& ordering) {
  Matching mu(problem.num_students());
  std::vector<int> cap(problem.num_schools());
  for (int s = 0; s < problem.num_schools(); ++s)
    cap[s] = problem.schools[s].capacity;
  for (int i : ordering)
    for (int s : problem.preferences[i])
      if (cap[s] > 0) {
        mu.assignment[i] = s;
        --cap[s];
        break;
      }
  return mu;
}

Matching run_mechanism(const Problem& problem, const MechanismConfig& config) {
  switch (config.kind) {
    case MechanismKind::EAM: return run_eam(problem, config.ordering);
    case MechanismKind::FAM: return run_fam(problem, config.ordering);
    case MechanismKind::DA: return run_da(problem);
    case MechanismKind::TTC: return run_ttc(problem);
    case MechanismKind::Boston: return run_boston(problem);
    case MechanismKind::SD: return run_sd(problem, config.ordering);
  }
  throw std::invalid_argument("run_mechanism: unknown kind");
}

}  // namespace amm
