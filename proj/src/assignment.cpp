#include "amm/assignment.hpp"

#include <algorithm>
#include <limits>

namespace amm {

namespace {

// Augmenting-path (Kuhn) matching over expanded school seats. Capacities
// are materialized as one seat node per unit, which keeps the search
// textbook-simple at desk scale.
class SeatMatcher {
 public:
  SeatMatcher(const Problem& p, const std::vector<int>& cap) : p_(p) {
    seat_offset_.resize(p.num_schools() + 1, 0);
    for (int s = 0; s < p.num_schools(); ++s)
      seat_offset_[s + 1] = seat_offset_[s] + cap[s];
    holder_.assign(seat_offset_.back(), -1);
  }

  // Tries to add student i; true iff an augmenting path was found.
  bool add(int i) {
    visited_.assign(holder_.size(), 0);
    return augment(i);
  }

  int matched_count() const {
    int n = 0;
    for (int h : holder_) n += (h != -1);
    return n;
  }

  // student -> school (or kUnassigned) for the current matching
  std::vector<int> extract(int num_students) const {
    std::vector<int> out(num_students, kUnassigned);
    for (int s = 0; s < p_.num_schools(); ++s)
      for (int t = seat_offset_[s]; t < seat_offset_[s + 1]; ++t)
        if (holder_[t] != -1) out[holder_[t]] = s;
    return out;
  }

 private:
  bool augment(int i) {
    for (int s : p_.preferences[i]) {
      for (int t = seat_offset_[s]; t < seat_offset_[s + 1]; ++t) {
        if (visited_[t]) continue;
        visited_[t] = 1;
        if (holder_[t] == -1 || augment(holder_[t])) {
          holder_[t] = i;
          return true;
        }
      }
    }
    return false;
  }

  const Problem& p_;
  std::vector<int> seat_offset_;
  std::vector<int> holder_;
  std::vector<char> visited_;
};

std::vector<int> full_capacities(const Problem& p) {
  std::vector<int> cap(p.num_schools());
  for (int s = 0; s < p.num_schools(); ++s) cap[s] = p.schools[s].capacity;
  return cap;
}

// Number of students from `group` that can be simultaneously assigned
// under the given remaining capacities.
int max_match(const Problem& p, const std::vector<int>& group,
              const std::vector<int>& cap) {
  SeatMatcher matcher(p, cap);
  int matched = 0;
  for (int i : group) matched += matcher.add(i);
  return matched;
}

void check_students(const Problem& p, const std::vector<int>& set,
                    const char* what) {
  for (int i : set)
    if (i < 0 || i >= p.num_students())
      throw std::out_of_range(std::string(what) + ": unknown student");
}

void check_ordering(const Problem& p, const Ordering& ordering) {
  std::vector<char> seen(p.num_students(), 0);
  if (static_cast<int>(ordering.size()) != p.num_students())
    throw std::invalid_argument("ordering is not a permutation of I");
  for (int i : ordering) {
    if (i < 0 || i >= p.num_students() || seen[i])
      throw std::invalid_argument("ordering is not a permutation of I");
    seen[i] = 1;
  }
}

}  // namespace

int max_assignable_size(const Problem& problem) {
  std::vector<int> all(problem.num_students());
  for (int i = 0; i < problem.num_students(); ++i) all[i] = i;
  return max_match(problem, all, full_capacities(problem));
}

bool feasible(const Problem& problem, const ForcedSet& forced) {
  check_students(problem, forced, "feasible");
  return max_match(problem, forced, full_capacities(problem)) ==
         static_cast<int>(forced.size());
}

ForcedSet greedy_forced_set(const Problem& problem, const Ordering& ordering) {
  check_ordering(problem, ordering);
  ForcedSet forced;
  for (int i : ordering) {
    forced.push_back(i);
    if (!feasible(problem, forced)) forced.pop_back();
  }
  return forced;
}

Matching select_step1_matching(const Problem& problem, const Ordering& ordering,
                               const ForcedSet& forced) {
  check_ordering(problem, ordering);
  if (!feasible(problem, forced))
    throw std::invalid_argument("select_step1_matching: infeasible forced set");

  std::vector<char> in_forced(problem.num_students(), 0);
  for (int i : forced) in_forced[i] = 1;

  std::vector<int> cap = full_capacities(problem);
  Matching mu(problem.num_students());

  // Students of the forced set still waiting, in ordering order.
  std::vector<int> pending;
  for (int i : ordering)
    if (in_forced[i]) pending.push_back(i);

  while (!pending.empty()) {
    int u = pending.front();
    pending.erase(pending.begin());
    bool placed = false;
    for (int s : problem.preferences[u]) {
      if (cap[s] == 0) continue;
      --cap[s];
      if (max_match(problem, pending, cap) ==
          static_cast<int>(pending.size())) {
        mu.assignment[u] = s;
        placed = true;
        break;
      }
      ++cap[s];
    }
    if (!placed)
      throw std::logic_error("select_step1_matching: feasibility lost");
  }
  return mu;
}

namespace {

struct Edge {
  int student;
  int to;
};

struct MoveSearch {
  const Problem& p;
  std::vector<std::vector<Edge>> edges;  // per `from` school
  std::vector<char> slack;
  int length_target = 0;
  int start = -1;
  std::vector<char> on_path;
  std::vector<Hop> hops;
  std::vector<ImprovingMove> found;  // all moves of length_target

  void dfs(int node, int depth) {
    for (const Edge& e : edges[node]) {
      if (depth + 1 == length_target) {
        if (e.to == start && length_target >= 2) {
          hops.push_back({e.student, node, e.to});
          found.push_back({ImprovingMove::Kind::Cycle, hops});
          hops.pop_back();
        }
        if (!on_path[e.to] && slack[e.to]) {
          hops.push_back({e.student, node, e.to});
          found.push_back({ImprovingMove::Kind::Chain, hops});
          hops.pop_back();
        }
      } else if (!on_path[e.to]) {
        on_path[e.to] = 1;
        hops.push_back({e.student, node, e.to});
        dfs(e.to, depth + 1);
        hops.pop_back();
        on_path[e.to] = 0;
      }
    }
  }
};

// Tie-break key: smallest student index in the move, then the hop
// student sequence lexicographically.
std::vector<int> move_key(const ImprovingMove& mv) {
  std::vector<int> key{std::numeric_limits<int>::max()};
  for (const Hop& h : mv.hops) key[0] = std::min(key[0], h.student);
  for (const Hop& h : mv.hops) key.push_back(h.student);
  return key;
}

}  // namespace

std::optional<ImprovingMove> find_improving_move(const Problem& problem,
                                                 const Matching& matching) {
  if (!respects_capacities(problem, matching) ||
      !is_individually_rational(problem, matching))
    throw std::invalid_argument("find_improving_move: matching is not IR");
  if (matching.size() != max_assignable_size(problem))
    throw std::invalid_argument("find_improving_move: matching is not maximal");

  const int m = problem.num_schools();
  MoveSearch search{problem};
  search.edges.assign(m, {});
  std::vector<int> load(m, 0);
  for (int i = 0; i < problem.num_students(); ++i) {
    int s = matching.assignment[i];
    if (s == kUnassigned) continue;
    ++load[s];
    for (int target : problem.preferences[i]) {
      if (target == s) break;  // ranked worse from here on
      search.edges[s].push_back({i, target});
    }
  }
  for (auto& list : search.edges)
    std::sort(list.begin(), list.end(), [](const Edge& a, const Edge& b) {
      return a.to != b.to ? a.to < b.to : a.student < b.student;
    });
  search.slack.resize(m);
  for (int s = 0; s < m; ++s)
    search.slack[s] = load[s] < problem.schools[s].capacity;

  // Shortest move first; a non-simple improving move always contains a
  // simple one, so searching simple paths/cycles is complete.
  for (int len = 1; len <= m; ++len) {
    search.length_target = len;
    search.found.clear();
    for (int s = 0; s < m; ++s) {
      if (search.edges[s].empty()) continue;
      search.start = s;
      search.on_path.assign(m, 0);
      search.on_path[s] = 1;
      search.dfs(s, 0);
    }
    if (!search.found.empty()) {
      auto best = std::min_element(
          search.found.begin(), search.found.end(),
          [](const ImprovingMove& a, const ImprovingMove& b) {
            return move_key(a) < move_key(b);
          });
      return *best;
    }
  }
  return std::nullopt;
}

Matching apply_move(const Problem& problem, const Matching& matching,
                    const ImprovingMove& move) {
  if (move.hops.empty())
    throw std::invalid_argument("apply_move: empty move");

  std::vector<char> seen_student(problem.num_students(), 0);
  const auto& hops = move.hops;
  for (size_t k = 0; k < hops.size(); ++k) {
    const Hop& h = hops[k];
    if (h.student < 0 || h.student >= problem.num_students())
      throw std::invalid_argument("apply_move: unknown student in hop");
    if (seen_student[h.student])
      throw std::invalid_argument("apply_move: repeated student in move");
    seen_student[h.student] = 1;
    if (matching.assignment[h.student] != h.from)
      throw std::invalid_argument("apply_move: hop does not match assignment");
    if (!problem.acceptable(h.student, h.to) ||
        !prefers(problem, h.student, h.to, h.from))
      throw std::invalid_argument("apply_move: hop does not improve student");
    if (k + 1 < hops.size() && h.to != hops[k + 1].from)
      throw std::invalid_argument("apply_move: hops are not connected");
  }
  if (move.kind == ImprovingMove::Kind::Cycle) {
    if (hops.back().to != hops.front().from)
      throw std::invalid_argument("apply_move: cycle does not close");
  } else {
    int terminal = hops.back().to;
    int load = static_cast<int>(assigned_to(matching, terminal).size());
    // Seats freed earlier in the chain never touch the terminal school.
    for (const Hop& h : hops)
      if (h.from == terminal) --load;
    if (load >= problem.schools[terminal].capacity)
      throw std::invalid_argument("apply_move: chain terminal has no slack");
  }

  Matching out = matching;
  for (const Hop& h : hops) out.assignment[h.student] = h.to;
  if (!respects_capacities(problem, out))
    throw std::invalid_argument("apply_move: move violates capacities");
  return out;
}

}  // namespace amm
