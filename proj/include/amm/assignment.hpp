// Maximum-cardinality machinery: feasibility of keeping a student set
// simultaneously assigned, greedy forced-set construction, canonical
// first-stage matching selection, and improving chain/cycle search.
#pragma once

#include <optional>
#include <vector>

#include "amm/core.hpp"

namespace amm {

/// Students required to be simultaneously assigned (subset of I).
using ForcedSet = std::vector<int>;

/// Maximum of |mu| over all individually rational matchings, computed
/// exactly by augmenting-path search over the student/acceptable-school
/// bipartite graph with capacities.
int max_assignable_size(const Problem& problem);

/// True iff some individually rational matching assigns every student in
/// `forced` at once.
bool feasible(const Problem& problem, const ForcedSet& forced);

/// Scan `ordering`; a student joins the forced set iff the set stays
/// feasible with them included. The result is feasible and has size
/// max_assignable_size(problem).
ForcedSet greedy_forced_set(const Problem& problem, const Ordering& ordering);

/// Deterministic canonical selection: walk `ordering` restricted to
/// `forced`, giving each student their most-preferred school with
/// remaining capacity such that the rest of the forced set stays
/// simultaneously assignable. Throws std::invalid_argument if `forced`
/// is infeasible.
Matching select_step1_matching(const Problem& problem, const Ordering& ordering,
                               const ForcedSet& forced);

struct Hop {
  int student;
  int from;
  int to;

  bool operator==(const Hop&) const = default;
};

/// A size-preserving Pareto improvement of a matching. A Chain moves
/// each hop's student from their current school to the next hop's
/// school, ending at a school with slack; a Cycle wraps around.
struct ImprovingMove {
  enum class Kind { Chain, Cycle };
  Kind kind;
  std::vector<Hop> hops;  // hop k's `to` == hop k+1's `from`

  /// For a Chain, the school with slack that absorbs the last student.
  int terminal() const { return hops.back().to; }
};

/// Searches for an improving chain or cycle of the given matching.
/// Returns std::nullopt iff none exists (the matching is then
/// efficient). Policy: shortest move, ties broken by the smallest
/// student index appearing in the move.
///
/// Precondition: `matching` is individually rational and maximal;
/// throws std::invalid_argument otherwise.
std::optional<ImprovingMove> find_improving_move(const Problem& problem,
                                                 const Matching& matching);

/// Applies a chain or cycle; every hop's student is reassigned to
/// hop.to, everyone else is untouched, size is preserved. Throws
/// std::invalid_argument if the move is not valid for this matching.
Matching apply_move(const Problem& problem, const Matching& matching,
                    const ImprovingMove& move);

}  // namespace amm
