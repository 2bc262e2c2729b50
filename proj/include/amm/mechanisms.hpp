// The mechanism zoo: the EAM and FAM families plus the four baselines
// (deferred acceptance, top trading cycles, Boston, serial dictatorship).
// All mechanisms are pure maps from a problem to a matching.
#pragma once

#include <string>

#include "amm/assignment.hpp"
#include "amm/core.hpp"

namespace amm {

enum class MechanismKind { EAM, FAM, DA, TTC, Boston, SD };

std::string to_string(MechanismKind kind);
MechanismKind mechanism_kind_from_string(const std::string& name);

/// Which mechanism to run and its deterministic selection policies.
/// `ordering` is required for EAM, FAM, and SD. The move policy
/// (shortest chain/cycle, earliest-student tie-break) and the FAM pair
/// policy (earliest unassigned student in the ordering, then their
/// most-preferred violating school) are the only implemented policies.
struct MechanismConfig {
  MechanismKind kind = MechanismKind::EAM;
  Ordering ordering;
};

/// Step 1 greedy forced-set selection along `ordering`, then improving
/// chain/cycle elimination until none remains. Output is individually
/// rational, maximal, and efficient.
Matching run_eam(const Problem& problem, const Ordering& ordering);

/// The repair loop FAM runs on top of an EAM outcome: while some
/// acceptable school holds a student with lower priority than an
/// unassigned student, place the unassigned student and displace the
/// lowest-priority occupant. Exposed so alternate first-stage
/// selections can be driven directly.
Matching fam_repair(const Problem& problem, Matching mu);

/// run_eam followed by fam_repair. Output is individually rational,
/// maximal, and fair for unassigned students.
Matching run_fam(const Problem& problem, const Ordering& ordering);

/// Student-proposing deferred acceptance (Gale-Shapley). Output stable.
Matching run_da(const Problem& problem);

/// School-proposing deferred acceptance. Used by the rural-hospital
/// check only; not part of the CLI surface.
Matching run_da_school_proposing(const Problem& problem);

/// Top trading cycles with capacity counters.
Matching run_ttc(const Problem& problem);

/// Boston (immediate acceptance) by rounds.
Matching run_boston(const Problem& problem);

/// Serial dictatorship: each student in `ordering` takes their
/// most-preferred school with a free seat.
Matching run_sd(const Problem& problem, const Ordering& ordering);

Matching run_mechanism(const Problem& problem, const MechanismConfig& config);

/// The identity ordering (input order of students).
Ordering default_ordering(const Problem& problem);

}  // namespace amm
