// The preference-reporting game: exhaustive report enumeration, Nash
// verification, equilibrium catalogs, manipulation size effects, and
// best-response dynamics with pinned sincere students.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "amm/core.hpp"

namespace amm {

/// A mechanism as the game sees it: a pure map from the problem (market
/// plus submitted profile) to a matching.
using Mechanism = std::function<Matching(const Problem&)>;

/// A submitted profile: one ranked school list per student.
using ReportProfile = std::vector<std::vector<int>>;

/// All strict rankings of all subsets of {0..num_schools-1} in canonical
/// order: by length ascending, then lexicographic on the school-index
/// sequence. Count is sum over k of m!/(m-k)!. Results are cached per m.
const std::vector<std::vector<int>>& enumerate_reports(int num_schools);

/// The truth problem with its preference profile replaced wholesale.
Problem with_profile(const Problem& truth, const ReportProfile& profile);

ReportProfile truthful_profile(const Problem& truth);

/// First strictly profitable unilateral deviation for `student` from
/// `profile`, judged under the TRUE preferences; nullopt if none.
std::optional<std::vector<int>> best_response_exists(
    const Mechanism& mechanism, const Problem& truth,
    const ReportProfile& profile, int student);

bool is_equilibrium(const Mechanism& mechanism, const Problem& truth,
                    const ReportProfile& profile);

struct EquilibriumRecord {
  ReportProfile profile;
  Matching outcome;
  bool verified = true;
  std::uint64_t deviations_checked = 0;
};

class ProfileCapExceeded : public std::runtime_error {
 public:
  ProfileCapExceeded(std::uint64_t required, std::uint64_t cap)
      : std::runtime_error("profile space of " + std::to_string(required) +
                           " exceeds the enumeration cap of " +
                           std::to_string(cap)),
        required(required),
        cap(cap) {}
  std::uint64_t required;  // profile evaluations needed
  std::uint64_t cap;
};

struct EnumerationCaps {
  std::uint64_t max_profiles = 10'000'000;
};

/// Tests every profile in the full report space; returns a record per
/// equilibrium (empty is a valid result). Throws ProfileCapExceeded
/// with the required budget when the space is too large.
std::vector<EquilibriumRecord> enumerate_equilibria(
    const Mechanism& mechanism, const Problem& truth,
    const EnumerationCaps& caps = {});

/// (min, max) matched count over all equilibria; nullopt when none.
std::optional<std::pair<int, int>> equilibrium_size_bounds(
    const Mechanism& mechanism, const Problem& truth,
    const EnumerationCaps& caps = {});

struct ManipulationEntry {
  int student;
  std::vector<int> report;
  int size_before;  // |outcome at truth|
  int size_after;   // |outcome after the deviation|
};

/// Every profitable unilateral deviation from the truthful profile,
/// with the matched counts before and after.
std::vector<ManipulationEntry> manipulation_size_effect(
    const Mechanism& mechanism, const Problem& truth);

struct SweepResult {
  ReportProfile profile;  // profile at the fixed point (or at the cap)
  int matched = 0;
  bool converged = false;
};

/// Sequential best-response dynamics from the truthful profile: sincere
/// students are pinned to truth, strategic students best-respond in
/// `order` until a full pass changes nothing or `max_passes` is hit.
SweepResult sincerity_sweep(const Mechanism& mechanism, const Problem& truth,
                            const std::vector<char>& sincere,
                            const Ordering& order, int max_passes = 50);

/// The table-driven mechanism from the size-3 equilibrium construction
/// on fixture B: truth and single-student deviations by i or h follow
/// the scripted outcomes, everything else falls back to the default FAM
/// with ordering (k, j, i, h). Only valid on the fixture B market.
Mechanism scripted_equilibrium_mechanism_fixture_b();

}  // namespace amm
