#include "amm/game.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "amm/fixtures.hpp"
#include "amm/mechanisms.hpp"

namespace amm {

namespace {

void gen_reports(int m, std::vector<int>& prefix, std::vector<char>& used,
                 int target_len, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == target_len) {
    out.push_back(prefix);
    return;
  }
  for (int s = 0; s < m; ++s) {
    if (used[s]) continue;
    used[s] = 1;
    prefix.push_back(s);
    gen_reports(m, prefix, used, target_len, out);
    prefix.pop_back();
    used[s] = 0;
  }
}

}  // namespace

const std::vector<std::vector<int>>& enumerate_reports(int num_schools) {
  static std::mutex mtx;
  static std::map<int, std::vector<std::vector<int>>> cache;
  std::lock_guard lock(mtx);
  auto it = cache.find(num_schools);
  if (it != cache.end()) return it->second;

  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  std::vector<char> used(num_schools, 0);
  for (int len = 0; len <= num_schools; ++len)
    gen_reports(num_schools, prefix, used, len, out);
  return cache.emplace(num_schools, std::move(out)).first->second;
}

Problem with_profile(const Problem& truth, const ReportProfile& profile) {
  Problem p = truth;
  p.preferences = profile;
  p.rebuild_index();
  return p;
}

ReportProfile truthful_profile(const Problem& truth) {
  return truth.preferences;
}

std::optional<std::vector<int>> best_response_exists(
    const Mechanism& mechanism, const Problem& truth,
    const ReportProfile& profile, int student) {
  if (student < 0 || student >= truth.num_students())
    throw std::out_of_range("best_response_exists: unknown student");
  const int current = mechanism(with_profile(truth, profile))
                          .assignment[student];
  for (const auto& report : enumerate_reports(truth.num_schools())) {
    ReportProfile deviated = profile;
    deviated[student] = report;
    int got = mechanism(with_profile(truth, deviated)).assignment[student];
    if (prefers(truth, student, got, current)) return report;
  }
  return std::nullopt;
}

bool is_equilibrium(const Mechanism& mechanism, const Problem& truth,
                    const ReportProfile& profile) {
  for (int i = 0; i < truth.num_students(); ++i)
    if (best_response_exists(mechanism, truth, profile, i)) return false;
  return true;
}

namespace {

// Dense profile space: profile index = digits base R, student 0 least
// significant. Outcomes are stored flat (one byte per student) so the
// full table fits in memory at the default cap.
struct ProfileSpace {
  const Problem& truth;
  const std::vector<std::vector<int>>& reports;
  std::uint64_t count;

  ProfileSpace(const Problem& truth_, std::uint64_t cap)
      : truth(truth_), reports(enumerate_reports(truth_.num_schools())) {
    const std::uint64_t R = reports.size();
    count = 1;
    for (int i = 0; i < truth.num_students(); ++i) {
      if (count > cap / R) {
        std::uint64_t required = count;
        for (int k = i; k < truth.num_students(); ++k) {
          if (required > UINT64_MAX / R) {
            required = UINT64_MAX;
            break;
          }
          required *= R;
        }
        throw ProfileCapExceeded(required, cap);
      }
      count *= R;
    }
  }

  ReportProfile decode(std::uint64_t index) const {
    ReportProfile profile(truth.num_students());
    const std::uint64_t R = reports.size();
    for (int i = 0; i < truth.num_students(); ++i) {
      profile[i] = reports[index % R];
      index /= R;
    }
    return profile;
  }
};

}  // namespace

std::vector<EquilibriumRecord> enumerate_equilibria(
    const Mechanism& mechanism, const Problem& truth,
    const EnumerationCaps& caps) {
  const int n = truth.num_students();
  ProfileSpace space(truth, caps.max_profiles);
  const std::uint64_t R = space.reports.size();

  if (n == 0) {
    Matching empty_outcome = mechanism(truth);
    return {{ReportProfile{}, empty_outcome, true, 0}};
  }

  // Outcome table: one mechanism evaluation per profile; equilibrium
  // verification is then pure table lookups.
  std::vector<std::int8_t> outcomes(space.count * n);
  for (std::uint64_t idx = 0; idx < space.count; ++idx) {
    Matching mu = mechanism(with_profile(truth, space.decode(idx)));
    for (int i = 0; i < n; ++i)
      outcomes[idx * n + i] = static_cast<std::int8_t>(mu.assignment[i]);
  }

  std::vector<EquilibriumRecord> records;
  std::uint64_t stride = 1;
  std::vector<std::uint64_t> strides(n);
  for (int i = 0; i < n; ++i) {
    strides[i] = stride;
    stride *= R;
  }

  for (std::uint64_t idx = 0; idx < space.count; ++idx) {
    bool eq = true;
    for (int i = 0; i < n && eq; ++i) {
      int held = outcomes[idx * n + i];
      std::uint64_t digit = (idx / strides[i]) % R;
      std::uint64_t base = idx - digit * strides[i];
      for (std::uint64_t r = 0; r < R; ++r) {
        int got = outcomes[(base + r * strides[i]) * n + i];
        if (prefers(truth, i, got, held)) {
          eq = false;
          break;
        }
      }
    }
    if (eq) {
      Matching mu(n);
      for (int i = 0; i < n; ++i) mu.assignment[i] = outcomes[idx * n + i];
      records.push_back({space.decode(idx), std::move(mu), true,
                         static_cast<std::uint64_t>(n) * R});
    }
  }
  return records;
}

std::optional<std::pair<int, int>> equilibrium_size_bounds(
    const Mechanism& mechanism, const Problem& truth,
    const EnumerationCaps& caps) {
  auto records = enumerate_equilibria(mechanism, truth, caps);
  if (records.empty()) return std::nullopt;
  int lo = records.front().outcome.size();
  int hi = lo;
  for (const auto& r : records) {
    lo = std::min(lo, r.outcome.size());
    hi = std::max(hi, r.outcome.size());
  }
  return std::make_pair(lo, hi);
}

std::vector<ManipulationEntry> manipulation_size_effect(
    const Mechanism& mechanism, const Problem& truth) {
  const Matching at_truth = mechanism(truth);
  std::vector<ManipulationEntry> entries;
  for (int i = 0; i < truth.num_students(); ++i) {
    for (const auto& report : enumerate_reports(truth.num_schools())) {
      if (report == truth.preferences[i]) continue;
      ReportProfile profile = truth.preferences;
      profile[i] = report;
      Matching mu = mechanism(with_profile(truth, profile));
      if (prefers(truth, i, mu.assignment[i], at_truth.assignment[i]))
        entries.push_back({i, report, at_truth.size(), mu.size()});
    }
  }
  return entries;
}

SweepResult sincerity_sweep(const Mechanism& mechanism, const Problem& truth,
                            const std::vector<char>& sincere,
                            const Ordering& order, int max_passes) {
  // Outcomes are memoized per visited profile; dynamics revisit the
  // same profiles heavily.
  std::map<ReportProfile, Matching> cache;
  auto eval = [&](const ReportProfile& profile) -> const Matching& {
    auto it = cache.find(profile);
    if (it == cache.end())
      it = cache.emplace(profile, mechanism(with_profile(truth, profile)))
               .first;
    return it->second;
  };

  ReportProfile profile = truthful_profile(truth);
  const auto& reports = enumerate_reports(truth.num_schools());

  for (int pass = 0; pass < max_passes; ++pass) {
    bool changed = false;
    for (int i : order) {
      if (sincere[i]) continue;
      int best_school = eval(profile).assignment[i];
      std::vector<int> best_report = profile[i];
      for (const auto& report : reports) {
        ReportProfile deviated = profile;
        deviated[i] = report;
        int got = eval(deviated).assignment[i];
        if (prefers(truth, i, got, best_school)) {
          best_school = got;
          best_report = report;
        }
      }
      if (best_report != profile[i]) {
        profile[i] = best_report;
        changed = true;
      }
    }
    if (!changed)
      return {profile, eval(profile).size(), true};
  }
  return {profile, eval(profile).size(), false};
}

Mechanism scripted_equilibrium_mechanism_fixture_b() {
  // Student indices in fixture B: i=0, j=1, k=2, h=3; schools a=0, b=1,
  // c=2. The scripted rows follow the proof's outcome table; every
  // other profile falls through to FAM with ordering (k, j, i, h).
  const Problem truth = fixtures::fixture_b();
  const Ordering fam_order{2, 1, 0, 3};
  return [truth, fam_order](const Problem& p) -> Matching {
    std::vector<int> deviators;
    for (int i = 0; i < truth.num_students(); ++i)
      if (p.preferences[i] != truth.preferences[i]) deviators.push_back(i);

    Matching mu(4);
    if (deviators.empty() || deviators == std::vector<int>{3}) {
      mu.assignment = {1, 0, 2, kUnassigned};  // i->b, j->a, k->c
      return mu;
    }
    if (deviators == std::vector<int>{0}) {
      bool b_acceptable =
          std::find(p.preferences[0].begin(), p.preferences[0].end(), 1) !=
          p.preferences[0].end();
      if (b_acceptable)
        mu.assignment = {1, kUnassigned, 0, 2};  // i->b, k->a, h->c
      else
        mu.assignment = {kUnassigned, kUnassigned, 0, 2};
      return mu;
    }
    return run_fam(p, fam_order);
  };
}

}  // namespace amm
