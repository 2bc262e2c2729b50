// Test-only brute-force oracles, kept independent of the library's
// search machinery: matchings are enumerated as raw assignment vectors
// over (schools + outside option)^n and filtered by the definitions.
#pragma once

#include <vector>

#include "amm/core.hpp"

namespace oracle {

inline std::vector<amm::Matching> all_ir_matchings(const amm::Problem& p) {
  const int n = p.num_students();
  const int m = p.num_schools();
  std::vector<amm::Matching> out;
  std::vector<int> digits(n, 0);  // 0 = unassigned, 1..m = school index+1
  for (;;) {
    amm::Matching mu(n);
    bool ok = true;
    std::vector<int> load(m, 0);
    for (int i = 0; i < n && ok; ++i) {
      if (digits[i] == 0) continue;
      int s = digits[i] - 1;
      if (!p.acceptable(i, s) || ++load[s] > p.schools[s].capacity) ok = false;
      mu.assignment[i] = s;
    }
    if (ok) out.push_back(mu);

    int pos = 0;
    while (pos < n && digits[pos] == m) digits[pos++] = 0;
    if (pos == n) break;
    ++digits[pos];
  }
  return out;
}

inline int brute_max_size(const amm::Problem& p) {
  int best = 0;
  for (const auto& mu : all_ir_matchings(p)) best = std::max(best, mu.size());
  return best;
}

inline bool brute_feasible(const amm::Problem& p,
                           const std::vector<int>& forced) {
  for (const auto& mu : all_ir_matchings(p)) {
    bool ok = true;
    for (int i : forced) ok = ok && mu.assignment[i] != amm::kUnassigned;
    if (ok) return true;
  }
  return false;
}

// mu weakly improves everyone over nu and strictly improves someone.
inline bool brute_dominates(const amm::Problem& p, const amm::Matching& mu,
                            const amm::Matching& nu) {
  bool strict = false;
  for (int i = 0; i < p.num_students(); ++i) {
    int a = mu.assignment[i];
    int b = nu.assignment[i];
    if (a == b) continue;
    if (!amm::prefers(p, i, a, b)) return false;
    strict = true;
  }
  return strict;
}

inline bool brute_is_dominated(const amm::Problem& p, const amm::Matching& nu) {
  for (const auto& mu : all_ir_matchings(p))
    if (brute_dominates(p, mu, nu)) return true;
  return false;
}

}  // namespace oracle
