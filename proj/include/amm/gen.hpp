// Seeded random problem generator for the property-test corpus.
#pragma once

#include <cstdint>
#include <random>

#include "amm/core.hpp"

namespace amm {

struct GenConfig {
  int num_students = 4;
  int num_schools = 3;
  int capacity_min = 1;
  int capacity_max = 1;
  double acceptability_prob = 0.7;
};

/// Draws a problem: uniform capacities in range, uniform-random priority
/// permutations, each school independently acceptable with the given
/// probability, acceptable sets ranked by a uniform-random permutation.
/// Deterministic given the rng state.
Problem generate_problem(const GenConfig& config, std::mt19937& rng);

inline Problem generate_problem(const GenConfig& config, std::uint32_t seed) {
  std::mt19937 rng(seed);
  return generate_problem(config, rng);
}

}  // namespace amm
