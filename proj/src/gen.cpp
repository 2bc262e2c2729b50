#include "amm/gen.hpp"

#include <algorithm>

namespace amm {

Problem generate_problem(const GenConfig& config, std::mt19937& rng) {
  Problem p;
  for (int i = 0; i < config.num_students; ++i)
    p.students.push_back("i" + std::to_string(i + 1));
  std::uniform_int_distribution<int> cap_dist(config.capacity_min,
                                              config.capacity_max);
  for (int s = 0; s < config.num_schools; ++s)
    p.schools.push_back({"s" + std::to_string(s + 1), cap_dist(rng)});

  std::vector<int> all_students(config.num_students);
  for (int i = 0; i < config.num_students; ++i) all_students[i] = i;
  for (int s = 0; s < config.num_schools; ++s) {
    auto order = all_students;
    std::shuffle(order.begin(), order.end(), rng);
    p.priorities.push_back(std::move(order));
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<int> all_schools(config.num_schools);
  for (int s = 0; s < config.num_schools; ++s) all_schools[s] = s;
  for (int i = 0; i < config.num_students; ++i) {
    std::vector<int> ranked;
    for (int s = 0; s < config.num_schools; ++s)
      if (unit(rng) < config.acceptability_prob) ranked.push_back(s);
    std::shuffle(ranked.begin(), ranked.end(), rng);
    p.preferences.push_back(std::move(ranked));
  }

  p.rebuild_index();
  return p;
}

}  // namespace amm
