#include "amm/fixtures.hpp"

namespace amm::fixtures {

Problem fixture_a() {
  Problem p;
  p.students = {"i1", "i2"};
  p.schools = {{"a", 1}, {"b", 1}};
  // The source instance fixes only the top of the priority at a;
  // completion (i2 after i1 everywhere) is immaterial to every use.
  p.priorities = {{0, 1}, {0, 1}};
  p.preferences = {{0, 1}, {0}};
  p.rebuild_index();
  return p;
}

Problem fixture_b() {
  Problem p;
  p.students = {"i", "j", "k", "h"};
  p.schools = {{"a", 1}, {"b", 1}, {"c", 1}};
  // indices: i=0 j=1 k=2 h=3; a=0 b=1 c=2
  p.priorities = {
      {2, 0, 1, 3},  // a: k, i, j, h
      {2, 3, 1, 0},  // b: k, h, j, i
      {2, 3, 0, 1},  // c: k, h, i, j
  };
  p.preferences = {
      {0, 1},  // i: a, b
      {2, 0},  // j: c, a
      {2, 0},  // k: c, a
      {2},     // h: c
  };
  p.rebuild_index();
  return p;
}

Problem fixture_c() {
  Problem p;
  p.students = {"i", "j"};
  p.schools = {{"a", 1}, {"b", 1}};
  // Priorities are unused by every consumer of this fixture; completed
  // as i before j everywhere.
  p.priorities = {{0, 1}, {0, 1}};
  p.preferences = {{0, 1}, {0}};
  p.rebuild_index();
  return p;
}

std::vector<int> fixture_c_misreport_i() { return {0}; }

}  // namespace amm::fixtures
