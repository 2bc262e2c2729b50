// The three desk-scale markets used throughout the test surface.
#pragma once

#include "amm/core.hpp"

namespace amm::fixtures {

/// Two students {i1, i2}, two unit-capacity schools {a, b}.
/// P_i1: a, b; P_i2: a. i1 has top priority everywhere (only the top of
/// the priority at a matters for any use of this fixture).
Problem fixture_a();

/// Four students {i, j, k, h}, three unit-capacity schools {a, b, c}.
/// P_i: a,b; P_j: c,a; P_k: c,a; P_h: c.
/// prio_a: k,i,j,h; prio_b: k,h,j,i; prio_c: k,h,i,j.
Problem fixture_b();

/// Two students {i, j}, two unit-capacity schools {a, b}, true
/// preferences P_i: a,b; P_j: a. The profitable misreport for i is
/// fixture_c_misreport_i() (a-only).
Problem fixture_c();

/// The a-only list i submits in the manipulation example, as school
/// indices of fixture_c().
std::vector<int> fixture_c_misreport_i();

}  // namespace amm::fixtures
