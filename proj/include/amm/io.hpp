// Canonical JSON formats for problems and matchings, plus audit report
// rendering for the CLI.
#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "amm/audit.hpp"
#include "amm/core.hpp"

namespace amm::io {

/// Parses the canonical problem schema:
/// { "students": [...], "schools": [{"id","capacity"}...],
///   "priorities": {school: [students...]}, "preferences": {student: [...]}}
/// Unknown ids make the problem unrepresentable and throw
/// std::runtime_error; representable invariant violations are left to
/// validate_problem.
Problem parse_problem(const nlohmann::json& j);
Problem load_problem(const std::string& path);

nlohmann::json problem_to_json(const Problem& problem);

/// { "assignment": {student: school-or-null, ...} }
Matching parse_matching(const Problem& problem, const nlohmann::json& j);
Matching load_matching(const Problem& problem, const std::string& path);

nlohmann::json matching_to_json(const Problem& problem, const Matching& mu);

nlohmann::json audit_report_to_json(const Problem& problem,
                                    const AuditReport& report);

/// One axiom per line: name, verdict, witness.
std::string audit_report_to_text(const Problem& problem,
                                 const AuditReport& report);

}  // namespace amm::io
