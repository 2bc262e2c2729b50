#include "amm/io.hpp"

#include <fstream>

namespace amm::io {

using nlohmann::json;

Problem parse_problem(const json& j) {
  Problem p;
  for (const auto& id : j.at("students"))
    p.students.push_back(id.get<std::string>());
  for (const auto& school : j.at("schools"))
    p.schools.push_back({school.at("id").get<std::string>(),
                         school.at("capacity").get<int>()});
  p.rebuild_index();  // id lookup only; ranks rebuilt again below

  p.priorities.assign(p.num_schools(), {});
  for (const auto& [school_id, order] : j.at("priorities").items()) {
    int s = p.school_index(school_id);
    if (s < 0) throw std::runtime_error("priorities: unknown school " + school_id);
    for (const auto& student_id : order) {
      int i = p.student_index(student_id.get<std::string>());
      if (i < 0)
        throw std::runtime_error("priorities: unknown student " +
                                 student_id.get<std::string>());
      p.priorities[s].push_back(i);
    }
  }

  p.preferences.assign(p.num_students(), {});
  for (const auto& [student_id, ranked] : j.at("preferences").items()) {
    int i = p.student_index(student_id);
    if (i < 0)
      throw std::runtime_error("preferences: unknown student " + student_id);
    for (const auto& school_id : ranked) {
      int s = p.school_index(school_id.get<std::string>());
      if (s < 0)
        throw std::runtime_error("preferences: unknown school " +
                                 school_id.get<std::string>());
      p.preferences[i].push_back(s);
    }
  }

  p.rebuild_index();
  return p;
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return parse_problem(j);
}

json problem_to_json(const Problem& p) {
  json j;
  j["students"] = p.students;
  j["schools"] = json::array();
  for (const auto& s : p.schools)
    j["schools"].push_back({{"id", s.id}, {"capacity", s.capacity}});
  j["priorities"] = json::object();
  for (int s = 0; s < p.num_schools(); ++s) {
    json order = json::array();
    for (int i : p.priorities[s]) order.push_back(p.students[i]);
    j["priorities"][p.schools[s].id] = order;
  }
  j["preferences"] = json::object();
  for (int i = 0; i < p.num_students(); ++i) {
    json ranked = json::array();
    for (int s : p.preferences[i]) ranked.push_back(p.schools[s].id);
    j["preferences"][p.students[i]] = ranked;
  }
  return j;
}

Matching parse_matching(const Problem& problem, const json& j) {
  Matching mu(problem.num_students());
  for (const auto& [student_id, school] : j.at("assignment").items()) {
    int i = problem.student_index(student_id);
    if (i < 0)
      throw std::runtime_error("assignment: unknown student " + student_id);
    if (school.is_null()) {
      mu.assignment[i] = kUnassigned;
    } else {
      int s = problem.school_index(school.get<std::string>());
      if (s < 0)
        throw std::runtime_error("assignment: unknown school " +
                                 school.get<std::string>());
      mu.assignment[i] = s;
    }
  }
  return mu;
}

Matching load_matching(const Problem& problem, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return parse_matching(problem, j);
}

json matching_to_json(const Problem& problem, const Matching& mu) {
  json assignment = json::object();
  for (int i = 0; i < problem.num_students(); ++i) {
    int s = mu.assignment[i];
    if (s == kUnassigned)
      assignment[problem.students[i]] = nullptr;
    else
      assignment[problem.students[i]] = problem.schools[s].id;
  }
  return json{{"assignment", assignment}};
}

namespace {

json verdict_to_json(const Problem& p, const Verdict& v) {
  json j{{"ok", v.ok}};
  std::string witness = describe_witness(p, v);
  if (!witness.empty()) j["witness"] = witness;
  return j;
}

}  // namespace

json audit_report_to_json(const Problem& p, const AuditReport& r) {
  json j;
  j["individually_rational"] = verdict_to_json(p, r.individually_rational);
  j["non_wasteful"] = verdict_to_json(p, r.non_wasteful);
  j["fair"] = verdict_to_json(p, r.fair);
  j["stable"] = verdict_to_json(p, r.stable);
  j["fair_unassigned"] = verdict_to_json(p, r.fair_unassigned);
  j["maximal"] = verdict_to_json(p, r.maximal);
  if (r.efficient)
    j["efficient"] = verdict_to_json(p, *r.efficient);
  else
    j["efficient"] = {{"ok", nullptr}, {"note", "enumeration cap exceeded"}};
  return j;
}

std::string audit_report_to_text(const Problem& p, const AuditReport& r) {
  auto line = [&](const char* name, const Verdict& v) {
    std::string out = std::string(name) + " " + (v.ok ? "true" : "false");
    std::string witness = describe_witness(p, v);
    if (!witness.empty()) out += " " + witness;
    return out + "\n";
  };
  std::string out;
  out += line("individually-rational", r.individually_rational);
  out += line("non-wasteful", r.non_wasteful);
  out += line("fair", r.fair);
  out += line("stable", r.stable);
  out += line("fair-for-unassigned", r.fair_unassigned);
  out += line("maximal", r.maximal);
  if (r.efficient)
    out += line("efficient", *r.efficient);
  else
    out += "efficient unknown (enumeration cap exceeded)\n";
  return out;
}

}  // namespace amm::io
