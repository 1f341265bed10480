#pragma once

// Problem files and JSON reports.
//
// A problem file is a JSON object:
//   n             number of divisions
//   preferences   n orders, most preferred first; each either a permutation
//                 of 1..n or of the n-1 workers other than the division's
//                 own (which is then appended last)
//   priority      divisions, highest first (optional, default ascending)
//   partition     [{"divisions": [...], "workers": [...]}, ...] (optional)
//   names         display names of the divisions (optional)
//   worker_names  display names of the workers (optional)

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cex/error.hpp"
#include "cex/mechanism.hpp"
#include "cex/model.hpp"
#include "cex/repro.hpp"
#include "cex/verifier.hpp"

namespace cex {

inline constexpr const char* kToolName = "cexchange";
inline constexpr const char* kToolVersion = "1.0.0";

struct ProblemFile {
  Problem problem;
  bool completed = false;  // orders were given without the own worker
  std::vector<std::string> names;
  std::vector<std::string> worker_names;

  std::string division_name(Division i) const {
    return names.empty() ? std::to_string(i) : names[static_cast<std::size_t>(i - 1)];
  }
  std::string worker_name(Worker w) const {
    return worker_names.empty() ? std::to_string(w)
                                : worker_names[static_cast<std::size_t>(w - 1)];
  }
};

namespace detail {

using nlohmann::json;

inline std::vector<int> int_array(const json& j, const std::string& what) {
  require(j.is_array(), what + " must be an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    require(v.is_number_integer(), what + " must contain integers only");
    out.push_back(v.get<int>());
  }
  return out;
}

inline std::vector<std::string> string_array(const json& j, int n, const std::string& what) {
  require(j.is_array() && static_cast<int>(j.size()) == n,
          what + " must be an array of " + std::to_string(n) + " strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    require(v.is_string(), what + " must contain strings only");
    out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace detail

inline ProblemFile problem_from_json(const nlohmann::json& j) {
  using detail::require;
  require(j.is_object(), "problem file must be a JSON object");
  for (const auto& [key, _] : j.items())
    require(key == "n" || key == "preferences" || key == "priority" || key == "partition" ||
                key == "names" || key == "worker_names",
            "unknown problem field '" + key + "'");
  require(j.contains("n") && j["n"].is_number_integer(), "field 'n' (integer) is required");
  const int n = j["n"].get<int>();
  require(n >= 2, "n must be at least 2");
  require(j.contains("preferences") && j["preferences"].is_array() &&
              static_cast<int>(j["preferences"].size()) == n,
          "field 'preferences' must hold " + std::to_string(n) + " orders");

  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i)
    rows.push_back(detail::int_array(j["preferences"][i],
                                     "preferences[" + std::to_string(i) + "]"));
  const bool partial = static_cast<int>(rows[0].size()) == n - 1;
  for (int i = 0; i < n; ++i)
    require(static_cast<int>(rows[i].size()) == (partial ? n - 1 : n),
            "preferences must all list " + std::to_string(n) + " workers or all list " +
                std::to_string(n - 1) + " workers (own worker omitted)");

  ProblemFile f;
  f.completed = partial;
  PreferenceProfile prefs = partial ? complete_partial_profile(rows) : PreferenceProfile(rows);

  std::vector<Division> priority;
  if (j.contains("priority")) priority = detail::int_array(j["priority"], "priority");

  std::optional<AssignmentPartition> part;
  if (j.contains("partition")) {
    const auto& pj = j["partition"];
    require(pj.is_array(), "field 'partition' must be an array of groups");
    std::vector<Group> groups;
    for (const auto& g : pj) {
      require(g.is_object() && g.contains("divisions") && g.contains("workers") && g.size() == 2,
              "each partition group must be {\"divisions\": [...], \"workers\": [...]}");
      groups.push_back({detail::int_array(g["divisions"], "partition divisions"),
                        detail::int_array(g["workers"], "partition workers")});
    }
    part = AssignmentPartition(n, std::move(groups));
  }
  if (j.contains("names")) f.names = detail::string_array(j["names"], n, "names");
  if (j.contains("worker_names"))
    f.worker_names = detail::string_array(j["worker_names"], n, "worker_names");
  f.problem = Problem(std::move(prefs), std::move(priority), std::move(part));
  return f;
}

inline ProblemFile parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
  return problem_from_json(j);
}

namespace detail {

inline std::string int_list(std::span<const int> v) { return "[" + join(v) + "]"; }

inline std::string string_list(const std::vector<std::string>& v) {
  std::string s = "[";
  for (std::size_t k = 0; k < v.size(); ++k) s += (k ? ", " : "") + nlohmann::json(v[k]).dump();
  return s + "]";
}

}  // namespace detail

// Canonical text form: fixed key order, one order per line, compact integer
// arrays. Parsing this text and serialising again gives the same bytes.
inline std::string serialize_problem(const ProblemFile& f) {
  const Problem& p = f.problem;
  const int n = p.size();
  std::ostringstream out;
  out << "{\n  \"n\": " << n << ",\n  \"preferences\": [\n";
  for (Division i = 1; i <= n; ++i) {
    const auto row = f.completed ? restrict_to_others(p.profile(), i)
                                 : std::vector<int>(p.profile().order(i).begin(),
                                                    p.profile().order(i).end());
    out << "    " << detail::int_list(row) << (i < n ? ",\n" : "\n");
  }
  out << "  ],\n  \"priority\": " << detail::int_list(p.priority());
  if (p.partition()) {
    out << ",\n  \"partition\": [\n";
    const auto& groups = p.partition()->groups();
    for (std::size_t k = 0; k < groups.size(); ++k)
      out << "    {\"divisions\": " << detail::int_list(groups[k].divisions)
          << ", \"workers\": " << detail::int_list(groups[k].workers) << "}"
          << (k + 1 < groups.size() ? ",\n" : "\n");
    out << "  ]";
  }
  if (!f.names.empty()) out << ",\n  \"names\": " << detail::string_list(f.names);
  if (!f.worker_names.empty())
    out << ",\n  \"worker_names\": " << detail::string_list(f.worker_names);
  out << "\n}\n";
  return out.str();
}

// Problem file for a profile as used by sweeps.
inline ProblemFile sweep_problem_file(const Problem& p) {
  ProblemFile f;
  f.problem = p;
  return f;
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::json tool_header() {
  return {{"tool", kToolName}, {"version", kToolVersion}};
}

inline nlohmann::json to_json(const Trace& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : t.steps())
    arr.push_back({{"step", s.step}, {"chooser", s.chooser}, {"chosen", s.chosen},
                   {"kind", to_string(s.kind)}});
  return arr;
}

inline nlohmann::json to_json(const Assignment& a) {
  return nlohmann::json(std::vector<int>(a.values().begin(), a.values().end()));
}

inline nlohmann::json to_json(const PreferenceProfile& p) { return p.orders(); }

inline nlohmann::json to_json(const Witness& w) {
  nlohmann::json j{{"property", to_string(w.property)},
                   {"position", w.position},
                   {"preferences", to_json(w.problem.profile())},
                   {"outcome", to_json(w.outcome)}};
  if (w.division) j["division"] = w.division;
  if (w.alternative) j["alternative_preferences"] = to_json(*w.alternative);
  if (w.alternative_outcome) j["alternative_outcome"] = to_json(*w.alternative_outcome);
  if (w.dominator) j["dominator"] = to_json(*w.dominator);
  return j;
}

inline nlohmann::json to_json(const PropertyReport& r) {
  nlohmann::json j = tool_header();
  j["property"] = to_string(r.property);
  j["mechanism"] = describe(r.mechanism);
  j["scope"] = r.scope.exhaustive ? "exhaustive" : "sampled";
  j["n"] = r.scope.n;
  if (!r.scope.exhaustive) {
    j["count"] = r.scope.count;
    j["seed"] = r.scope.seed;
  }
  j["space"] = to_string(r.space);
  j["verdict"] = r.holds ? "holds" : "fails";
  j["profiles"] = r.profiles;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

inline nlohmann::json to_json(const Report& r) {
  nlohmann::json j = tool_header();
  j["id"] = r.id;
  j["title"] = r.title;
  j["verdict"] = r.pass() ? "pass" : "fail";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : r.assertions)
    arr.push_back({{"label", a.label}, {"expected", a.expected}, {"computed", a.computed},
                   {"pass", a.pass}});
  j["assertions"] = arr;
  j["notes"] = r.notes;
  return j;
}

inline nlohmann::json to_json(const AssignmentPartition& part) {
  nlohmann::json groups = nlohmann::json::array();
  for (const auto& g : part.groups())
    groups.push_back({{"divisions", g.divisions}, {"workers", g.workers}});
  return groups;
}

inline std::string render_text(const Report& r) {
  std::ostringstream out;
  out << "[" << (r.pass() ? "PASS" : "FAIL") << "] " << r.id << ": " << r.title << "\n";
  for (const auto& a : r.assertions) {
    out << "  " << (a.pass ? "ok  " : "BAD ") << a.label;
    if (a.expected == a.computed)
      out << " = " << a.computed << "\n";
    else
      out << ": expected " << a.expected << ", computed " << a.computed << "\n";
  }
  for (const auto& note : r.notes) out << "  note: " << note << "\n";
  return out.str();
}

inline std::string render_text(const PropertyReport& r) {
  std::ostringstream out;
  out << to_string(r.property) << " for " << describe(r.mechanism) << " over "
      << describe(r.scope) << " (" << to_string(r.space) << " space): "
      << (r.holds ? "holds" : "fails") << " after " << r.profiles << " profile(s)\n";
  if (r.witness) {
    const auto& w = *r.witness;
    out << "  witness at position " << w.position << "\n";
    for (Division i = 1; i <= w.problem.size(); ++i)
      out << "    " << i << ": " << join(w.problem.profile().order(i), " ") << "\n";
    out << "  outcome " << w.outcome.str() << "\n";
    if (w.division) out << "  division " << w.division << "\n";
    if (w.alternative) {
      out << "  alternative profile\n";
      for (Division i = 1; i <= w.problem.size(); ++i)
        out << "    " << i << ": " << join(w.alternative->order(i), " ") << "\n";
    }
    if (w.alternative_outcome) out << "  alternative outcome " << w.alternative_outcome->str() << "\n";
    if (w.dominator) out << "  dominated by " << w.dominator->str() << "\n";
  }
  return out.str();
}

}  // namespace cex
