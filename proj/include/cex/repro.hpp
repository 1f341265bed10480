#pragma once

// Worked examples, counterexamples and tables re-derived from scratch and
// compared with their stated values.

#include <string>
#include <vector>

#include "cex/draft.hpp"
#include "cex/mechanism.hpp"
#include "cex/model.hpp"
#include "cex/partition.hpp"
#include "cex/serial.hpp"
#include "cex/trading.hpp"
#include "cex/verifier.hpp"

namespace cex {

struct Assertion {
  std::string label;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct Report {
  std::string id;
  std::string title;
  std::vector<Assertion> assertions;
  std::vector<std::string> notes;

  bool pass() const {
    for (const auto& a : assertions)
      if (!a.pass) return false;
    return !assertions.empty();
  }

  void check(std::string label, std::string expected, std::string computed) {
    const bool ok = expected == computed;
    assertions.push_back({std::move(label), std::move(expected), std::move(computed), ok});
  }

  void check_true(std::string label, bool value) {
    check(std::move(label), "true", value ? "true" : "false");
  }
};

inline std::string str(const std::vector<Assignment>& set) {
  std::string s = "{";
  for (std::size_t k = 0; k < set.size(); ++k) s += (k ? "," : "") + set[k].str();
  return s + "}";
}

inline std::string str(const std::vector<int>& v) { return "(" + join(v) + ")"; }

namespace fixtures {

// Six divisions A1..A3, B1..B3 (indices 1..6) with identical preferences
// a2 > a1 > a3 > b1 > b2 > b3, ascending priority and crossed halves.
inline Problem intro_problem() {
  const std::vector<int> common{2, 1, 3, 4, 5, 6};
  return Problem(PreferenceProfile(std::vector<std::vector<int>>(6, common)), {},
                 canonical_partition(6));
}

inline std::vector<std::string> intro_division_names() {
  return {"A1", "A2", "A3", "B1", "B2", "B3"};
}

inline std::vector<std::string> intro_worker_names() {
  return {"a1", "a2", "a3", "b1", "b2", "b3"};
}

// Five derangements m1..m5 of the four-division tables.
inline Assignment n4_assignment(int m) {
  static const std::vector<std::vector<int>> maps{
      {2, 3, 4, 1}, {3, 1, 4, 2}, {3, 4, 2, 1}, {4, 3, 1, 2}, {4, 3, 2, 1}};
  detail::require(m >= 1 && m <= 5, "assignment id out of range");
  return Assignment(maps[static_cast<std::size_t>(m - 1)]);
}

// Displayed rows of profiles P1..P10 (orders over the other workers).
inline std::vector<std::vector<int>> n4_partial_profile(int k) {
  static const std::vector<std::vector<std::vector<int>>> rows{
      {{2, 3, 4}, {3, 4, 1}, {4, 2, 1}, {1, 2, 3}},
      {{3, 4, 2}, {1, 3, 4}, {4, 2, 1}, {2, 1, 3}},
      {{4, 2, 3}, {3, 1, 4}, {1, 4, 2}, {2, 1, 3}},
      {{3, 2, 4}, {3, 4, 1}, {4, 2, 1}, {1, 2, 3}},
      {{3, 4, 2}, {3, 1, 4}, {4, 2, 1}, {2, 1, 3}},
      {{4, 2, 3}, {3, 1, 4}, {4, 1, 2}, {2, 1, 3}},
      {{4, 2, 3}, {3, 1, 4}, {4, 2, 1}, {2, 1, 3}},
      {{3, 4, 2}, {3, 1, 4}, {4, 2, 1}, {1, 2, 3}},
      {{3, 4, 2}, {3, 4, 1}, {4, 2, 1}, {1, 2, 3}},
      {{3, 4, 2}, {3, 4, 1}, {2, 4, 1}, {1, 2, 3}},
  };
  detail::require(k >= 1 && k <= 10, "profile id out of range");
  return rows[static_cast<std::size_t>(k - 1)];
}

inline PreferenceProfile n4_profile(int k) {
  return complete_partial_profile(n4_partial_profile(k));
}

// Stated CE-efficient sets, as assignment ids.
inline std::vector<int> n4_expected_set(int k) {
  static const std::vector<std::vector<int>> sets{
      {1}, {2}, {4}, {1, 2, 3}, {1, 2, 4, 5},
      {1, 2, 4}, {1, 2, 4, 5}, {1, 2, 3, 5}, {1, 2, 3, 5}, {3, 5}};
  detail::require(k >= 1 && k <= 10, "profile id out of range");
  return sets[static_cast<std::size_t>(k - 1)];
}

// "Improvement for `division` from P`from` to P`to`": with f(P`from`) one of
// `reference`, every assignment in `excluded` would make the division worse.
struct RiPremise {
  std::string label;
  Division division;
  int from;
  int to;
  std::vector<int> reference;
  std::vector<int> excluded;
};

inline std::vector<RiPremise> n4_ri_premises() {
  return {
      {"division 3, P1 -> P4 excludes m3", 3, 1, 4, {1}, {3}},
      {"division 3, P2 -> P5 excludes m5, m4", 3, 2, 5, {2}, {5, 4}},
      {"division 4, P3 -> P6 excludes m1", 4, 3, 6, {4}, {1}},
      {"division 1, P7 -> P6 excludes m2 (case m1 at P5)", 1, 7, 6, {1}, {2}},
      {"division 1, P5 -> P8 excludes m1, m5 (case m2 at P5)", 1, 5, 8, {2}, {1, 5}},
      {"division 4, P10 -> P9 excludes m2", 4, 10, 9, {3, 5}, {2}},
      {"division 2, P9 -> P4 excludes m2", 2, 9, 4, {3}, {2}},
  };
}

// Profiles P`truth` and P`deviation` differ only in `division`'s order, and
// moving from any `truthful` outcome to any `deviating` one is profitable
// under the division's order at P`truth`.
struct SpPremise {
  std::string label;
  Division division;
  int truth;
  int deviation;
  std::vector<int> truthful;
  std::vector<int> deviating;
};

inline std::vector<SpPremise> n4_sp_premises() {
  return {
      {"division 2, P8 with m2 vs P9 with m1 or m5", 2, 8, 9, {2}, {1, 5}},
      {"division 1, P4 with m1 vs P9 with m3", 1, 4, 9, {1}, {3}},
      {"division 2, P8 with m3 vs P9 with m1 or m5", 2, 8, 9, {3}, {1, 5}},
      {"division 1, P5 with m1 vs P7 with m4 or m5", 1, 5, 7, {1}, {4, 5}},
      {"division 1, P7 with m2 vs P5 with m1", 1, 7, 5, {2}, {1}},
      {"division 3, P6 with m4 vs P7 with m1", 3, 6, 7, {4}, {1}},
  };
}

// Profiles on which backward TTC and TTC diverge. Full orders.
inline PreferenceProfile bttc_base_profile() {
  return PreferenceProfile(std::vector<std::vector<int>>{{1, 2, 3}, {3, 1, 2}, {2, 3, 1}});
}

inline PreferenceProfile bttc_improved_profile() {
  return PreferenceProfile(std::vector<std::vector<int>>{{1, 2, 3}, {1, 3, 2}, {2, 3, 1}});
}

// Order that starts with `prefix` and lists the remaining workers in
// ascending index.
inline std::vector<int> complete_with_prefix(int n, const std::vector<int>& prefix) {
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> out;
  for (int w : prefix) {
    detail::require(w >= 1 && w <= n && !used[w], "bad order prefix " + str(prefix));
    used[w] = 1;
    out.push_back(w);
  }
  for (int w = 1; w <= n; ++w)
    if (!used[w]) out.push_back(w);
  return out;
}

// Every displayed comparison prefix[0] > prefix[1] > ... holds in `prefs`
// for division i.
inline bool satisfies_prefix(const PreferenceProfile& prefs, Division i,
                             const std::vector<int>& prefix) {
  for (std::size_t k = 0; k + 1 < prefix.size(); ++k)
    if (!prefs.prefers(i, prefix[k], prefix[k + 1])) return false;
  for (std::size_t k = 0; k < prefix.size(); ++k)
    if (prefs.rank(i, prefix[k]) != static_cast<int>(k)) return false;
  return true;
}

struct DraftConstruction {
  PreferenceProfile profile;
  std::vector<std::vector<int>> prefixes;  // displayed part per club
};

inline DraftConstruction build(int n, std::vector<std::vector<int>> prefixes) {
  std::vector<std::vector<int>> orders;
  for (const auto& p : prefixes) orders.push_back(complete_with_prefix(n, p));
  DraftConstruction c{PreferenceProfile(orders), std::move(prefixes)};
  for (Division i = 1; i <= n; ++i)
    detail::ensure(satisfies_prefix(c.profile, i, c.prefixes[i - 1]),
                   "completed order of club " + std::to_string(i) +
                       " breaks its displayed comparisons");
  return c;
}

// Draft profile where club n-1 gains by misreporting (n >= 4).
inline DraftConstruction npb_sp_truthful(int n) {
  detail::require(n >= 4, "the misreport construction needs n >= 4");
  std::vector<std::vector<int>> pre;
  for (int k = 1; k <= n - 2; ++k) pre.push_back({k + 1});
  pre.push_back({1, 2, n});
  pre.push_back({1});
  return build(n, pre);
}

inline DraftConstruction npb_sp_misreport(int n) {
  auto pre = npb_sp_truthful(n).prefixes;
  pre[static_cast<std::size_t>(n - 2)] = {2, 1, n};
  return build(n, pre);
}

// Pair where the improved profile hurts club n-1 (n >= 3). `improved` is
// an improvement for club n-1 with respect to `base`.
inline DraftConstruction npb_ri_improved(int n) {
  detail::require(n >= 3, "the improvement construction needs n >= 3");
  std::vector<std::vector<int>> pre;
  for (int k = 1; k <= n - 3; ++k) pre.push_back({k + 1});
  pre.push_back({n - 1, n});
  pre.push_back({1});
  pre.push_back({1});
  return build(n, pre);
}

inline DraftConstruction npb_ri_base(int n) {
  auto pre = npb_ri_improved(n).prefixes;
  pre[static_cast<std::size_t>(n - 3)] = {n, n - 1};
  return build(n, pre);
}

}  // namespace fixtures

inline Report repro_intro_example() {
  Report r{"intro", "Six-division example with identical preferences", {}, {}};
  const Problem p = fixtures::intro_problem();
  const std::string expected = "(4,5,6,2,1,3)";  // A1-b1 A2-b2 A3-b3 B1-a2 B2-a1 B3-a3

  const Outcome csd = run_csd(p);
  r.check("C-SD assignment", expected, csd.assignment.str());
  std::vector<std::string> kinds;
  for (auto k : csd.trace.kinds()) kinds.push_back(to_string(k));
  std::string joined;
  for (std::size_t k = 0; k < kinds.size(); ++k) joined += (k ? "," : "") + kinds[k];
  r.check("C-SD transitions", "start,owner-call,owner-call,owner-call,fallback,owner-call",
          joined);
  r.check("C-SD chooser sequence (A1,B1,A2,B2,A3,B3)", "(1,4,2,5,3,6)",
          str(csd.trace.choosers()));

  const Outcome tsd = run_tsd(p);
  r.check("T-SD assignment", expected, tsd.assignment.str());
  const FinalOrder order = final_order(p, OrderRule::TwoStage);
  r.check("T-SD owner sequence (B1,B2,B3,A2,A1,A3)", "(4,5,6,2,1,3)", str(order.sequence));
  r.check("T-SD group A order (A2,A1,A3)", "(2,1,3)", str(order.per_group[0]));
  r.check("T-SD group B order (B1,B2,B3)", "(4,5,6)", str(order.per_group[1]));
  r.check("C-SD and T-SD agree", csd.assignment.str(), tsd.assignment.str());
  return r;
}

inline Report repro_n4_tables() {
  Report r{"n4-tables", "Four-division profiles P1..P10, CE-efficient sets and premises", {}, {}};
  r.notes.push_back("each profile lists three workers per division; the own worker is appended last");
  auto ids_to_set = [](const std::vector<int>& ids) {
    std::vector<Assignment> s;
    for (int m : ids) s.push_back(fixtures::n4_assignment(m));
    std::sort(s.begin(), s.end());
    return s;
  };
  for (int k = 1; k <= 10; ++k)
    r.check("CE-efficient set at P" + std::to_string(k),
            str(ids_to_set(fixtures::n4_expected_set(k))), str(cee_set(fixtures::n4_profile(k))));

  for (const auto& prem : fixtures::n4_ri_premises()) {
    const auto from = fixtures::n4_profile(prem.from);
    const auto to = fixtures::n4_profile(prem.to);
    bool ok = is_improvement(from, to, prem.division);
    const auto set_from = cee_set(from), set_to = cee_set(to);
    for (int ref : prem.reference) {
      const Assignment a = fixtures::n4_assignment(ref);
      ok = ok && std::ranges::find(set_from, a) != set_from.end();
      for (int ex : prem.excluded) {
        const Assignment b = fixtures::n4_assignment(ex);
        ok = ok && std::ranges::find(set_to, b) != set_to.end() &&
             from.prefers(prem.division, a[prem.division], b[prem.division]);
      }
    }
    r.check_true("improvement premise: " + prem.label, ok);
  }

  for (const auto& prem : fixtures::n4_sp_premises()) {
    const auto truth = fixtures::n4_profile(prem.truth);
    const auto dev = fixtures::n4_profile(prem.deviation);
    bool ok = truth.with_order(prem.division, dev.order(prem.division)) == dev;
    for (int t : prem.truthful)
      for (int d : prem.deviating) {
        const Division i = prem.division;
        ok = ok && truth.prefers(i, fixtures::n4_assignment(d)[i], fixtures::n4_assignment(t)[i]);
      }
    r.check_true("deviation premise: " + prem.label, ok);
  }
  return r;
}

inline Report repro_bttc_ri() {
  Report r{"bttc-ri", "Backward TTC violates respecting improvement; TTC does not move", {}, {}};
  const Problem base(fixtures::bttc_base_profile());
  const Problem improved(fixtures::bttc_improved_profile());
  r.check_true("improved profile is an improvement for division 1",
               is_improvement(base.profile(), improved.profile(), 1));
  const Assignment b0 = run_bttc(base).assignment, b1 = run_bttc(improved).assignment;
  r.check("BTTC at base", "(1,3,2)", b0.str());
  r.check("BTTC at improved", "(2,1,3)", b1.str());
  r.check("TTC at base", "(1,3,2)", run_ttc(base).str());
  r.check("TTC at improved", "(1,3,2)", run_ttc(improved).str());
  r.check_true("division 1 strictly worse under BTTC after the improvement",
               base.profile().prefers(1, b0[1], b1[1]));
  return r;
}

inline Report repro_n3_incompatibility() {
  Report r{"n3-incompatibility", "CE-efficiency versus respecting improvement at n = 3", {}, {}};
  const auto c = universal_impossibility_scan(3);
  r.check_true("improved profile is an improvement for division 1", c.is_improvement_for_1);
  r.check("CE-efficient set at base", "{(2,3,1)}", str(c.base_set));
  r.check("CE-efficient set at improved", "{(2,3,1),(3,1,2)}", str(c.improved_set));
  r.check_true("(2,3,1) and (3,1,2) not Pareto comparable at improved", c.not_comparable);
  r.check_true("selecting (3,1,2) at improved violates respecting improvement",
               c.branch_b_violates);
  r.check("selecting (2,3,1) at improved: division 1 keeps worker 2", "false",
          c.branch_a_violates ? "true" : "false");
  r.notes.push_back(
      "a CE-efficient rule that selects (2,3,1) at the improved profile does not violate "
      "respecting improvement on this pair; the certificate covers the other branch");
  return r;
}

inline Report repro_npb(int n) {
  detail::require(n >= 3, "draft reproduction needs n >= 3");
  Report r{"npb:" + std::to_string(n), "Draft counterexamples at n = " + std::to_string(n), {}, {}};
  r.notes.push_back("orders start with the displayed players; the rest follow in ascending index");
  const Division c = n - 1;
  auto efficient = [&](const PreferenceProfile& p, const Assignment& a) {
    if (n <= kCeeSetMaxN) {
      const auto set = cee_set(p);
      return std::ranges::find(set, a) != set.end();
    }
    return is_ce_efficient(p, a);
  };

  if (n >= 4) {
    const auto truth = fixtures::npb_sp_truthful(n).profile;
    const auto lie = fixtures::npb_sp_misreport(n).profile;
    const Assignment a = run_npb(Problem(truth)).assignment;
    const Assignment b = run_npb(Problem(lie)).assignment;
    r.check("truthful: club n-1 receives player n", std::to_string(n), std::to_string(a[c]));
    r.check("misreport: club n-1 receives player 2", "2", std::to_string(b[c]));
    r.check_true("misreport differs only in club n-1", truth.with_order(c, lie.order(c)) == lie);
    r.check_true("misreport is profitable (2 over n for club n-1)", truth.prefers(c, b[c], a[c]));
    r.check_true("truthful outcome is CE-efficient", efficient(truth, a));
    r.check_true("misreport outcome is CE-efficient", efficient(lie, b));
  }

  const auto base = fixtures::npb_ri_base(n).profile;
  const auto improved = fixtures::npb_ri_improved(n).profile;
  const Assignment a = run_npb(Problem(base)).assignment;
  const Assignment b = run_npb(Problem(improved)).assignment;
  r.check_true("improved profile is an improvement for club n-1", is_improvement(base, improved, c));
  r.check("improved: club n-1 receives player n", std::to_string(n), std::to_string(b[c]));
  r.check("base: club n-1 receives player 1", "1", std::to_string(a[c]));
  r.check_true("club n-1 strictly worse after the improvement", base.prefers(c, a[c], b[c]));
  r.check_true("base outcome is CE-efficient", efficient(base, a));
  r.check_true("improved outcome is CE-efficient", efficient(improved, b));
  return r;
}

inline std::vector<std::string> repro_ids() {
  return {"intro", "n4-tables", "bttc-ri", "n3-incompatibility",
          "npb:3", "npb:4", "npb:5", "npb:6", "npb:12"};
}

inline Report repro(const std::string& id) {
  if (id == "intro") return repro_intro_example();
  if (id == "n4-tables") return repro_n4_tables();
  if (id == "bttc-ri") return repro_bttc_ri();
  if (id == "n3-incompatibility") return repro_n3_incompatibility();
  if (id.rfind("npb:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int n = std::stoi(id.substr(4), &used);
      if (used == id.size() - 4) return repro_npb(n);
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidInput("unknown repro id '" + id +
                     "' (expected all, intro, n4-tables, bttc-ri, n3-incompatibility or npb:N)");
}

inline std::vector<Report> repro_all() {
  std::vector<Report> out;
  for (const auto& id : repro_ids()) out.push_back(repro(id));
  return out;
}

}  // namespace cex
