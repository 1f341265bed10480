#pragma once

// Trading-cycle mechanisms: standard top trading cycles, CE-TTC (fixed
// initial derangement followed by self-avoiding TTC) and backward TTC.

#include <algorithm>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "cex/error.hpp"
#include "cex/model.hpp"
#include "cex/random.hpp"

namespace cex {

namespace detail {

// Cycles of the functional graph next[] restricted to `alive` nodes.
// Every alive node must point to an alive node. Cycles are reported in
// ascending order of their smallest member, each starting there.
inline std::vector<std::vector<int>> functional_cycles(
    const std::vector<int>& next, const std::vector<char>& alive) {
  const int n = static_cast<int>(next.size()) - 1;
  std::vector<int> state(n + 1, 0);  // 0 unseen, 1 on stack, 2 done
  std::vector<std::vector<int>> cycles;
  for (int start = 1; start <= n; ++start) {
    if (!alive[start] || state[start]) continue;
    std::vector<int> path;
    int v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (state[v] == 1) {
      auto it = std::find(path.begin(), path.end(), v);
      std::vector<int> cyc(it, path.end());
      std::rotate(cyc.begin(), std::min_element(cyc.begin(), cyc.end()), cyc.end());
      cycles.push_back(std::move(cyc));
    }
    for (int u : path) state[u] = 2;
  }
  std::sort(cycles.begin(), cycles.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return cycles;
}

// Top trading cycles from `holding` (holding[i-1] = worker held by i).
// With `self_avoiding`, division i never points to worker i.
inline Outcome top_trading_cycles(const PreferenceProfile& prefs,
                                  const Assignment& holding,
                                  bool self_avoiding) {
  const int n = prefs.size();
  std::vector<int> holder(n + 1, 0);
  for (Division i = 1; i <= n; ++i) holder[holding[i]] = i;

  std::vector<char> alive(n + 1, 1);
  alive[0] = 0;
  std::vector<int> map(n, 0);
  std::vector<int> next(n + 1, 0), pointed(n + 1, 0);
  Trace trace;
  int remaining = n;
  for (int round = 1; remaining > 0; ++round) {
    for (Division i = 1; i <= n; ++i) {
      if (!alive[i]) continue;
      const Worker w = prefs.best_where(i, [&](Worker x) {
        return alive[holder[x]] && !(self_avoiding && x == i);
      });
      ensure(w != 0, "division " + std::to_string(i) + " has nothing to point to");
      pointed[i] = w;
      next[i] = holder[w];
    }
    for (const auto& cyc : functional_cycles(next, alive))
      for (Division i : cyc) {
        map[i - 1] = pointed[i];
        trace.push(round, i, pointed[i], Transition::Cycle);
        alive[i] = 0;
        --remaining;
      }
  }
  return {Assignment(std::move(map)), std::move(trace)};
}

}  // namespace detail

// Standard TTC from the identity endowment.
inline Outcome run_ttc_traced(const Problem& p) {
  return detail::top_trading_cycles(p.profile(), Assignment::identity(p.size()),
                                    false);
}

inline Assignment run_ttc(const Problem& p) { return run_ttc_traced(p).assignment; }

// Rules for the preference-independent initial derangement of CE-TTC.
struct CyclicShift {};                     // i -> (i mod n) + 1
struct ExplicitDerangement { Assignment mu0; };
struct SeededRandom { std::uint64_t seed = 0; };  // uniform over derangements

using InitialDerangement =
    std::variant<CyclicShift, ExplicitDerangement, SeededRandom>;

inline Assignment initial_derangement(int n, const InitialDerangement& rule) {
  detail::require(n >= 2, "a derangement needs n >= 2");
  if (std::holds_alternative<CyclicShift>(rule)) {
    std::vector<int> map(n);
    for (int i = 1; i <= n; ++i) map[i - 1] = i % n + 1;
    return Assignment(std::move(map));
  }
  if (const auto* e = std::get_if<ExplicitDerangement>(&rule)) {
    detail::require(e->mu0.size() == n, "initial derangement has wrong size");
    detail::require(is_derangement(e->mu0),
                    "initial assignment " + e->mu0.str() + " has a fixed point");
    return e->mu0;
  }
  // Rejection sampling over uniform permutations.
  Rng rng(std::get<SeededRandom>(rule).seed);
  for (;;) {
    Assignment a(random_permutation(n, rng));
    if (is_derangement(a)) return a;
  }
}

// CE-TTC: fix mu0, then run TTC from mu0 with each division's own worker
// unacceptable to it.
inline Outcome run_cettc(const Problem& p,
                         const InitialDerangement& rule = CyclicShift{}) {
  const Assignment mu0 = initial_derangement(p.size(), rule);
  return detail::top_trading_cycles(p.profile(), mu0, true);
}

// A cycle formed in Stage 1 of BTTC.
struct BttcCycle {
  int step = 0;
  std::vector<Division> members;  // in pointing order
  std::vector<Worker> pointed;    // pointed[k] is the worker members[k] points to
  bool staying = false;
};

struct BttcOutcome {
  Assignment assignment;
  Trace trace;
  std::vector<BttcCycle> cycles;
};

// Backward top trading cycles.
//
// Stage 1 removes all cycles of the pointing graph step by step, where a
// division may not point to its own worker unless it is the last one left.
// Stage 2 walks the steps backwards: a cycle stays (members keep their own
// workers) iff every member prefers its own worker to the pointed one and
// every division cleared at a later step prefers its assignment to every
// worker of the cycle; otherwise it trades along the pointers.
inline BttcOutcome run_bttc_detailed(const Problem& p) {
  const auto& prefs = p.profile();
  const int n = p.size();
  std::vector<char> alive(n + 1, 1);
  alive[0] = 0;
  std::vector<int> next(n + 1, 0);
  std::vector<BttcCycle> cycles;
  int remaining = n;
  int last_step = 0;
  for (int t = 1; remaining > 0; ++t) {
    for (Division i = 1; i <= n; ++i) {
      if (!alive[i]) continue;
      next[i] = remaining == 1
                    ? i
                    : prefs.best_where(i, [&](Worker x) { return alive[x] && x != i; });
    }
    for (auto& cyc : detail::functional_cycles(next, alive)) {
      BttcCycle c;
      c.step = t;
      for (Division i : cyc) c.pointed.push_back(next[i]);
      c.members = std::move(cyc);
      for (Division i : c.members) {
        alive[i] = 0;
        --remaining;
      }
      cycles.push_back(std::move(c));
    }
    last_step = t;
  }

  std::vector<int> map(n + 1, 0);
  std::vector<Division> later;  // cleared at steps after the current one
  Trace trace;
  for (int t = last_step; t >= 1; --t) {
    std::vector<Division> this_step;
    for (auto& c : cycles) {
      if (c.step != t) continue;
      bool stay = true;
      for (std::size_t k = 0; k < c.members.size() && stay; ++k) {
        const Division i = c.members[k];
        if (c.pointed[k] != i && !prefs.prefers(i, i, c.pointed[k])) stay = false;
      }
      for (Division j : later) {
        if (!stay) break;
        for (Division w : c.members)
          if (!prefs.prefers(j, map[j], w)) {
            stay = false;
            break;
          }
      }
      c.staying = stay;
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        const Division i = c.members[k];
        map[i] = stay ? i : c.pointed[k];
        trace.push(t, i, map[i], stay ? Transition::Stay : Transition::Cycle);
        this_step.push_back(i);
      }
    }
    later.insert(later.end(), this_step.begin(), this_step.end());
  }
  map.erase(map.begin());
  return {Assignment(std::move(map)), std::move(trace), std::move(cycles)};
}

inline Outcome run_bttc(const Problem& p) {
  auto d = run_bttc_detailed(p);
  return {std::move(d.assignment), std::move(d.trace)};
}

}  // namespace cex
