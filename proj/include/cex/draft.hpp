#pragma once

// Active player draft with vote-count priority, vote binding, owner-call
// chaining, draft-priority fallback and the last-two swap. Clubs are
// divisions, players are workers; club i lists player i.

#include <algorithm>
#include <string>
#include <vector>

#include "cex/error.hpp"
#include "cex/model.hpp"

namespace cex {

struct DraftDetail {
  std::vector<Worker> votes;          // votes[i-1]: player club i votes for
  std::vector<int> vote_counts;       // vote_counts[i-1]: votes on player i
  std::vector<Division> draft_priority;  // highest first
};

inline DraftDetail draft_detail(const Problem& p) {
  const int n = p.size();
  DraftDetail d;
  d.vote_counts.assign(static_cast<std::size_t>(n), 0);
  for (Division i = 1; i <= n; ++i) {
    const Worker v = p.profile().best_where(i, [&](Worker x) { return x != i; });
    d.votes.push_back(v);
    ++d.vote_counts[static_cast<std::size_t>(v - 1)];
  }
  d.draft_priority = p.priority();
  std::stable_sort(d.draft_priority.begin(), d.draft_priority.end(),
                   [&](Division a, Division b) {
                     return d.vote_counts[a - 1] > d.vote_counts[b - 1];
                   });
  return d;
}

inline Outcome run_npb(const Problem& p, DraftDetail* detail_out = nullptr) {
  const int n = p.size();
  detail::require(n >= 3, "the draft needs at least three clubs");
  DraftDetail d = draft_detail(p);
  const auto& prefs = p.profile();

  std::vector<char> assigned(n + 1, 0), taken(n + 1, 0);
  std::vector<int> map(n, 0);
  Trace trace;
  std::size_t cursor = 0;  // into draft_priority
  auto highest_unassigned = [&] {
    while (cursor < d.draft_priority.size() && assigned[d.draft_priority[cursor]])
      ++cursor;
    detail::ensure(cursor < d.draft_priority.size(), "draft priority exhausted");
    return d.draft_priority[cursor];
  };

  Division mover = d.draft_priority.front();
  Transition how = Transition::Start;
  for (int t = 1; t <= n; ++t) {
    const int clubs_left = n - t + 1;
    Worker w = 0;
    Transition kind = how;
    if (clubs_left == 2) {
      Division other = 0;
      for (Division j = 1; j <= n; ++j)
        if (!assigned[j] && j != mover) other = j;
      detail::ensure(!taken[other],
                     "last two clubs: player " + std::to_string(other) +
                         " of the other club is already taken");
      w = other;
      kind = Transition::LastTwo;
    } else if (const Worker v = d.votes[mover - 1]; !taken[v]) {
      w = v;
    } else {
      w = prefs.best_where(mover, [&](Worker x) { return !taken[x] && x != mover; });
      detail::ensure(w != 0, "club " + std::to_string(mover) + " has no player left");
    }
    map[mover - 1] = w;
    taken[w] = assigned[mover] = 1;
    trace.push(t, mover, w, kind);
    if (t == n) break;
    if (!assigned[owner(w)]) {
      mover = owner(w);
      how = Transition::OwnerCall;
    } else {
      mover = highest_unassigned();
      how = Transition::Fallback;
    }
  }
  Assignment out(std::move(map));
  detail::ensure(is_derangement(out), "draft produced a fixed point: " + out.str());
  if (detail_out) *detail_out = std::move(d);
  return {std::move(out), std::move(trace)};
}

}  // namespace cex
