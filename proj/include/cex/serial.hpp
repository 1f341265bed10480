#pragma once

// Serial-dictatorship family: Chain Serial Dictatorship, Two-Stage Serial
// Dictatorship, their decomposition into a final order plus group-wise
// serial dictatorship, and the plain serial dictatorship baseline.

#include <algorithm>
#include <string>
#include <vector>

#include "cex/error.hpp"
#include "cex/model.hpp"

namespace cex {

namespace detail {

inline const AssignmentPartition& require_partition(const Problem& p,
                                                    const char* mechanism) {
  if (!p.partition())
    throw InvalidInput(std::string(mechanism) +
                       " requires an assignment partition");
  return *p.partition();
}

// Best worker of division i in its group's choice set that is not taken.
inline Worker best_in_choice_set(const Problem& p,
                                 const AssignmentPartition& part, Division i,
                                 const std::vector<char>& taken) {
  const int g = part.group_of(i);
  const Worker w = p.profile().best_where(
      i, [&](Worker x) { return !taken[x] && part.worker_group(x) == g; });
  ensure(w != 0, "choice set of division " + std::to_string(i) + " exhausted");
  return w;
}

// Walks the exogenous priority, skipping divisions that have moved.
class PriorityCursor {
 public:
  explicit PriorityCursor(const std::vector<Division>& order) : order_(order) {}

  Division next(const std::vector<char>& moved) {
    while (pos_ < order_.size() && moved[order_[pos_]]) ++pos_;
    ensure(pos_ < order_.size(), "priority exhausted");
    return order_[pos_];
  }

 private:
  const std::vector<Division>& order_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Chain Serial Dictatorship. The highest-priority division picks first;
// the turn passes to the owner of the worker just picked, or to the
// highest-priority division yet to move when that owner already moved.
inline Outcome run_csd(const Problem& p) {
  const auto& part = detail::require_partition(p, "C-SD");
  const int n = p.size();
  std::vector<char> moved(n + 1, 0), taken(n + 1, 0);
  std::vector<int> map(n, 0);
  Trace trace;
  detail::PriorityCursor cursor(p.priority());

  Division mover = p.priority().front();
  Transition how = Transition::Start;
  for (int t = 1; t <= n; ++t) {
    const Worker w = detail::best_in_choice_set(p, part, mover, taken);
    map[mover - 1] = w;
    taken[w] = moved[mover] = 1;
    trace.push(t, mover, w, how);
    if (t == n) break;
    if (!moved[owner(w)]) {
      mover = owner(w);
      how = Transition::OwnerCall;
    } else {
      mover = cursor.next(moved);
      how = Transition::Fallback;
    }
  }
  return {Assignment(std::move(map)), std::move(trace)};
}

// Stage 1 of T-SD: divisions nominate in exogenous priority order. The
// returned trace lists (nominator, nominated worker) pairs.
inline Trace tsd_nominations(const Problem& p) {
  const auto& part = detail::require_partition(p, "T-SD");
  const int n = p.size();
  std::vector<char> taken(n + 1, 0);
  Trace trace;
  int t = 0;
  for (Division i : p.priority()) {
    const Worker w = detail::best_in_choice_set(p, part, i, taken);
    taken[w] = 1;
    ++t;
    trace.push(t, i, w, t == 1 ? Transition::Start : Transition::Sequential);
  }
  return trace;
}

// A linear order over all divisions together with its restriction to each
// group of the partition.
struct FinalOrder {
  std::vector<Division> sequence;
  std::vector<std::vector<Division>> per_group;
};

inline FinalOrder make_final_order(const AssignmentPartition& part,
                                   std::vector<Division> sequence) {
  detail::require(is_permutation_of(sequence, part.size()),
                  "final order is not a permutation of the divisions");
  FinalOrder out;
  out.per_group.resize(static_cast<std::size_t>(part.group_count()));
  for (Division d : sequence)
    out.per_group[static_cast<std::size_t>(part.group_of(d))].push_back(d);
  out.sequence = std::move(sequence);
  return out;
}

enum class OrderRule {
  Chain,     // chooser sequence of C-SD
  TwoStage,  // owners of Stage-1 nominations of T-SD
};

inline FinalOrder final_order(const Problem& p, OrderRule rule) {
  const auto& part = detail::require_partition(
      p, rule == OrderRule::Chain ? "C-SD" : "T-SD");
  if (rule == OrderRule::Chain) return make_final_order(part, run_csd(p).trace.choosers());
  std::vector<Division> owners;
  for (Worker w : tsd_nominations(p).chosen()) owners.push_back(owner(w));
  return make_final_order(part, std::move(owners));
}

// Serial dictatorship inside every group using the group's own order.
// Groups have disjoint choice sets, so they are processed independently.
inline Assignment run_sd_within_groups(const Problem& p,
                                       const FinalOrder& order) {
  const auto& part = detail::require_partition(p, "group-wise SD");
  detail::require(static_cast<int>(order.per_group.size()) == part.group_count(),
                  "final order must list one order per group");
  const int n = p.size();
  std::vector<char> taken(n + 1, 0);
  std::vector<int> map(n, 0);
  for (int k = 0; k < part.group_count(); ++k) {
    const auto& seq = order.per_group[static_cast<std::size_t>(k)];
    std::vector<Division> sorted(seq), members(part.group(k).divisions);
    std::sort(sorted.begin(), sorted.end());
    std::sort(members.begin(), members.end());
    detail::require(sorted == members,
                    "order for group " + std::to_string(k + 1) +
                        " is not a permutation of its divisions");
    for (Division d : seq) {
      const Worker w = detail::best_in_choice_set(p, part, d, taken);
      taken[w] = 1;
      map[d - 1] = w;
    }
  }
  return Assignment(std::move(map));
}

// Two-Stage Serial Dictatorship: nominations fix the final order, then
// serial dictatorship runs in that order over the group choice sets.
inline Outcome run_tsd(const Problem& p) {
  const auto& part = detail::require_partition(p, "T-SD");
  const int n = p.size();
  std::vector<Division> order;
  for (Worker w : tsd_nominations(p).chosen()) order.push_back(owner(w));

  std::vector<char> taken(n + 1, 0);
  std::vector<int> map(n, 0);
  Trace trace;
  int t = 0;
  for (Division d : order) {
    const Worker w = detail::best_in_choice_set(p, part, d, taken);
    taken[w] = 1;
    map[d - 1] = w;
    ++t;
    trace.push(t, d, w, t == 1 ? Transition::Start : Transition::Sequential);
  }
  return {Assignment(std::move(map)), std::move(trace)};
}

// Serial dictatorship in a fixed order (the problem's priority when `order`
// is empty). With a partition each division picks from its own choice set;
// without one it picks from all workers and may keep its own.
inline Outcome run_sd(const Problem& p, std::vector<Division> order = {}) {
  const int n = p.size();
  if (order.empty()) order = p.priority();
  detail::require(is_permutation_of(order, n),
                  "serial dictatorship order is not a permutation");
  std::vector<char> taken(n + 1, 0);
  std::vector<int> map(n, 0);
  Trace trace;
  int t = 0;
  const auto* part = p.partition() ? &*p.partition() : nullptr;
  for (Division d : order) {
    const Worker w = p.profile().best_where(d, [&](Worker x) {
      return !taken[x] && (!part || part->worker_group(x) == part->group_of(d));
    });
    taken[w] = 1;
    map[d - 1] = w;
    ++t;
    trace.push(t, d, w, t == 1 ? Transition::Start : Transition::Sequential);
  }
  return {Assignment(std::move(map)), std::move(trace)};
}

}  // namespace cex
