#pragma once

// Core domain types for one-sided assignment under complete exchange.
//
// Divisions and workers are both numbered 1..n and division i initially
// owns worker i, so the owner of a worker is the worker index itself.
// All types validate on construction and are immutable afterwards.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cex/error.hpp"

namespace cex {

using Division = int;
using Worker = int;

// Owner of a worker under the identity endowment.
constexpr Division owner(Worker w) noexcept { return w; }

// True iff `values` is a permutation of 1..n.
inline bool is_permutation_of(std::span<const int> values, int n) {
  if (static_cast<int>(values.size()) != n) return false;
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : values) {
    if (v < 1 || v > n || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline std::string join(std::span<const int> values, const char* sep = ",") {
  std::string out;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k) out += sep;
    out += std::to_string(values[k]);
  }
  return out;
}

// One strict order over all workers per division, most preferred first.
// A rank table is kept alongside so comparisons are O(1).
class PreferenceProfile {
 public:
  PreferenceProfile() = default;

  explicit PreferenceProfile(const std::vector<std::vector<int>>& orders)
      : n_(static_cast<int>(orders.size())) {
    detail::require(n_ >= 2, "preference profile needs at least two divisions");
    orders_.reserve(static_cast<std::size_t>(n_) * n_);
    for (int i = 0; i < n_; ++i) {
      detail::require(is_permutation_of(orders[i], n_),
                      "order of division " + std::to_string(i + 1) +
                          " is not a permutation of 1.." + std::to_string(n_) +
                          ": [" + join(orders[i]) + "]");
      orders_.insert(orders_.end(), orders[i].begin(), orders[i].end());
    }
    rebuild_ranks();
  }

  int size() const noexcept { return n_; }

  std::span<const int> order(Division i) const {
    check_index(i, "division");
    return {orders_.data() + static_cast<std::size_t>(i - 1) * n_,
            static_cast<std::size_t>(n_)};
  }

  // Position of worker w in division i's order; 0 is the top choice.
  int rank(Division i, Worker w) const {
    check_index(i, "division");
    check_index(w, "worker");
    return ranks_[static_cast<std::size_t>(i - 1) * (n_ + 1) + w];
  }

  bool prefers(Division i, Worker a, Worker b) const {
    return rank(i, a) < rank(i, b);
  }

  bool weakly_prefers(Division i, Worker a, Worker b) const {
    return rank(i, a) <= rank(i, b);
  }

  // Most preferred worker of division i among those for which `allowed`
  // returns true, or 0 if there is none.
  template <typename Pred>
  Worker best_where(Division i, Pred&& allowed) const {
    for (Worker w : order(i))
      if (allowed(w)) return w;
    return 0;
  }

  // Copy with division i's order replaced.
  PreferenceProfile with_order(Division i, std::span<const int> order) const {
    check_index(i, "division");
    detail::require(is_permutation_of(order, n_),
                    "replacement order is not a permutation");
    PreferenceProfile copy = *this;
    std::copy(order.begin(), order.end(),
              copy.orders_.begin() + static_cast<std::ptrdiff_t>(i - 1) * n_);
    copy.rebuild_division_ranks(i);
    return copy;
  }

  std::vector<std::vector<int>> orders() const {
    std::vector<std::vector<int>> out;
    for (Division i = 1; i <= n_; ++i) {
      auto o = order(i);
      out.emplace_back(o.begin(), o.end());
    }
    return out;
  }

  friend bool operator==(const PreferenceProfile& a,
                         const PreferenceProfile& b) {
    return a.n_ == b.n_ && a.orders_ == b.orders_;
  }

 private:
  void check_index(int v, const char* what) const {
    if (v < 1 || v > n_)
      throw InvalidInput(std::string(what) + " index " + std::to_string(v) +
                         " out of range 1.." + std::to_string(n_));
  }

  void rebuild_ranks() {
    ranks_.assign(static_cast<std::size_t>(n_) * (n_ + 1), -1);
    for (Division i = 1; i <= n_; ++i) rebuild_division_ranks(i);
  }

  void rebuild_division_ranks(Division i) {
    const std::size_t row = static_cast<std::size_t>(i - 1);
    for (int pos = 0; pos < n_; ++pos)
      ranks_[row * (n_ + 1) + orders_[row * n_ + pos]] = pos;
  }

  int n_ = 0;
  std::vector<int> orders_;
  std::vector<int> ranks_;
};

inline bool prefers(const PreferenceProfile& p, Division i, Worker a,
                    Worker b) {
  return p.prefers(i, a, b);
}

inline bool weakly_prefers(const PreferenceProfile& p, Division i, Worker a,
                           Worker b) {
  return p.weakly_prefers(i, a, b);
}

// Bijection from divisions to workers. map[i-1] is the worker of division i.
class Assignment {
 public:
  Assignment() = default;

  explicit Assignment(std::vector<int> map) : map_(std::move(map)) {
    detail::require(is_permutation_of(map_, static_cast<int>(map_.size())),
                    "assignment is not a bijection: [" + join(map_) + "]");
  }

  static Assignment identity(int n) {
    std::vector<int> map(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) map[i] = i + 1;
    return Assignment(std::move(map));
  }

  int size() const noexcept { return static_cast<int>(map_.size()); }

  Worker operator[](Division i) const {
    if (i < 1 || i > size())
      throw InvalidInput("division index " + std::to_string(i) +
                         " out of range");
    return map_[static_cast<std::size_t>(i - 1)];
  }

  std::span<const int> values() const noexcept { return map_; }

  // Image of a set of divisions, sorted ascending.
  std::vector<Worker> image(std::span<const Division> divisions) const {
    std::vector<Worker> out;
    out.reserve(divisions.size());
    for (Division d : divisions) out.push_back((*this)[d]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string str() const { return "(" + join(map_) + ")"; }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> map_;
};

inline bool is_derangement(const Assignment& a) {
  for (Division i = 1; i <= a.size(); ++i)
    if (a[i] == i) return false;
  return true;
}

// a Pareto-dominates b: nobody worse off, somebody strictly better.
inline bool pareto_dominates(const PreferenceProfile& p, const Assignment& a,
                             const Assignment& b) {
  detail::require(a.size() == p.size() && b.size() == p.size(),
                  "assignment size does not match profile");
  bool strict = false;
  for (Division i = 1; i <= p.size(); ++i) {
    const int ra = p.rank(i, a[i]);
    const int rb = p.rank(i, b[i]);
    if (ra > rb) return false;
    if (ra < rb) strict = true;
  }
  return strict;
}

// Division i's order with its own worker removed.
inline std::vector<int> restrict_to_others(const PreferenceProfile& p,
                                           Division i) {
  std::vector<int> out;
  for (Worker w : p.order(i))
    if (w != i) out.push_back(w);
  return out;
}

// Completes orders that omit each division's own worker by appending the
// own worker last.
inline PreferenceProfile complete_partial_profile(
    const std::vector<std::vector<int>>& partial) {
  const int n = static_cast<int>(partial.size());
  detail::require(n >= 2, "partial profile needs at least two divisions");
  std::vector<std::vector<int>> full;
  full.reserve(partial.size());
  for (Division i = 1; i <= n; ++i) {
    const auto& row = partial[static_cast<std::size_t>(i - 1)];
    detail::require(static_cast<int>(row.size()) == n - 1,
                    "partial order of division " + std::to_string(i) +
                        " must list the " + std::to_string(n - 1) +
                        " workers other than its own");
    std::vector<int> order(row);
    order.push_back(i);
    detail::require(is_permutation_of(order, n),
                    "partial order of division " + std::to_string(i) +
                        " must be a permutation of the other workers: [" +
                        join(row) + "]");
    full.push_back(std::move(order));
  }
  return PreferenceProfile(full);
}

// One group of an assignment partition. Both sets are kept sorted.
struct Group {
  std::vector<Division> divisions;
  std::vector<Worker> workers;

  friend bool operator==(const Group&, const Group&) = default;
};

// Returns a description of the first violated invariant, if any.
inline std::optional<std::string> partition_violation(
    int n, const std::vector<Group>& groups) {
  if (groups.empty()) return "partition has no groups";
  std::vector<int> div_group(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> wrk_group(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    const std::string tag = "group " + std::to_string(k + 1);
    if (g.divisions.empty()) return tag + " has no divisions";
    if (g.divisions.size() != g.workers.size())
      return tag + " violates balance: " + std::to_string(g.divisions.size()) +
             " divisions vs " + std::to_string(g.workers.size()) + " workers";
    for (Division d : g.divisions) {
      if (d < 1 || d > n) return tag + " lists division out of range";
      if (div_group[d] != -1)
        return "division " + std::to_string(d) + " appears in two groups";
      div_group[d] = static_cast<int>(k);
    }
    for (Worker w : g.workers) {
      if (w < 1 || w > n) return tag + " lists worker out of range";
      if (wrk_group[w] != -1)
        return "worker " + std::to_string(w) + " appears in two groups";
      wrk_group[w] = static_cast<int>(k);
    }
  }
  for (int v = 1; v <= n; ++v) {
    if (div_group[v] == -1)
      return "division " + std::to_string(v) + " is in no group";
    if (wrk_group[v] == -1)
      return "worker " + std::to_string(v) + " is in no group";
    // Worker v is owned by division v.
    if (div_group[v] == wrk_group[v])
      return "group " + std::to_string(div_group[v] + 1) +
             " violates separation: it contains both division " +
             std::to_string(v) + " and its worker";
  }
  return std::nullopt;
}

// Paired division groups and worker choice sets with separation and
// balance.
class AssignmentPartition {
 public:
  AssignmentPartition() = default;

  AssignmentPartition(int n, std::vector<Group> groups)
      : n_(n), groups_(std::move(groups)) {
    for (auto& g : groups_) {
      std::sort(g.divisions.begin(), g.divisions.end());
      std::sort(g.workers.begin(), g.workers.end());
    }
    if (auto why = partition_violation(n_, groups_))
      throw InvalidInput("invalid assignment partition: " + *why);
    group_of_.assign(static_cast<std::size_t>(n_) + 1, -1);
    worker_group_.assign(static_cast<std::size_t>(n_) + 1, -1);
    for (std::size_t k = 0; k < groups_.size(); ++k) {
      for (Division d : groups_[k].divisions)
        group_of_[d] = static_cast<int>(k);
      for (Worker w : groups_[k].workers)
        worker_group_[w] = static_cast<int>(k);
    }
  }

  int size() const noexcept { return n_; }
  int group_count() const noexcept { return static_cast<int>(groups_.size()); }
  const std::vector<Group>& groups() const noexcept { return groups_; }
  const Group& group(int k) const { return groups_.at(static_cast<std::size_t>(k)); }

  // 0-based index of the group holding division i.
  int group_of(Division i) const {
    if (i < 1 || i > n_) throw InvalidInput("division index out of range");
    return group_of_[i];
  }

  // 0-based index of the group whose choice set holds worker w.
  int worker_group(Worker w) const {
    if (w < 1 || w > n_) throw InvalidInput("worker index out of range");
    return worker_group_[w];
  }

  // Choice set of division i.
  const std::vector<Worker>& choice_set(Division i) const {
    return groups_[static_cast<std::size_t>(group_of(i))].workers;
  }

  // mu(N_k) == X_k for every group.
  bool is_feasible(const Assignment& a) const {
    if (a.size() != n_) return false;
    for (const auto& g : groups_)
      if (a.image(g.divisions) != g.workers) return false;
    return true;
  }

  friend bool operator==(const AssignmentPartition& a,
                         const AssignmentPartition& b) {
    return a.n_ == b.n_ && a.groups_ == b.groups_;
  }

 private:
  int n_ = 0;
  std::vector<Group> groups_;
  std::vector<int> group_of_;
  std::vector<int> worker_group_;
};

// Assignment problem with exogenous priority and an optional partition.
// priority lists divisions from highest to lowest.
class Problem {
 public:
  Problem() = default;

  explicit Problem(PreferenceProfile profile, std::vector<Division> priority = {},
                   std::optional<AssignmentPartition> partition = std::nullopt)
      : profile_(std::move(profile)),
        priority_(std::move(priority)),
        partition_(std::move(partition)) {
    const int n = profile_.size();
    detail::require(n >= 2, "a problem needs at least two divisions");
    if (priority_.empty()) {
      for (int i = 1; i <= n; ++i) priority_.push_back(i);
    }
    detail::require(is_permutation_of(priority_, n),
                    "priority is not a permutation of the divisions: [" +
                        join(priority_) + "]");
    detail::require(!partition_ || partition_->size() == n,
                    "partition size does not match the problem");
    priority_rank_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (int pos = 0; pos < n; ++pos) priority_rank_[priority_[pos]] = pos;
  }

  int size() const noexcept { return profile_.size(); }
  const PreferenceProfile& profile() const noexcept { return profile_; }
  const std::vector<Division>& priority() const noexcept { return priority_; }
  const std::optional<AssignmentPartition>& partition() const noexcept {
    return partition_;
  }

  // Position in the exogenous priority; 0 is highest.
  int priority_rank(Division i) const { return priority_rank_.at(i); }

  Problem with_profile(PreferenceProfile profile) const {
    Problem copy = *this;
    detail::require(profile.size() == size(), "profile size mismatch");
    copy.profile_ = std::move(profile);
    return copy;
  }

 private:
  PreferenceProfile profile_;
  std::vector<Division> priority_;
  std::optional<AssignmentPartition> partition_;
  std::vector<int> priority_rank_;
};

// How the mover of a trace step obtained its turn, or how the step's
// assignment was produced for the cycle-clearing mechanisms.
enum class Transition {
  Start,       // first mover
  OwnerCall,   // owner of the previously chosen worker
  Fallback,    // highest remaining division in the governing priority
  LastTwo,     // forced pick of the other remaining club's player
  Sequential,  // next division of a fixed order
  Cycle,       // cleared as part of a trading cycle
  Stay,        // kept its own worker (staying cycle)
};

inline const char* to_string(Transition t) {
  switch (t) {
    case Transition::Start: return "start";
    case Transition::OwnerCall: return "owner-call";
    case Transition::Fallback: return "fallback";
    case Transition::LastTwo: return "last-two";
    case Transition::Sequential: return "sequential";
    case Transition::Cycle: return "cycle";
    case Transition::Stay: return "stay";
  }
  return "?";
}

struct TraceStep {
  int step = 0;
  Division chooser = 0;
  Worker chosen = 0;
  Transition kind = Transition::Start;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

// Ordered record of a mechanism run. Choosers are distinct and chosen
// workers are distinct.
class Trace {
 public:
  void push(int step, Division chooser, Worker chosen, Transition kind) {
    for (const auto& s : steps_) {
      detail::ensure(s.chooser != chooser,
                     "trace: division " + std::to_string(chooser) +
                         " chose twice");
      detail::ensure(s.chosen != chosen,
                     "trace: worker " + std::to_string(chosen) +
                         " chosen twice");
    }
    steps_.push_back({step, chooser, chosen, kind});
  }

  const std::vector<TraceStep>& steps() const noexcept { return steps_; }
  int length() const noexcept { return static_cast<int>(steps_.size()); }
  bool complete(int n) const noexcept { return length() == n; }

  std::vector<Division> choosers() const {
    std::vector<Division> out;
    for (const auto& s : steps_) out.push_back(s.chooser);
    return out;
  }

  std::vector<Worker> chosen() const {
    std::vector<Worker> out;
    for (const auto& s : steps_) out.push_back(s.chosen);
    return out;
  }

  std::vector<Transition> kinds() const {
    std::vector<Transition> out;
    for (const auto& s : steps_) out.push_back(s.kind);
    return out;
  }

  // 1-based position at which worker w was chosen, 0 if never.
  int selection_time(Worker w) const {
    for (std::size_t k = 0; k < steps_.size(); ++k)
      if (steps_[k].chosen == w) return static_cast<int>(k) + 1;
    return 0;
  }

 private:
  std::vector<TraceStep> steps_;
};

// Result of running a mechanism.
struct Outcome {
  Assignment assignment;
  Trace trace;
};

}  // namespace cex
