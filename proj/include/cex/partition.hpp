#pragma once

// Existence test and linear-time construction of assignment partitions.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "cex/error.hpp"
#include "cex/model.hpp"

namespace cex {

// An assignment partition with the given group sizes exists iff no group
// holds more than half of the divisions.
inline bool partition_exists(const std::vector<int>& group_sizes) {
  detail::require(group_sizes.size() >= 2,
                  "partition existence needs at least two groups");
  int n = 0;
  int largest = 0;
  for (int s : group_sizes) {
    detail::require(s > 0, "group sizes must be positive");
    n += s;
    largest = std::max(largest, s);
  }
  return 2 * largest <= n;
}

// Elementary operations performed by largest_first_construct.
struct ConstructionStats {
  std::uint64_t steps = 0;
};

// Builds worker choice sets for a fixed grouping of divisions.
//
// The first largest group acts as a buffer: its workers head the queue and
// are consumed by the other groups (served in their input order), and the
// largest group receives whatever is left. Workers of each group enter the
// queue in ascending order. The returned groups keep the input order.
inline AssignmentPartition largest_first_construct(
    const std::vector<std::vector<Division>>& division_groups,
    ConstructionStats* stats = nullptr) {
  const std::size_t k_groups = division_groups.size();
  detail::require(k_groups >= 2,
                  "an assignment partition needs at least two groups");

  int n = 0;
  for (const auto& g : division_groups) {
    detail::require(!g.empty(), "division groups must be non-empty");
    n += static_cast<int>(g.size());
  }
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& g : division_groups)
    for (Division d : g) {
      detail::require(d >= 1 && d <= n && !seen[d],
                      "division groups must partition 1.." + std::to_string(n));
      seen[d] = 1;
    }

  std::uint64_t steps = 0;

  // First index among the maxima.
  std::size_t largest = 0;
  for (std::size_t k = 1; k < k_groups; ++k, ++steps)
    if (division_groups[k].size() > division_groups[largest].size()) largest = k;

  const auto n_max = static_cast<int>(division_groups[largest].size());
  if (2 * n_max > n)
    throw Infeasible("no assignment partition exists: group " +
                     std::to_string(largest + 1) + " has " +
                     std::to_string(n_max) + " of " + std::to_string(n) +
                     " divisions, more than half");

  std::vector<std::size_t> processing;
  processing.reserve(k_groups);
  processing.push_back(largest);
  for (std::size_t k = 0; k < k_groups; ++k)
    if (k != largest) processing.push_back(k);

  // Ascending order within a group; counting sort keeps this O(n).
  std::vector<int> group_of(static_cast<std::size_t>(n) + 1, -1);
  for (std::size_t k = 0; k < k_groups; ++k)
    for (Division d : division_groups[k]) {
      group_of[d] = static_cast<int>(k);
      ++steps;
    }
  std::vector<std::vector<Worker>> sorted(k_groups);
  for (Worker w = 1; w <= n; ++w, ++steps) sorted[group_of[w]].push_back(w);

  std::vector<Worker> queue;
  queue.reserve(static_cast<std::size_t>(n));
  for (std::size_t k : processing)
    for (Worker w : sorted[k]) {
      queue.push_back(w);
      ++steps;
    }

  std::vector<Group> groups(k_groups);
  std::size_t head = 0;
  for (std::size_t idx = 1; idx < processing.size(); ++idx) {
    const std::size_t k = processing[idx];
    const std::size_t need = division_groups[k].size();
    groups[k].workers.assign(queue.begin() + static_cast<std::ptrdiff_t>(head),
                             queue.begin() + static_cast<std::ptrdiff_t>(head + need));
    head += need;
    steps += need;
  }
  groups[largest].workers.assign(queue.begin() + static_cast<std::ptrdiff_t>(head), queue.end());
  steps += queue.size() - head;

  for (std::size_t k = 0; k < k_groups; ++k)
    groups[k].divisions = division_groups[k];

  if (stats) stats->steps = steps;
  return AssignmentPartition(n, std::move(groups));
}

// Coarsest partitions: two crossed halves for even n, and groups of sizes
// 1, k, k ({1}, {2..k+1}, {k+2..n}) for odd n = 2k+1.
inline AssignmentPartition canonical_partition(int n) {
  detail::require(n >= 2, "canonical partition needs n >= 2");
  std::vector<std::vector<Division>> groups;
  auto range = [](int lo, int hi) {
    std::vector<Division> out(static_cast<std::size_t>(hi - lo + 1));
    std::iota(out.begin(), out.end(), lo);
    return out;
  };
  if (n % 2 == 0) {
    const int k = n / 2;
    std::vector<Group> halves{{range(1, k), range(k + 1, n)},
                              {range(k + 1, n), range(1, k)}};
    return AssignmentPartition(n, std::move(halves));
  }
  const int k = (n - 1) / 2;
  groups.push_back({1});
  groups.push_back(range(2, k + 1));
  groups.push_back(range(k + 2, n));
  return largest_first_construct(groups);
}

}  // namespace cex
