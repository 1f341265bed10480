#pragma once

// Efficiency oracles and exhaustive / sampled property sweeps.
//
// Sweeps report the first failure in a fixed enumeration order (profile
// index, then division, then deviation or improvement), so the witness does
// not depend on the number of threads.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "cex/enumerate.hpp"
#include "cex/error.hpp"
#include "cex/mechanism.hpp"
#include "cex/model.hpp"
#include "cex/partition.hpp"
#include "cex/random.hpp"

namespace cex {

// ---------------------------------------------------------------------------
// Efficiency

namespace detail {

// Looks for a cycle i0 -> i1 -> ... -> i0 in which every division strictly
// prefers the next division's worker. Trades along the cycle keep every
// other division unchanged, so a cycle exists iff some assignment obtained
// by reshuffling (subject to `allowed`) Pareto-dominates `mu`.
template <typename Allowed>
std::optional<Assignment> improving_cycle(const PreferenceProfile& prefs,
                                          const Assignment& mu,
                                          Allowed&& allowed) {
  const int n = prefs.size();
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n) + 1);
  for (Division i = 1; i <= n; ++i)
    for (Division j = 1; j <= n; ++j)
      if (j != i && prefs.prefers(i, mu[j], mu[i]) && allowed(i, j))
        adj[i].push_back(j);

  std::vector<int> color(static_cast<std::size_t>(n) + 1, 0), parent(n + 1, 0);
  std::vector<int> cycle;
  std::function<bool(int)> dfs = [&](int u) {
    color[u] = 1;
    for (int v : adj[u]) {
      if (color[v] == 1) {
        for (int x = u; x != v; x = parent[x]) cycle.push_back(x);
        cycle.push_back(v);
        std::reverse(cycle.begin(), cycle.end());
        return true;
      }
      if (color[v] == 0) {
        parent[v] = u;
        if (dfs(v)) return true;
      }
    }
    color[u] = 2;
    return false;
  };
  for (int s = 1; s <= n; ++s)
    if (color[s] == 0 && dfs(s)) {
      std::vector<int> map(mu.values().begin(), mu.values().end());
      for (std::size_t k = 0; k < cycle.size(); ++k)
        map[cycle[k] - 1] = mu[cycle[(k + 1) % cycle.size()]];
      return Assignment(std::move(map));
    }
  return std::nullopt;
}

}  // namespace detail

// A derangement Pareto-dominating `mu`, if one exists (mu must be a
// derangement).
inline std::optional<Assignment> ce_dominator(const PreferenceProfile& prefs,
                                              const Assignment& mu) {
  detail::require(mu.size() == prefs.size(), "assignment size does not match profile");
  detail::require(is_derangement(mu), "CE-efficiency is defined for derangements only");
  return detail::improving_cycle(prefs, mu,
                                 [&](Division i, Division j) { return mu[j] != i; });
}

inline bool is_ce_efficient(const PreferenceProfile& prefs, const Assignment& mu) {
  return is_derangement(mu) && !ce_dominator(prefs, mu);
}

inline std::optional<Assignment> pareto_dominator(const PreferenceProfile& prefs,
                                                  const Assignment& mu) {
  detail::require(mu.size() == prefs.size(), "assignment size does not match profile");
  return detail::improving_cycle(prefs, mu, [](Division, Division) { return true; });
}

inline bool is_pareto_efficient(const PreferenceProfile& prefs, const Assignment& mu) {
  return !pareto_dominator(prefs, mu);
}

constexpr int kCeeSetMaxN = 9;

// All CE-efficient assignments, in lexicographic order.
inline std::vector<Assignment> cee_set(const PreferenceProfile& prefs) {
  if (prefs.size() > kCeeSetMaxN)
    throw BoundExceeded("CE-efficient set enumeration supports n <= " +
                        std::to_string(kCeeSetMaxN));
  std::vector<Assignment> out;
  for (auto& a : all_derangements(prefs.size()))
    if (!ce_dominator(prefs, a)) out.push_back(std::move(a));
  return out;
}

constexpr int kEapMaxGroup = 8;

// A partition-feasible assignment Pareto-dominating `mu`, if any. Feasible
// assignments are products of per-group bijections and dominance
// factorises, so each group is enumerated on its own.
inline std::optional<Assignment> eap_dominator(const PreferenceProfile& prefs,
                                               const AssignmentPartition& part,
                                               const Assignment& mu) {
  detail::require(part.size() == prefs.size(), "partition size does not match profile");
  detail::require(part.is_feasible(mu),
                  "assignment " + mu.str() + " is not feasible under the partition");
  for (const auto& g : part.groups()) {
    if (static_cast<int>(g.divisions.size()) > kEapMaxGroup)
      throw BoundExceeded("EAP check supports groups of at most " +
                          std::to_string(kEapMaxGroup) + " divisions");
    std::vector<Worker> perm = g.workers;
    do {
      bool weak = true, strict = false;
      for (std::size_t k = 0; k < perm.size() && weak; ++k) {
        const Division d = g.divisions[k];
        const int r_new = prefs.rank(d, perm[k]);
        const int r_old = prefs.rank(d, mu[d]);
        if (r_new > r_old) weak = false;
        if (r_new < r_old) strict = true;
      }
      if (weak && strict) {
        std::vector<int> map(mu.values().begin(), mu.values().end());
        for (std::size_t k = 0; k < perm.size(); ++k) map[g.divisions[k] - 1] = perm[k];
        return Assignment(std::move(map));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return std::nullopt;
}

inline bool eap_efficient(const PreferenceProfile& prefs,
                          const AssignmentPartition& part, const Assignment& mu) {
  return !eap_dominator(prefs, part, mu);
}

// ---------------------------------------------------------------------------
// Improvements

// `improved` is an improvement for division i with respect to `base`.
inline bool is_improvement(const PreferenceProfile& base,
                           const PreferenceProfile& improved, Division i) {
  const int n = base.size();
  if (improved.size() != n || i < 1 || i > n) return false;
  for (int pos = 0; pos < n; ++pos)
    if (base.order(i)[pos] != improved.order(i)[pos]) return false;
  for (Division j = 1; j <= n; ++j) {
    if (j == i) continue;
    for (Worker k = 1; k <= n; ++k) {
      if (k == i) continue;
      if (base.prefers(j, i, k) && !improved.prefers(j, i, k)) return false;
      for (Worker l = 1; l <= n; ++l)
        if (l != i && base.prefers(j, k, l) != improved.prefers(j, k, l)) return false;
    }
  }
  return true;
}

// `order` with worker w moved to position q (q not after its current one).
inline std::vector<int> move_up(std::span<const int> order, Worker w, int q) {
  std::vector<int> out;
  out.reserve(order.size());
  for (int x : order)
    if (x != w) out.push_back(x);
  out.insert(out.begin() + q, w);
  return out;
}

namespace detail {

// Positions worker i may move to in each other division's order, as an
// odometer over divisions != i.
struct ImprovementOdometer {
  std::vector<int> limit;  // limit[j-1] = current position of i in j's order
  std::vector<int> pos;
  Division i;

  ImprovementOdometer(const PreferenceProfile& p, Division i_) : i(i_) {
    const int n = p.size();
    for (Division j = 1; j <= n; ++j) limit.push_back(j == i ? 0 : p.rank(j, i));
    pos = limit;
  }

  std::uint64_t count() const {
    std::uint64_t c = 1;
    for (int l : limit) c *= static_cast<std::uint64_t>(l + 1);
    return c;
  }

  PreferenceProfile profile(const PreferenceProfile& p) const {
    auto orders = p.orders();
    for (Division j = 1; j <= p.size(); ++j)
      if (j != i) orders[j - 1] = move_up(p.order(j), i, pos[j - 1]);
    return PreferenceProfile(orders);
  }

  // Steps to the next setting; positions count down from the original
  // ones, so the first setting is the identity improvement.
  bool next() {
    for (std::size_t k = 0; k < pos.size(); ++k) {
      if (static_cast<int>(k) + 1 == i) continue;
      if (pos[k] > 0) {
        --pos[k];
        return true;
      }
      pos[k] = limit[k];
    }
    return false;
  }
};

}  // namespace detail

// Visits every improvement for division i (the identity first). Stops
// early when `visit` returns false.
template <typename Visit>
void for_each_improvement(const PreferenceProfile& p, Division i, Visit&& visit) {
  detail::require(i >= 1 && i <= p.size(), "division index out of range");
  detail::ImprovementOdometer odo(p, i);
  do {
    if (!visit(odo.profile(p))) return;
  } while (odo.next());
}

inline std::vector<PreferenceProfile> enumerate_improvements(const PreferenceProfile& p,
                                                             Division i) {
  std::vector<PreferenceProfile> out;
  for_each_improvement(p, i, [&](PreferenceProfile q) {
    out.push_back(std::move(q));
    return true;
  });
  return out;
}

inline std::uint64_t improvement_count(const PreferenceProfile& p, Division i) {
  detail::require(i >= 1 && i <= p.size(), "division index out of range");
  return detail::ImprovementOdometer(p, i).count();
}

// ---------------------------------------------------------------------------
// Reports

enum class Property { CE, SP, RI, CEE, EAP, Pareto };

inline const char* to_string(Property p) {
  switch (p) {
    case Property::CE: return "ce";
    case Property::SP: return "sp";
    case Property::RI: return "ri";
    case Property::CEE: return "cee";
    case Property::EAP: return "eap";
    case Property::Pareto: return "pareto";
  }
  return "?";
}

inline Property parse_property(const std::string& s) {
  std::string key;
  for (char c : s)
    if (c != '-' && c != '_') key += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (auto p : {Property::CE, Property::SP, Property::RI, Property::CEE,
                 Property::EAP, Property::Pareto})
    if (key == to_string(p)) return p;
  if (key == "cee" || key == "ceefficiency") return Property::CEE;
  throw InvalidInput("unknown property '" + s +
                     "' (expected ce, sp, ri, cee, eap or pareto)");
}

struct Scope {
  bool exhaustive = true;
  int n = 0;
  std::uint64_t count = 0;  // sampled only
  std::uint64_t seed = 0;   // sampled only
};

inline std::string describe(const Scope& s) {
  if (s.exhaustive) return "exhaustive(n=" + std::to_string(s.n) + ")";
  return "sampled(n=" + std::to_string(s.n) + ", count=" + std::to_string(s.count) +
         ", seed=" + std::to_string(s.seed) + ")";
}

// A counterexample. For SP `alternative` is the profile with division's
// misreport and `alternative_outcome` the resulting assignment; for RI it
// is the improved profile. For the efficiency properties `dominator` is an
// admissible assignment Pareto-dominating `outcome`.
struct Witness {
  Property property = Property::CE;
  Problem problem;
  Division division = 0;
  Assignment outcome;
  std::optional<PreferenceProfile> alternative;
  std::optional<Assignment> alternative_outcome;
  std::optional<Assignment> dominator;
  std::uint64_t position = 0;  // profile index (exhaustive) or sample number
};

struct PropertyReport {
  Property property = Property::CE;
  MechanismId mechanism;
  Scope scope;
  SpaceKind space = SpaceKind::Canonical;
  bool holds = true;
  std::uint64_t profiles = 0;  // profiles examined up to the verdict
  std::optional<Witness> witness;
};

// ---------------------------------------------------------------------------
// Sweeps

constexpr int kExhaustiveIncentiveMaxN = 4;
constexpr std::uint64_t kExhaustiveMaxProfiles = 10'000'000;
constexpr std::uint64_t kSampledAllDeviationsMaxRadix = 720;
constexpr int kSampledDeviations = 64;
constexpr std::uint64_t kSampledAllImprovementsMax = 256;
constexpr int kSampledImprovements = 256;

struct SweepOptions {
  int jobs = 0;                     // 0: hardware concurrency
  std::optional<SpaceKind> space;   // default: default_space(tag)
};

// Problem used for every profile of a sweep: ascending priority, and the
// canonical partition for the partition-based mechanisms.
inline Problem sweep_problem(MechanismTag tag, const PreferenceProfile& prefs) {
  std::optional<AssignmentPartition> part;
  if (needs_partition(tag)) part = canonical_partition(prefs.size());
  return Problem(prefs, {}, std::move(part));
}

namespace detail {

inline int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs body(k) for k in [0, count) on `jobs` threads. body returns true on
// failure. Returns the smallest failing k, or count if none fails.
template <typename Body>
std::uint64_t first_failure(std::uint64_t count, int jobs, Body&& body) {
  constexpr std::uint64_t kChunk = 64;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> best{count};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t start = next_chunk.fetch_add(1) * kChunk;
        if (start >= count || start >= best.load()) return;
        const std::uint64_t end = std::min(count, start + kChunk);
        for (std::uint64_t k = start; k < end; ++k) {
          if (k >= best.load()) break;
          if (body(k)) {
            std::uint64_t cur = best.load();
            while (k < cur && !best.compare_exchange_weak(cur, k)) {
            }
            break;
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      best.store(0);
    }
  };
  const int threads = static_cast<int>(
      std::min<std::uint64_t>(static_cast<std::uint64_t>(jobs), (count + kChunk - 1) / kChunk));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return best.load();
}

// Mechanism outcomes for every profile of an exhaustive space, packed as
// n bytes per profile.
class OutcomeTable {
 public:
  OutcomeTable(const MechanismId& id, const ProfileSpace& space, int jobs)
      : n_(space.n()), data_(space.size() * static_cast<std::uint64_t>(space.n())) {
    const Problem base = sweep_problem(id.tag, space.profile_at(0));
    first_failure(space.size(), jobs, [&](std::uint64_t idx) {
      const auto a = run(id, base.with_profile(space.profile_at(idx))).assignment;
      for (int i = 0; i < n_; ++i)
        data_[idx * n_ + i] = static_cast<std::uint8_t>(a.values()[i]);
      return false;
    });
  }

  Worker at(std::uint64_t idx, Division i) const { return data_[idx * n_ + (i - 1)]; }

 private:
  int n_;
  std::vector<std::uint8_t> data_;
};

// Rank tables for every (division, digit) of a small space.
struct DigitRanks {
  int n;
  std::uint64_t radix;
  std::vector<int> ranks;  // [(i-1)*radix + digit][w]

  explicit DigitRanks(const ProfileSpace& space)
      : n(space.n()), radix(space.radix()),
        ranks(static_cast<std::size_t>(space.n()) * space.radix() * (space.n() + 1)) {
    for (Division i = 1; i <= n; ++i)
      for (std::uint64_t d = 0; d < radix; ++d) {
        const auto order = space.order_for(i, d);
        for (int pos = 0; pos < n; ++pos) ranks[slot(i, d) + order[pos]] = pos;
      }
  }

  std::size_t slot(Division i, std::uint64_t d) const {
    return ((static_cast<std::size_t>(i) - 1) * radix + d) * (n + 1);
  }

  int rank(Division i, std::uint64_t d, Worker w) const { return ranks[slot(i, d) + w]; }
};

inline void check_exhaustive_bound(Property prop, const ProfileSpace& space) {
  if ((prop == Property::SP || prop == Property::RI) &&
      space.n() > kExhaustiveIncentiveMaxN)
    throw BoundExceeded("exhaustive " + std::string(to_string(prop)) +
                        " sweeps support n <= " +
                        std::to_string(kExhaustiveIncentiveMaxN) + "; use a sampled scope");
  if (space.size() > kExhaustiveMaxProfiles)
    throw BoundExceeded("profile space of size " +
                        (space.size() == ProfileSpace::kUnbounded
                             ? std::string(">2^64")
                             : std::to_string(space.size())) +
                        " exceeds the exhaustive limit of " +
                        std::to_string(kExhaustiveMaxProfiles));
  if (prop == Property::CEE && space.n() > kCeeSetMaxN)
    throw BoundExceeded("CE-efficiency sweeps support n <= " + std::to_string(kCeeSetMaxN));
}

// Per-profile checks shared by both scopes. Each returns a witness for the
// first violation at `problem`, or nothing.

inline std::optional<Witness> outcome_violation(Property prop, const MechanismId& id,
                                                const Problem& problem) {
  const Assignment a = run(id, problem).assignment;
  const auto& prefs = problem.profile();
  Witness w;
  w.property = prop;
  w.problem = problem;
  w.outcome = a;
  switch (prop) {
    case Property::CE:
      if (is_derangement(a)) return std::nullopt;
      return w;
    case Property::CEE:
      if (!is_derangement(a)) return w;  // not CE-compliant at all
      if (auto d = ce_dominator(prefs, a)) {
        w.dominator = *d;
        return w;
      }
      return std::nullopt;
    case Property::EAP: {
      require(problem.partition().has_value(),
              std::string(to_string(id.tag)) + " has no assignment partition to check EAP against");
      if (auto d = eap_dominator(prefs, *problem.partition(), a)) {
        w.dominator = *d;
        return w;
      }
      return std::nullopt;
    }
    case Property::Pareto:
      if (auto d = pareto_dominator(prefs, a)) {
        w.dominator = *d;
        return w;
      }
      return std::nullopt;
    default:
      break;
  }
  throw InvalidInput("not an outcome property");
}

template <typename Deviations>
std::optional<Witness> sp_violation(const MechanismId& id, const Problem& problem,
                                    Deviations&& deviations_of) {
  const Assignment truthful = run(id, problem).assignment;
  const auto& prefs = problem.profile();
  for (Division i = 1; i <= problem.size(); ++i) {
    for (const auto& order : deviations_of(i)) {
      auto alt = prefs.with_order(i, order);
      const Assignment lie = run(id, problem.with_profile(alt)).assignment;
      if (prefs.prefers(i, lie[i], truthful[i])) {
        Witness w;
        w.property = Property::SP;
        w.problem = problem;
        w.division = i;
        w.outcome = truthful;
        w.alternative = std::move(alt);
        w.alternative_outcome = lie;
        return w;
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Witness> ri_violation_at(const MechanismId& id, const Problem& problem,
                                              Division i, const PreferenceProfile& improved,
                                              const Assignment& before) {
  const Assignment after = run(id, problem.with_profile(improved)).assignment;
  if (!problem.profile().prefers(i, before[i], after[i])) return std::nullopt;
  Witness w;
  w.property = Property::RI;
  w.problem = problem;
  w.division = i;
  w.outcome = before;
  w.alternative = improved;
  w.alternative_outcome = after;
  return w;
}

inline std::optional<Witness> ri_violation_all(const MechanismId& id, const Problem& problem) {
  const Assignment before = run(id, problem).assignment;
  std::optional<Witness> found;
  for (Division i = 1; i <= problem.size() && !found; ++i)
    for_each_improvement(problem.profile(), i, [&](const PreferenceProfile& q) {
      if (q == problem.profile()) return true;
      found = ri_violation_at(id, problem, i, q, before);
      return !found;
    });
  return found;
}

inline std::optional<Witness> ri_violation_sampled(const MechanismId& id,
                                                   const Problem& problem, Rng& rng) {
  const auto& prefs = problem.profile();
  const Assignment before = run(id, problem).assignment;
  for (Division i = 1; i <= problem.size(); ++i) {
    if (improvement_count(prefs, i) <= kSampledAllImprovementsMax) {
      std::optional<Witness> found;
      for_each_improvement(prefs, i, [&](const PreferenceProfile& q) {
        if (q == prefs) return true;
        found = ri_violation_at(id, problem, i, q, before);
        return !found;
      });
      if (found) return found;
      continue;
    }
    for (int s = 0; s < kSampledImprovements; ++s) {
      auto orders = prefs.orders();
      for (Division j = 1; j <= problem.size(); ++j) {
        if (j == i) continue;
        const int q = static_cast<int>(rng.below(static_cast<std::uint64_t>(prefs.rank(j, i)) + 1));
        orders[j - 1] = move_up(prefs.order(j), i, q);
      }
      PreferenceProfile improved(orders);
      if (improved == prefs) continue;
      if (auto w = ri_violation_at(id, problem, i, improved, before)) return w;
    }
  }
  return std::nullopt;
}

// Exhaustive SP and RI: outcomes are tabulated once and every comparison
// is a table lookup. The witness is rebuilt with full problems afterwards.

inline PropertyReport exhaustive_incentive(Property prop, const MechanismId& id,
                                           const ProfileSpace& space, int jobs) {
  const int n = space.n();
  const OutcomeTable table(id, space, jobs);
  const DigitRanks ranks(space);
  const std::uint64_t radix = space.radix();

  // moved[((i-1)*n + (j-1))*radix + d][q]: digit of j's order d after
  // moving worker i to position q.
  std::vector<std::vector<std::uint64_t>> moved;
  if (prop == Property::RI) {
    moved.resize(static_cast<std::size_t>(n) * n * radix);
    for (Division i = 1; i <= n; ++i)
      for (Division j = 1; j <= n; ++j) {
        if (i == j) continue;
        for (std::uint64_t d = 0; d < radix; ++d) {
          const auto order = space.order_for(j, d);
          auto& slot = moved[((i - 1) * n + (j - 1)) * radix + d];
          const int cur = ranks.rank(j, d, i);
          for (int q = 0; q <= cur; ++q) slot.push_back(space.digit_of(j, move_up(order, i, q)));
        }
      }
  }

  auto violates = [&](std::uint64_t idx) -> bool {
    const auto dg = space.digits(idx);
    for (Division i = 1; i <= n; ++i) {
      const Worker mine = table.at(idx, i);
      const int mine_rank = ranks.rank(i, dg[i - 1], mine);
      if (prop == Property::SP) {
        for (std::uint64_t d = 0; d < radix; ++d) {
          if (d == dg[i - 1]) continue;
          if (ranks.rank(i, dg[i - 1], table.at(space.with_digit(idx, i, d), i)) < mine_rank)
            return true;
        }
        continue;
      }
      // Odometer over q_j for j != i.
      std::vector<int> q(static_cast<std::size_t>(n), 0), lim(static_cast<std::size_t>(n), 0);
      for (Division j = 1; j <= n; ++j)
        if (j != i) q[j - 1] = lim[j - 1] = ranks.rank(j, dg[j - 1], i);
      for (;;) {
        int k = 0;
        for (; k < n; ++k) {
          if (k + 1 == i) continue;
          if (q[k] > 0) {
            --q[k];
            break;
          }
          q[k] = lim[k];
        }
        if (k == n) break;
        std::uint64_t idx2 = 0;
        for (Division j = n; j >= 1; --j) {
          const std::uint64_t d =
              j == i ? dg[j - 1] : moved[((i - 1) * n + (j - 1)) * radix + dg[j - 1]][q[j - 1]];
          idx2 = idx2 * radix + d;
        }
        if (ranks.rank(i, dg[i - 1], table.at(idx2, i)) > mine_rank) return true;
      }
    }
    return false;
  };

  PropertyReport report;
  report.property = prop;
  report.mechanism = id;
  report.scope = {true, n, 0, 0};
  report.space = space.kind();
  const std::uint64_t bad = first_failure(space.size(), jobs, violates);
  report.holds = bad == space.size();
  report.profiles = report.holds ? space.size() : bad + 1;
  if (!report.holds) {
    const Problem problem = sweep_problem(id.tag, space.profile_at(bad));
    std::optional<Witness> w;
    if (prop == Property::SP) {
      w = sp_violation(id, problem, [&](Division i) {
        std::vector<std::vector<int>> devs;
        for (std::uint64_t d = 0; d < radix; ++d) devs.push_back(space.order_for(i, d));
        return devs;
      });
    } else {
      w = ri_violation_all(id, problem);
    }
    ensure(w.has_value(), "tabulated violation did not reproduce");
    w->position = bad;
    report.witness = std::move(w);
  }
  return report;
}

}  // namespace detail

inline PropertyReport check_property(Property prop, const MechanismId& id, const Scope& scope,
                                     const SweepOptions& opts = {}) {
  const ProfileSpace space(scope.n, opts.space.value_or(default_space(id.tag)));
  const int jobs = detail::resolve_jobs(opts.jobs);
  if (id.tag == MechanismTag::Npb) detail::require(scope.n >= 3, "the draft needs n >= 3");
  if (prop == Property::EAP)
    detail::require(needs_partition(id.tag),
                    std::string(to_string(id.tag)) + " does not use an assignment partition");

  if (scope.exhaustive) {
    detail::check_exhaustive_bound(prop, space);
    if (prop == Property::SP || prop == Property::RI)
      return detail::exhaustive_incentive(prop, id, space, jobs);
  } else {
    detail::require(scope.count > 0, "sampled scope needs a positive count");
  }

  const std::uint64_t total = scope.exhaustive ? space.size() : scope.count;
  const Problem base = sweep_problem(
      id.tag, space.profile_from_digits(std::vector<std::uint64_t>(static_cast<std::size_t>(scope.n), 0)));
  auto problem_at = [&](std::uint64_t k, Rng* rng) {
    return base.with_profile(scope.exhaustive ? space.profile_at(k) : space.random(*rng));
  };

  auto violation = [&](std::uint64_t k) -> std::optional<Witness> {
    Rng rng(derive_seed(scope.seed, k));
    const Problem problem = problem_at(k, &rng);
    switch (prop) {
      case Property::SP:
        return detail::sp_violation(id, problem, [&](Division i) {
          std::vector<std::vector<int>> devs;
          if (space.radix() <= kSampledAllDeviationsMaxRadix) {
            for (std::uint64_t d = 0; d < space.radix(); ++d)
              devs.push_back(space.order_for(i, d));
          } else {
            for (int s = 0; s < kSampledDeviations; ++s)
              devs.push_back(space.random_order(i, rng));
          }
          return devs;
        });
      case Property::RI:
        return detail::ri_violation_sampled(id, problem, rng);
      default:
        return detail::outcome_violation(prop, id, problem);
    }
  };

  PropertyReport report;
  report.property = prop;
  report.mechanism = id;
  report.scope = scope;
  report.space = space.kind();
  const std::uint64_t bad =
      detail::first_failure(total, jobs, [&](std::uint64_t k) { return violation(k).has_value(); });
  report.holds = bad == total;
  report.profiles = report.holds ? total : bad + 1;
  if (!report.holds) {
    auto w = violation(bad);
    detail::ensure(w.has_value(), "violation did not reproduce");
    w->position = bad;
    report.witness = std::move(w);
  }
  return report;
}

inline PropertyReport check_ce(const MechanismId& id, const Scope& s, const SweepOptions& o = {}) {
  return check_property(Property::CE, id, s, o);
}
inline PropertyReport check_sp(const MechanismId& id, const Scope& s, const SweepOptions& o = {}) {
  return check_property(Property::SP, id, s, o);
}
inline PropertyReport check_ri(const MechanismId& id, const Scope& s, const SweepOptions& o = {}) {
  return check_property(Property::RI, id, s, o);
}
inline PropertyReport check_cee(const MechanismId& id, const Scope& s, const SweepOptions& o = {}) {
  return check_property(Property::CEE, id, s, o);
}
inline PropertyReport check_eap(const MechanismId& id, const Scope& s, const SweepOptions& o = {}) {
  return check_property(Property::EAP, id, s, o);
}
inline PropertyReport check_pareto(const MechanismId& id, const Scope& s,
                                   const SweepOptions& o = {}) {
  return check_property(Property::Pareto, id, s, o);
}

// Re-validates a witness without the sweep machinery: reruns the mechanism
// on the stored problems and compares with plain preference lookups.
inline bool recheck_witness(const MechanismId& id, const Witness& w) {
  const auto& prefs = w.problem.profile();
  const int n = w.problem.size();
  const Assignment a = run(id, w.problem).assignment;
  if (a != w.outcome) return false;
  switch (w.property) {
    case Property::CE:
      return !is_derangement(a);
    case Property::SP: {
      if (!w.alternative || w.division < 1 || w.division > n) return false;
      for (Division j = 1; j <= n; ++j)
        if (j != w.division &&
            !std::ranges::equal(prefs.order(j), w.alternative->order(j)))
          return false;
      const Assignment lie = run(id, w.problem.with_profile(*w.alternative)).assignment;
      return lie == w.alternative_outcome &&
             prefs.prefers(w.division, lie[w.division], a[w.division]);
    }
    case Property::RI: {
      if (!w.alternative || !is_improvement(prefs, *w.alternative, w.division)) return false;
      const Assignment after = run(id, w.problem.with_profile(*w.alternative)).assignment;
      return after == w.alternative_outcome &&
             prefs.prefers(w.division, a[w.division], after[w.division]);
    }
    case Property::CEE:
      if (!is_derangement(a)) return true;
      return w.dominator && is_derangement(*w.dominator) &&
             pareto_dominates(prefs, *w.dominator, a);
    case Property::EAP:
      return w.dominator && w.problem.partition() &&
             w.problem.partition()->is_feasible(*w.dominator) &&
             pareto_dominates(prefs, *w.dominator, a);
    case Property::Pareto:
      return w.dominator && pareto_dominates(prefs, *w.dominator, a);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Three-division incompatibility between CE-efficiency and RI

struct ImpossibilityCertificate {
  PreferenceProfile base;      // 1: 2>3, 2: 3>1, 3: 1>2 (own worker last)
  PreferenceProfile improved;  // division 2 moves worker 1 up
  bool is_improvement_for_1 = false;
  std::vector<Assignment> base_set;
  std::vector<Assignment> improved_set;
  bool base_singleton = false;     // base_set == {(2,3,1)}
  bool improved_pair = false;      // improved_set == {(2,3,1),(3,1,2)}
  bool not_comparable = false;     // neither dominates the other at `improved`
  // Division 1 gets worker 2 at the base profile. Selecting (2,3,1) at the
  // improved profile keeps worker 2; selecting (3,1,2) gives worker 3.
  bool branch_a_violates = false;
  bool branch_b_violates = false;
  bool certified = false;
};

inline ImpossibilityCertificate universal_impossibility_scan(int n = 3) {
  detail::require(n == 3, "the incompatibility construction is for n = 3");
  ImpossibilityCertificate c;
  c.base = complete_partial_profile({{2, 3}, {3, 1}, {1, 2}});
  c.improved = complete_partial_profile({{2, 3}, {1, 3}, {1, 2}});
  c.is_improvement_for_1 = is_improvement(c.base, c.improved, 1);
  const Assignment mu_a({2, 3, 1}), mu_b({3, 1, 2});
  c.base_set = cee_set(c.base);
  c.improved_set = cee_set(c.improved);
  c.base_singleton = c.base_set == std::vector<Assignment>{mu_a};
  c.improved_pair = c.improved_set == std::vector<Assignment>{mu_a, mu_b};
  c.not_comparable = !pareto_dominates(c.improved, mu_a, mu_b) &&
                     !pareto_dominates(c.improved, mu_b, mu_a);
  c.branch_a_violates = c.base.prefers(1, mu_a[1], mu_a[1]);
  c.branch_b_violates = c.base.prefers(1, mu_a[1], mu_b[1]);
  c.certified = c.is_improvement_for_1 && c.base_singleton && c.improved_pair &&
                c.not_comparable && c.branch_b_violates;
  return c;
}

}  // namespace cex
