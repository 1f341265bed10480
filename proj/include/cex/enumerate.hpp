#pragma once

// Enumeration of permutations, derangements and preference profiles.
//
// A profile space assigns every division one digit: the Lehmer rank of its
// order. In the canonical space a division ranks its own worker last and
// the digit ranks the order of the other n-1 workers; in the full space the
// digit ranks the whole order. Profile indices are mixed-radix numbers with
// division 1 as the least significant digit.

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "cex/error.hpp"
#include "cex/model.hpp"
#include "cex/random.hpp"

namespace cex {

inline std::uint64_t factorial(int k) {
  detail::require(k >= 0 && k <= 20, "factorial argument out of range");
  std::uint64_t f = 1;
  for (int v = 2; v <= k; ++v) f *= static_cast<std::uint64_t>(v);
  return f;
}

// Permutation of `base` (sorted ascending) with the given Lehmer rank.
inline std::vector<int> unrank_permutation(std::uint64_t rank,
                                           std::vector<int> base) {
  const int m = static_cast<int>(base.size());
  std::vector<int> out;
  out.reserve(base.size());
  for (int k = m; k >= 1; --k) {
    const std::uint64_t f = factorial(k - 1);
    const auto pos = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(base[pos]);
    base.erase(base.begin() + static_cast<std::ptrdiff_t>(pos));
  }
  return out;
}

// Lehmer rank of `perm`; lexicographic order matches rank order.
inline std::uint64_t rank_permutation(std::span<const int> perm) {
  const int m = static_cast<int>(perm.size());
  std::uint64_t rank = 0;
  for (int k = 0; k < m; ++k) {
    int smaller = 0;
    for (int j = k + 1; j < m; ++j)
      if (perm[j] < perm[k]) ++smaller;
    rank += static_cast<std::uint64_t>(smaller) * factorial(m - 1 - k);
  }
  return rank;
}

// All permutations of 1..n as assignments, in lexicographic order.
inline std::vector<Assignment> all_assignments(int n) {
  detail::require(n >= 1 && n <= 10, "assignment enumeration supports n <= 10");
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  std::vector<Assignment> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

inline std::vector<Assignment> all_derangements(int n) {
  std::vector<Assignment> out;
  for (auto& a : all_assignments(n))
    if (is_derangement(a)) out.push_back(std::move(a));
  return out;
}

enum class SpaceKind {
  Canonical,  // own worker last
  Full,
};

inline const char* to_string(SpaceKind k) {
  return k == SpaceKind::Canonical ? "canonical" : "full";
}

class ProfileSpace {
 public:
  static constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();

  ProfileSpace(int n, SpaceKind kind) : n_(n), kind_(kind) {
    detail::require(n >= 2 && n <= 20, "profile space supports 2 <= n <= 20");
    radix_ = factorial(kind == SpaceKind::Canonical ? n - 1 : n);
    size_ = 1;
    for (int i = 0; i < n; ++i) {
      if (size_ > kUnbounded / radix_) {
        size_ = kUnbounded;
        break;
      }
      size_ *= radix_;
    }
  }

  int n() const noexcept { return n_; }
  SpaceKind kind() const noexcept { return kind_; }
  std::uint64_t radix() const noexcept { return radix_; }

  // Number of profiles; kUnbounded when it does not fit in 64 bits.
  std::uint64_t size() const noexcept { return size_; }

  // Workers ranked by division i's digit, sorted ascending.
  std::vector<int> base(Division i) const {
    std::vector<int> b;
    for (int w = 1; w <= n_; ++w)
      if (kind_ == SpaceKind::Full || w != i) b.push_back(w);
    return b;
  }

  std::vector<int> order_for(Division i, std::uint64_t digit) const {
    auto order = unrank_permutation(digit, base(i));
    if (kind_ == SpaceKind::Canonical) order.push_back(i);
    return order;
  }

  bool contains_order(Division i, std::span<const int> order) const {
    if (!is_permutation_of(order, n_)) return false;
    return kind_ == SpaceKind::Full || order.back() == i;
  }

  std::uint64_t digit_of(Division i, std::span<const int> order) const {
    detail::require(contains_order(i, order),
                    "order of division " + std::to_string(i) + " is outside the " +
                        to_string(kind_) + " space");
    if (kind_ == SpaceKind::Full) return rank_permutation(order);
    return rank_permutation(order.first(order.size() - 1));
  }

  std::uint64_t digit(std::uint64_t index, Division i) const {
    for (int k = 1; k < i; ++k) index /= radix_;
    return index % radix_;
  }

  std::uint64_t with_digit(std::uint64_t index, Division i,
                           std::uint64_t value) const {
    std::uint64_t weight = 1;
    for (int k = 1; k < i; ++k) weight *= radix_;
    return index - digit(index, i) * weight + value * weight;
  }

  std::vector<std::uint64_t> digits(std::uint64_t index) const {
    std::vector<std::uint64_t> d(static_cast<std::size_t>(n_));
    for (int k = 0; k < n_; ++k) {
      d[k] = index % radix_;
      index /= radix_;
    }
    return d;
  }

  PreferenceProfile profile_from_digits(const std::vector<std::uint64_t>& d) const {
    std::vector<std::vector<int>> orders;
    orders.reserve(static_cast<std::size_t>(n_));
    for (Division i = 1; i <= n_; ++i) orders.push_back(order_for(i, d[i - 1]));
    return PreferenceProfile(orders);
  }

  PreferenceProfile profile_at(std::uint64_t index) const {
    detail::require(size_ != kUnbounded && index < size_, "profile index out of range");
    return profile_from_digits(digits(index));
  }

  // Requires the space to be indexable.
  std::uint64_t index_of(const PreferenceProfile& p) const {
    detail::require(p.size() == n_, "profile size does not match the space");
    if (size_ == kUnbounded) throw BoundExceeded("profile space too large to index");
    std::uint64_t index = 0;
    for (Division i = n_; i >= 1; --i) index = index * radix_ + digit_of(i, p.order(i));
    return index;
  }

  bool contains(const PreferenceProfile& p) const {
    if (p.size() != n_) return false;
    for (Division i = 1; i <= n_; ++i)
      if (!contains_order(i, p.order(i))) return false;
    return true;
  }

  std::vector<std::uint64_t> random_digits(Rng& rng) const {
    std::vector<std::uint64_t> d(static_cast<std::size_t>(n_));
    for (auto& x : d) x = rng.below(radix_);
    return d;
  }

  std::vector<int> random_order(Division i, Rng& rng) const {
    std::vector<int> b = base(i);
    rng.shuffle(std::span<int>(b));
    if (kind_ == SpaceKind::Canonical) b.push_back(i);
    return b;
  }

  PreferenceProfile random(Rng& rng) const {
    std::vector<std::vector<int>> orders;
    for (Division i = 1; i <= n_; ++i) orders.push_back(random_order(i, rng));
    return PreferenceProfile(orders);
  }

 private:
  int n_;
  SpaceKind kind_;
  std::uint64_t radix_ = 1;
  std::uint64_t size_ = 1;
};

}  // namespace cex
