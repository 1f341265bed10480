#pragma once

// Seeded randomness with results that do not depend on the standard
// library implementation: mt19937_64 is fully specified, and bounded draws
// and shuffles are done here rather than through std distributions.

#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace cex {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  template <typename T>
  void shuffle(std::span<T> values) {
    for (std::size_t k = values.size(); k > 1; --k)
      std::swap(values[k - 1], values[below(k)]);
  }

 private:
  std::mt19937_64 engine_;
};

// Independent stream seed for item `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  rng.shuffle(std::span<int>(v));
  return v;
}

}  // namespace cex
