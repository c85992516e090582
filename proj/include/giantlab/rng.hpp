#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace giantlab {

// All randomness in the library is derived from 64-bit seeds through the
// SplitMix64 finalizer, so streams are identical across platforms and
// standard-library implementations.
//
//   edge_uniform(seed, e) = to_unit(mix64(mix64(seed) + (e + 1) * GOLDEN))
//   trial_seed(master, i) = mix64(master ^ mix64(i + 1))

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Top 53 bits as a double in [0, 1).
constexpr double to_unit(std::uint64_t x) noexcept {
  return static_cast<double>(x >> 11) * 0x1.0p-53;
}

constexpr double edge_uniform(std::uint64_t seed, std::uint64_t edge) noexcept {
  return to_unit(mix64(mix64(seed) + (edge + 1) * kGolden));
}

constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return mix64(master ^ mix64(trial + 1));
}

/// Sequential generator (SplitMix64 stream) for builders.
class Rng {
public:
  explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += kGolden;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  double uniform() noexcept { return to_unit(next()); }

  /// Uniform integer in [0, bound); bound > 0. Rejection keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

private:
  std::uint64_t state_;
};

}  // namespace giantlab
