#pragma once

#include <cstdint>
#include <random>

namespace mrlrc {

/// Seed-deterministic RNG: the mt19937_64 stream is fully specified by the
/// standard, and the bound reduction below is our own, so identical seeds give
/// identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, bound), bound > 0, by rejection.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t rem = (UINT64_MAX % bound + 1) % bound;
    const std::uint64_t limit = UINT64_MAX - rem;
    std::uint64_t r = eng_();
    while (rem != 0 && r > limit) r = eng_();
    return r % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace mrlrc
