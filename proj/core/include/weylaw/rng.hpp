#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace weylaw {

/// Counter-based generator: the value at (seed, counter) depends on nothing
/// else, so disjoint counter ranges give worker-count independent streams.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t bits(std::uint64_t counter) const { return mix(key_ + mix(counter ^ 0x9e3779b97f4a7c15ULL)); }

  /// Uniform in [0, 1).
  double uniform(std::uint64_t counter) const { return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53; }

  /// Uniform integer in [lo, hi].
  long uniform_int(std::uint64_t counter, long lo, long hi) const {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<long>(bits(counter) % span);
  }

  /// Standard normal pair via Box-Muller from counters (c, c+1).
  std::pair<double, double> normal_pair(std::uint64_t counter) const {
    const double u1 = 1.0 - uniform(counter);
    const double u2 = uniform(counter + 1);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
  }

  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t key_;
};

}  // namespace weylaw
