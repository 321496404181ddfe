#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>

namespace freaco {

/// Seedable random stream with fixed, platform-independent transforms.
///
/// std::mt19937_64 output is specified by the standard, but the library's
/// distributions are not, so the transforms are written out here:
///   uniform01  = (next >> 11) * 2^-53                 one draw, in [0, 1)
///   normal     = sqrt(-2 ln(1 - u1)) * cos(2 pi u2)   two draws (Box-Muller)
///   categorical: u * sum(w), first index whose running sum exceeds it
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    const double u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Index drawn with probability weights[k] / sum(weights). Zero-weight
  /// entries are never returned when some weight is positive.
  std::size_t categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    const double target = uniform01() * total;
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      if (weights[k] <= 0.0) continue;
      acc += weights[k];
      last_positive = k;
      if (target < acc) return k;
    }
    return last_positive;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace freaco
