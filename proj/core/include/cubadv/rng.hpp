#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace cubadv {

/// Seeded generator addressed by (seed, stream). Two instances built from the
/// same pair produce identical sequences; distinct streams are independent.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal() { return normal_(engine_); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// splitmix64 finalizer; used to derive child seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b) noexcept;

/// Stream index derived from the exact bit pattern of a point.
std::uint64_t point_stream(std::span<const double> x) noexcept;

}  // namespace cubadv
