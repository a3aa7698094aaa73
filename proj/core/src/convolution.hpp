#pragma once

// Shared sampling core for the convolution estimators. Private to the core library.

#include <span>
#include <vector>

#include "cubadv/fooling.hpp"
#include "cubadv/geometry.hpp"
#include "cubadv/rng.hpp"
#include "cubadv/stats.hpp"

namespace cubadv::detail {

// Y = Y_1 + ... + Y_r with Y_j uniform in the ball of radius radii[j].
inline void draw_offset(std::span<const double> radii, Rng& rng, std::span<double> offset,
                        std::span<double> scratch) {
  for (double& v : offset) v = 0.0;
  for (double radius : radii) {
    sample_ball(radius, rng, scratch);
    for (std::size_t i = 0; i < offset.size(); ++i) offset[i] += scratch[i];
  }
}

template <class Base>
EvalResult sample_stencil(const Base& base, std::span<const double> radii,
                          std::span<const std::vector<double>> points,
                          std::span<const double> weights, std::size_t samples, Rng& rng) {
  const std::size_t dim = points.front().size();
  std::vector<double> offset(dim), scratch(dim), shifted(dim);
  RunningStats stats;
  for (std::size_t s = 0; s < samples; ++s) {
    draw_offset(radii, rng, offset, scratch);
    double acc = 0.0;
    for (std::size_t k = 0; k < points.size(); ++k) {
      const auto& p = points[k];
      for (std::size_t i = 0; i < dim; ++i) shifted[i] = p[i] + offset[i];
      acc += weights[k] * base(std::span<const double>(shifted));
    }
    stats.add(acc);
  }
  return {stats.mean(), stats.std_error(), false};
}

}  // namespace cubadv::detail
