#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cubadv/rng.hpp"

namespace cubadv {

/// Cubature node set: n ≥ 1 points in R^d, stored row-major.
class PointSet {
 public:
  /// `coords` holds n*dim values, point after point. Throws InputError when
  /// dim == 0, the set is empty, the length is not a multiple of dim, or a
  /// coordinate is not finite.
  PointSet(std::size_t dim, std::vector<double> coords);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return coords_.size() / dim_; }

  std::span<const double> operator[](std::size_t i) const noexcept {
    return {coords_.data() + i * dim_, dim_};
  }

  std::span<const double> coords() const noexcept { return coords_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::size_t dim_;
  std::vector<double> coords_;
};

/// Closed Euclidean ball.
struct Ball {
  std::vector<double> center;
  double radius = 0.0;

  Ball(std::vector<double> center, double radius);

  bool contains(std::span<const double> x) const;
};

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept;

/// min_i ||x - x_i||_2 by exhaustive scan.
double dist_to_set(std::span<const double> x, const PointSet& points);

enum class Scale { kLinear, kLog };

/// ln V_d for the unit ball, V_d = π^{d/2} / Γ(1 + d/2).
double log_unit_ball_volume(std::size_t dim);

/// R^d V_d, or its natural log. Both paths go through log-Γ.
double ball_volume(std::size_t dim, double radius, Scale scale = Scale::kLinear);

/// (δ sqrt(2πe))^d, which strictly dominates ball_volume(d, δ sqrt(d)).
double ball_volume_upper_bound(std::size_t dim, double delta);

/// (2 / sqrt(d)) V_{d-1} / V_d; at most 1 for every d ≥ 2.
double slice_ratio(std::size_t dim);

/// Uniform direction on S^{d-1}, d = out.size().
void sample_unit_sphere(Rng& rng, std::span<double> out);

/// Uniform point in the closed origin-centered ball of the given radius;
/// d = out.size(). The result norm never exceeds `radius`.
void sample_ball(double radius, Rng& rng, std::span<double> out);

std::vector<double> sample_ball(std::size_t dim, double radius, Rng& rng);

}  // namespace cubadv
