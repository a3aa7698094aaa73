#include "cubadv/geometry.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "cubadv/errors.hpp"

namespace cubadv {

PointSet::PointSet(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw InputError("point set dimension must be positive");
  if (coords_.empty()) throw InputError("point set must contain at least one point");
  if (coords_.size() % dim_ != 0) {
    throw InputError("coordinate count " + std::to_string(coords_.size()) +
                     " is not a multiple of dimension " + std::to_string(dim_));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw InputError("point coordinates must be finite");
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InputError("point set must contain at least one point");
  const std::size_t dim = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * dim);
  for (const auto& row : rows) {
    if (row.size() != dim) throw InputError("ragged point rows");
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointSet(dim, std::move(coords));
}

Ball::Ball(std::vector<double> c, double r) : center(std::move(c)), radius(r) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InputError("ball radius must be >= 0");
  for (double v : center) {
    if (!std::isfinite(v)) throw InputError("ball center must be finite");
  }
}

bool Ball::contains(std::span<const double> x) const {
  if (x.size() != center.size()) throw InputError("dimension mismatch");
  return std::sqrt(squared_distance(x, center)) <= radius;
}

double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double t = a[i] - b[i];
    s += t * t;
  }
  return s;
}

double dist_to_set(std::span<const double> x, const PointSet& points) {
  if (x.size() != points.dim()) {
    throw InputError("query has dimension " + std::to_string(x.size()) + ", point set has " +
                     std::to_string(points.dim()));
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i) {
    best = std::min(best, squared_distance(x, points[i]));
  }
  return std::sqrt(best);
}

double log_unit_ball_volume(std::size_t dim) {
  if (dim == 0) throw InputError("dimension must be positive");
  const double half = 0.5 * static_cast<double>(dim);
  return half * std::log(std::numbers::pi) - std::lgamma(1.0 + half);
}

double ball_volume(std::size_t dim, double radius, Scale scale) {
  if (dim == 0) throw InputError("dimension must be positive");
  if (!(radius >= 0.0)) throw InputError("radius must be >= 0");
  const double log_volume = (radius == 0.0)
                                ? -std::numeric_limits<double>::infinity()
                                : static_cast<double>(dim) * std::log(radius) +
                                      log_unit_ball_volume(dim);
  return scale == Scale::kLog ? log_volume : std::exp(log_volume);
}

double ball_volume_upper_bound(std::size_t dim, double delta) {
  if (dim == 0) throw InputError("dimension must be positive");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw InputError("delta must be > 0");
  const double log_two_pi_e = std::log(2.0 * std::numbers::pi) + 1.0;
  return std::exp(static_cast<double>(dim) * (std::log(delta) + 0.5 * log_two_pi_e));
}

double slice_ratio(std::size_t dim) {
  if (dim < 2) throw InputError("slice ratio needs d >= 2");
  return std::exp(std::log(2.0) - 0.5 * std::log(static_cast<double>(dim)) +
                  log_unit_ball_volume(dim - 1) - log_unit_ball_volume(dim));
}

void sample_unit_sphere(Rng& rng, std::span<double> out) {
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (double& v : out) {
      v = rng.normal();
      norm2 += v * v;
    }
  } while (norm2 == 0.0);
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : out) v *= inv;
}

void sample_ball(double radius, Rng& rng, std::span<double> out) {
  if (radius == 0.0) {
    for (double& v : out) v = 0.0;
    return;
  }
  sample_unit_sphere(rng, out);
  const double dim = static_cast<double>(out.size());
  const double r = radius * std::pow(rng.uniform(), 1.0 / dim);
  double norm2 = 0.0;
  for (double& v : out) {
    v *= r;
    norm2 += v * v;
  }
  // Rounding can push the norm a few ulps past the radius.
  while (norm2 > radius * radius) {
    norm2 = 0.0;
    for (double& v : out) {
      v *= 1.0 - 4.0 * std::numeric_limits<double>::epsilon();
      norm2 += v * v;
    }
  }
}

std::vector<double> sample_ball(std::size_t dim, double radius, Rng& rng) {
  if (dim == 0) throw InputError("dimension must be positive");
  if (!(radius >= 0.0)) throw InputError("radius must be >= 0");
  std::vector<double> out(dim);
  sample_ball(radius, rng, out);
  return out;
}

}  // namespace cubadv
