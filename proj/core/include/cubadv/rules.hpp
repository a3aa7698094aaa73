#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "cubadv/geometry.hpp"

namespace cubadv {

/// Largest node count midpoint_product will build.
inline constexpr std::size_t kMaxGridPoints = 10'000'000;

/// The m^d centers of the subcubes of [0,1]^d: coordinates (2j-1)/(2m).
PointSet midpoint_product(std::size_t d, std::size_t m);

/// n i.i.d. uniform points in [0,1]^d.
PointSet uniform_random(std::size_t d, std::size_t n, std::uint64_t seed);

/// Point-set CSV: a `d=<int>` header, then one point per line as d
/// comma-separated decimals. Blank lines and lines starting with '#' are
/// ignored. Throws ParseError naming the offending line.
PointSet parse_points(std::istream& in);
PointSet load_points(const std::filesystem::path& path);

/// Writes shortest round-trip decimals, so load(save(P)) == P bit for bit.
void write_points(std::ostream& out, const PointSet& points);
void save_points(const std::filesystem::path& path, const PointSet& points);

struct RuleSpec {
  enum class Kind { kMidpoint, kUniformRandom, kFile };

  Kind kind = Kind::kMidpoint;
  std::size_t d = 0;
  std::size_t size = 0;  // m for midpoint, n for uniform_random
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> path;
};

/// Parses "midpoint:<m>" or "random:<n>".
RuleSpec parse_rule(std::string_view text, std::size_t d, std::uint64_t seed);

RuleSpec file_rule(std::filesystem::path path);

PointSet build_points(const RuleSpec& spec);

std::string rule_label(const RuleSpec& spec);

}  // namespace cubadv
