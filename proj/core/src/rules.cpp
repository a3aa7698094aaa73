#include "cubadv/rules.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "cubadv/errors.hpp"
#include "cubadv/rng.hpp"

namespace cubadv {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

PointSet midpoint_product(std::size_t d, std::size_t m) {
  if (d == 0 || m == 0) throw InputError("midpoint rule needs d >= 1 and m >= 1");
  std::size_t count = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (count > kMaxGridPoints / m) {
      throw InputError("midpoint rule m^d exceeds the " + std::to_string(kMaxGridPoints) +
                       "-point limit");
    }
    count *= m;
  }

  std::vector<double> coords;
  coords.reserve(count * d);
  std::vector<std::size_t> index(d, 0);
  const double denom = 2.0 * static_cast<double>(m);
  for (std::size_t p = 0; p < count; ++p) {
    for (std::size_t i = 0; i < d; ++i) {
      coords.push_back(static_cast<double>(2 * index[i] + 1) / denom);
    }
    // Odometer with the last coordinate fastest.
    for (std::size_t i = d; i-- > 0;) {
      if (++index[i] < m) break;
      index[i] = 0;
    }
  }
  return PointSet(d, std::move(coords));
}

PointSet uniform_random(std::size_t d, std::size_t n, std::uint64_t seed) {
  if (d == 0 || n == 0) throw InputError("random rule needs d >= 1 and n >= 1");
  Rng rng(seed, 0x52554c45ULL);
  std::vector<double> coords(n * d);
  for (double& c : coords) c = rng.uniform();
  return PointSet(d, std::move(coords));
}

PointSet parse_points(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  std::vector<double> coords;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text.front() == '#') continue;

    if (dim == 0) {
      if (!text.starts_with("d=")) throw ParseError(line_no, "expected header 'd=<int>'");
      const auto value = parse_number<std::size_t>(trim(text.substr(2)));
      if (!value || *value == 0) throw ParseError(line_no, "invalid dimension in header");
      dim = *value;
      continue;
    }

    std::size_t fields = 0;
    std::string_view rest = text;
    for (;;) {
      const auto comma = rest.find(',');
      const std::string_view field = trim(rest.substr(0, comma));
      const auto value = parse_number<double>(field);
      if (!value) throw ParseError(line_no, "non-numeric field '" + std::string(field) + "'");
      if (!std::isfinite(*value)) throw ParseError(line_no, "non-finite coordinate");
      if (++fields > dim) break;
      coords.push_back(*value);
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (fields != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) + " fields, found " +
                                    (fields > dim ? "more" : std::to_string(fields)));
    }
  }

  if (dim == 0) throw ParseError(line_no, "missing 'd=<int>' header");
  if (coords.empty()) throw ParseError(line_no, "no points");
  return PointSet(dim, std::move(coords));
}

PointSet load_points(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open point file " + path.string());
  return parse_points(in);
}

void write_points(std::ostream& out, const PointSet& points) {
  out << "d=" << points.dim() << '\n';
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto p = points[i];
    for (std::size_t j = 0; j < p.size(); ++j) {
      const auto res = std::to_chars(buf, buf + sizeof buf, p[j]);
      if (j) out << ',';
      out.write(buf, res.ptr - buf);
    }
    out << '\n';
  }
}

void save_points(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write point file " + path.string());
  write_points(out, points);
  if (!out) throw InputError("failed writing point file " + path.string());
}

RuleSpec parse_rule(std::string_view text, std::size_t d, std::uint64_t seed) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw InputError("rule must look like midpoint:<m> or random:<n>, got '" +
                     std::string(text) + "'");
  }
  const std::string_view kind = text.substr(0, colon);
  const auto size = parse_number<std::size_t>(text.substr(colon + 1));
  if (!size || *size == 0) throw InputError("rule size must be a positive integer");
  if (d == 0) throw InputError("rule needs d >= 1");

  RuleSpec spec;
  spec.d = d;
  spec.size = *size;
  if (kind == "midpoint") {
    spec.kind = RuleSpec::Kind::kMidpoint;
  } else if (kind == "random") {
    spec.kind = RuleSpec::Kind::kUniformRandom;
    spec.seed = seed;
  } else {
    throw InputError("unknown rule kind '" + std::string(kind) + "'");
  }
  return spec;
}

RuleSpec file_rule(std::filesystem::path path) {
  RuleSpec spec;
  spec.kind = RuleSpec::Kind::kFile;
  spec.path = std::move(path);
  return spec;
}

PointSet build_points(const RuleSpec& spec) {
  switch (spec.kind) {
    case RuleSpec::Kind::kMidpoint:
      return midpoint_product(spec.d, spec.size);
    case RuleSpec::Kind::kUniformRandom:
      if (!spec.seed) throw InputError("random rule needs a seed");
      return uniform_random(spec.d, spec.size, *spec.seed);
    case RuleSpec::Kind::kFile:
      if (!spec.path) throw InputError("file rule needs a path");
      return load_points(*spec.path);
  }
  throw InputError("unknown rule kind");
}

std::string rule_label(const RuleSpec& spec) {
  switch (spec.kind) {
    case RuleSpec::Kind::kMidpoint: return "midpoint:" + std::to_string(spec.size);
    case RuleSpec::Kind::kUniformRandom: return "random:" + std::to_string(spec.size);
    case RuleSpec::Kind::kFile: return "file:" + (spec.path ? spec.path->string() : "");
  }
  return "unknown";
}

}  // namespace cubadv
