#include "cubadv/rng.hpp"

#include <bit>

namespace cubadv {
namespace {

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream) : engine_(seeded_engine(seed, stream)) {}

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t combine_seeds(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

std::uint64_t point_stream(std::span<const double> x) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ x.size();
  for (double c : x) {
    // +0.0 and -0.0 name the same point.
    const double canonical = (c == 0.0) ? 0.0 : c;
    h = combine_seeds(h, std::bit_cast<std::uint64_t>(canonical));
  }
  return h;
}

}  // namespace cubadv
