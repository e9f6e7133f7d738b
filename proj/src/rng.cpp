#include "banditgame/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "banditgame/errors.hpp"

namespace banditgame {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RngStream::RngStream(const Key& key) {
  std::uint64_t h = mix64(key.seed);
  h = mix64(h ^ key.coalition_mask);
  h = mix64(h ^ key.repetition);
  h = mix64(h ^ (static_cast<std::uint64_t>(key.agent) << 32));
  h = mix64(h ^ static_cast<std::uint64_t>(key.purpose));
  const std::uint64_t h2 = mix64(h);
  const std::uint64_t h3 = mix64(h2);
  std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                    static_cast<std::uint32_t>(h2), static_cast<std::uint32_t>(h2 >> 32),
                    static_cast<std::uint32_t>(h3), static_cast<std::uint32_t>(h3 >> 32)};
  gen_.seed(seq);
}

std::uint64_t RngStream::next_u64() { return gen_(); }

double RngStream::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  // Box-Muller without caching the second deviate: a fixed two-word
  // cost per draw keeps replay exact.
  const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::below(std::uint64_t bound) {
  if (bound == 0) throw InvalidInputError("RngStream::below: bound must be positive");
  // Rejection sampling over the largest multiple of bound.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = next_u64();
  while (x >= limit) x = next_u64();
  return x % bound;
}

}  // namespace banditgame
