#include "nonet/rng.hpp"

#include <cmath>
#include <numbers>

namespace nonet {

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t t : tags) {
    h = mix64(h ^ mix64(t + 0x632be59bd9b4e019ULL));
  }
  return h;
}

std::uint64_t hash_name(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x = engine();
  while (x >= limit) x = engine();
  return x % n;
}

double standard_normal(std::mt19937_64& engine) {
  double u1 = uniform01(engine);
  while (u1 <= 0.0) u1 = uniform01(engine);
  const double u2 = uniform01(engine);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace nonet
