#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace nonet {

// SplitMix64 finalizer; a bijection on 64-bit words with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds an ordered tuple of tags into a seed. Distinct tuples give
// (practically) independent streams; used for per-trial and per-grid-point
// seeds so that streams never depend on evaluation order.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

// FNV-1a, for turning scenario names into seed tags.
std::uint64_t hash_name(std::string_view name);

// Top 53 bits as a double in [0, 1).
constexpr double unit_interval(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Counter-based uniform draw: a pure function of (key, counter).
inline double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  return unit_interval(mix64(key ^ mix64(counter)));
}

// Uniform in [0, 1) from a standard engine, portable across standard
// libraries (unlike std::uniform_real_distribution).
inline double uniform01(std::mt19937_64& engine) { return unit_interval(engine()); }

// Uniform integer in [0, n) by rejection, portable across standard libraries.
std::uint64_t uniform_below(std::mt19937_64& engine, std::uint64_t n);

// Box-Muller standard normal.
double standard_normal(std::mt19937_64& engine);

}  // namespace nonet
