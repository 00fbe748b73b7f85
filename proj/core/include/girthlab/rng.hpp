#pragma once

#include <cstdint>
#include <random>

namespace girthlab {

// Every randomized operation takes an explicit engine, so a seed pins the
// whole run. The helpers below replace std::*_distribution, whose draw
// algorithms are implementation-defined; with these, equal seeds produce
// equal streams on any conforming standard library.
using Rng = std::mt19937_64;

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

inline bool fair_coin(Rng& rng) { return (rng() & 1u) != 0u; }

// Uniform integer in [0, n), exactly uniform via rejection. n must be > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace girthlab
