#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace knotmoney {

// std::mt19937_64 is fully specified by the standard; the distributions are
// not, so draws are derived here to keep outputs identical across toolchains.
using Rng = std::mt19937_64;

inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform integer in [0, n), n > 0, by rejection.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = n * (UINT64_MAX / n);  // largest multiple of n not exceeding 2^64-1
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

/// Uniform integer in [0, n] for any n including UINT64_MAX.
inline std::uint64_t uniform_upto(Rng& rng, std::uint64_t n) {
  return n == UINT64_MAX ? rng() : uniform_below(rng, n + 1);
}

template <class T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

}  // namespace knotmoney
