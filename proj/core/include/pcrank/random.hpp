#pragma once

#include <cstdint>
#include <random>

namespace pcrank {

// SplitMix64 finalizer; a bijective 64-bit mix.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stable seed for stream `index` under `parent`.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent) ^ (index * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a,
                                    std::uint64_t b) noexcept {
  return derive_seed(derive_seed(parent, a), b);
}

// mt19937_64 output is fixed by the standard, unlike the std distributions,
// so the helpers below keep generated data identical across toolchains.
using Engine = std::mt19937_64;

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1].
inline double uniform01_open_low(Engine& eng) { return 1.0 - uniform01(eng); }

inline double uniform_real(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

// Uniform on {0, ..., bound - 1}; bound > 0. Rejection keeps it unbiased.
inline std::uint64_t uniform_index(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace pcrank
