#ifndef STACKMEC_RNG_HPP
#define STACKMEC_RNG_HPP

#include <cstdint>
#include <random>

namespace stackmec {

// Uniform doubles are derived from the raw 64-bit output instead of
// std::uniform_real_distribution, whose draw sequence is implementation
// defined. This keeps generated scenarios and solver traces identical
// across standard libraries.

/// Uniform double in [0, 1) from the top 53 bits of one generator draw.
inline double uniform_double(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

/// Uniform double in [lo, hi); returns lo exactly when the range is degenerate.
inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + uniform_double(gen) * (hi - lo);
}

/// Uniform integer in [0, n).
inline std::uint64_t uniform_index(std::mt19937_64& gen, std::uint64_t n) {
  // Rejection-free modulo is fine here: n is tiny relative to 2^64.
  return gen() % n;
}

/// splitmix64 finalizer, used to derive independent seed streams.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace stackmec

#endif  // STACKMEC_RNG_HPP
