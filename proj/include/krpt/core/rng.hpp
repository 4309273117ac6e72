#ifndef KRPT_CORE_RNG_HPP
#define KRPT_CORE_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>

namespace krpt {

/// The one generator used everywhere: 64-bit Mersenne Twister.
using Rng = std::mt19937_64;

/// Seed for realization r of an ensemble: seed XOR r.
inline std::uint64_t realization_seed(std::uint64_t seed, std::size_t r) noexcept {
  return seed ^ static_cast<std::uint64_t>(r);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

}  // namespace krpt

#endif  // KRPT_CORE_RNG_HPP
