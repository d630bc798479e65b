#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hyperbasis {

// All randomness flows through this engine. A top-level task owns one master
// seed; independent child streams are obtained with derive_seed().
using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a, used to fold stream labels into seeds and to digest descriptors.
std::uint64_t fnv1a64(std::string_view text) noexcept;

std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept;

inline Rng make_rng(std::uint64_t master, std::string_view label) {
  return Rng(derive_seed(master, label));
}

// Uniform double in [0, 1) with 53 random bits; independent of the
// standard library's distribution implementations.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double standard_normal(Rng& rng);

}  // namespace hyperbasis
