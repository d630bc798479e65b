#pragma once

// Basis-hypervector sets: random, level and circular, with the r knob that
// interpolates level/circular sets towards random ones.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbasis/hypervector.hpp"

namespace hyperbasis {

enum class BasisKind : std::uint8_t { Random = 0, Level = 1, Circular = 2 };

std::string_view to_string(BasisKind kind) noexcept;
BasisKind parse_basis_kind(std::string_view text);

struct BasisSet {
  BasisKind kind = BasisKind::Random;
  std::size_t m = 0;
  std::size_t d = 0;
  double r = 1.0;  // always 1.0 for Random
  std::uint64_t seed = 0;
  std::vector<Hypervector> vectors;

  [[nodiscard]] const Hypervector& operator[](std::size_t i) const { return vectors.at(i); }

  friend bool operator==(const BasisSet&, const BasisSet&) = default;
};

BasisSet generate_random_set(std::size_t m, std::size_t d, std::uint64_t seed);

// Interpolation-filter construction: L_1 and L_m uniform, one uniform filter
// Phi in [0,1]^d; level l copies bit k from L_1 when Phi[k] < tau_l and from
// L_m otherwise, with tau_l = (m - l) / (m - 1).
BasisSet generate_level_set(std::size_t m, std::size_t d, std::uint64_t seed);

// Concatenation of level subsets with n = round(r + (1 - r)(m - 1))
// transitions each (ties to even, clamped to >= 1). Each subset starts at the
// previous subset's last vector and draws a fresh far endpoint and filter.
// The final subset is truncated when n does not divide m - 1.
// r = 0 reproduces generate_level_set bit for bit.
BasisSet generate_level_set_interpolated(std::size_t m, std::size_t d, double r,
                                         std::uint64_t seed);

struct CircularConstruction {
  BasisSet basis;
  // T_k = C_k xor C_{k+1} over the phase-1 levels (of the size-2m set when m is odd).
  std::vector<Hypervector> transitions;
};

// Phase 1: C_1..C_{m/2+1} form a level set (interpolated per r).
// Phase 2: C_i = C_{i-1} xor T_{i-m/2-1} for i = m/2+2..m.
// Odd m: build the size-2m set and keep every other vector.
CircularConstruction generate_circular_construction(std::size_t m, std::size_t d, double r,
                                                    std::uint64_t seed);
BasisSet generate_circular_set(std::size_t m, std::size_t d, double r, std::uint64_t seed);

// Same construction with an Algorithm-1 phase 1 (no interpolation knob).
BasisSet generate_circular_set(std::size_t m, std::size_t d, std::uint64_t seed);

BasisSet generate_basis(BasisKind kind, std::size_t m, std::size_t d, double r,
                        std::uint64_t seed);

// Transitions per level subset for a set of m vectors.
std::size_t interpolation_transitions(std::size_t m, double r);

// rho(alpha, beta) = (1 - cos(alpha - beta)) / 2, in [0, 1].
double angular_distance(double alpha, double beta);

struct SimilarityMatrix {
  std::size_t m = 0;
  std::vector<double> values;  // row-major

  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const { return values[i * m + j]; }
};

SimilarityMatrix similarity_matrix(const BasisSet& basis);

// Header "i,j,similarity", one row per ordered pair, 1-based indices.
void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix);

// Container: magic, kind, m, d, r (IEEE-754 double), seed, then m packed vectors.
void write_basis(std::ostream& out, const BasisSet& basis);
BasisSet read_basis(std::istream& in);

}  // namespace hyperbasis
