#pragma once

// Bit-packed binary hypervectors and the HDC algebra over them:
// bind (XOR), bundle (per-bit majority), permute (cyclic shift) and the
// normalized Hamming distance.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbasis/random.hpp"

namespace hyperbasis {

inline constexpr std::size_t kWordBits = 64;

constexpr std::size_t words_for(std::size_t dim) noexcept {
  return (dim + kWordBits - 1) / kWordBits;
}

// A d-dimensional vector in {0,1}^d packed little-endian into 64-bit words:
// bit j lives in word j/64 at position j%64. Bits past d in the last word are
// always zero. Immutable once built.
class Hypervector {
 public:
  // All-zero vector. Throws InvalidArgument for dim == 0.
  explicit Hypervector(std::size_t dim);

  // Takes ownership of packed words; tail bits beyond dim are cleared.
  Hypervector(std::size_t dim, std::vector<std::uint64_t> words);

  static Hypervector random(std::size_t dim, Rng& rng);
  static Hypervector ones(std::size_t dim);

  // Debug form: one '0' / '1' character per bit, bit 0 first.
  static Hypervector from_string(std::string_view bits);

  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const std::uint64_t> words() const noexcept { return words_; }
  [[nodiscard]] bool bit(std::size_t j) const;
  [[nodiscard]] std::size_t popcount() const noexcept;
  [[nodiscard]] Hypervector complement() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Hypervector&, const Hypervector&) = default;

 private:
  void mask_tail() noexcept;

  std::size_t dim_;
  std::vector<std::uint64_t> words_;
};

void require_same_dim(const Hypervector& a, const Hypervector& b);

Hypervector bind(const Hypervector& a, const Hypervector& b);

// Majority vote per position; ties (possible only for an even number of
// operands) take the tie_breaker's bit.
Hypervector bundle(std::span<const Hypervector> operands, const Hypervector& tie_breaker);

// result[(j + shift) mod d] = a[j]. Any shift is accepted and reduced mod d.
Hypervector permute(const Hypervector& a, std::int64_t shift);

std::size_t hamming_count(const Hypervector& a, const Hypervector& b);
double hamming_distance(const Hypervector& a, const Hypervector& b);
double similarity(const Hypervector& a, const Hypervector& b);

// Streaming form of bundle. counts[j] = (#ones) - (#zeros) seen at j.
// Single writer; combine per-task accumulators with merge().
class BundleAccumulator {
 public:
  explicit BundleAccumulator(std::size_t dim);

  void add(const Hypervector& v);
  void merge(const BundleAccumulator& other);

  // Throws InvalidArgument when nothing has been added.
  [[nodiscard]] Hypervector finalize(const Hypervector& tie_breaker) const;

  [[nodiscard]] std::size_t dim() const noexcept { return counts_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return n_added_; }
  [[nodiscard]] bool empty() const noexcept { return n_added_ == 0; }
  [[nodiscard]] std::span<const std::int32_t> counts() const noexcept { return counts_; }

  friend bool operator==(const BundleAccumulator&, const BundleAccumulator&) = default;

 private:
  std::vector<std::int32_t> counts_;
  std::size_t n_added_ = 0;
};

// Wire format: u64 dimension, then words_for(d) u64 words, all little-endian.
void write_hypervector(std::ostream& out, const Hypervector& v);
Hypervector read_hypervector(std::istream& in);

// Little-endian primitives shared by the binary containers.
void write_u64(std::ostream& out, std::uint64_t value);
std::uint64_t read_u64(std::istream& in);
void write_f64(std::ostream& out, double value);
double read_f64(std::istream& in);

}  // namespace hyperbasis
