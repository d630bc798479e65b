#pragma once

// Encoders from input-space values (reals, angles, symbols, records, tuples)
// to hypervectors. All indices are 0-based: level index l here is l+1 in the
// usual 1-based notation.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hyperbasis/basis.hpp"
#include "hyperbasis/hypervector.hpp"

namespace hyperbasis {

// m evenly spaced grid points xi_0 = a ... xi_{m-1} = b, each paired with one
// basis vector.
class ScalarQuantizer {
 public:
  ScalarQuantizer(double a, double b, BasisSet basis);

  // Nearest grid point; out-of-range values clamp; equidistant values go to
  // the lower index. Throws InvalidArgument for non-finite x.
  [[nodiscard]] std::size_t quantize(double x) const;
  [[nodiscard]] const Hypervector& encode(double x) const { return basis_.vectors[quantize(x)]; }

  [[nodiscard]] double grid_point(std::size_t i) const;
  [[nodiscard]] double lower() const noexcept { return a_; }
  [[nodiscard]] double upper() const noexcept { return b_; }
  [[nodiscard]] std::size_t levels() const noexcept { return basis_.m; }
  [[nodiscard]] const BasisSet& basis() const noexcept { return basis_; }

 private:
  double a_;
  double b_;
  BasisSet basis_;
};

// Bin i is centred on angle i * 2pi / m. Usually paired with a circular
// basis; random and level bases are accepted for baseline comparisons.
class AngleQuantizer {
 public:
  explicit AngleQuantizer(BasisSet basis);

  // Nearest bin centre on the circle (wrap-aware), ties to the lower index.
  [[nodiscard]] std::size_t quantize(double theta) const;
  [[nodiscard]] const Hypervector& encode(double theta) const {
    return basis_.vectors[quantize(theta)];
  }

  [[nodiscard]] double bin_center(std::size_t i) const;
  [[nodiscard]] std::size_t levels() const noexcept { return basis_.m; }
  [[nodiscard]] const BasisSet& basis() const noexcept { return basis_; }

 private:
  BasisSet basis_;
};

// Wraps any angle into [0, 2pi).
double wrap_angle(double theta);

// Invertible label encoding for regression: encode picks the nearest grid
// level; decode maps a (noisy) hypervector back to the grid value of the
// nearest label vector.
class LabelCodec {
 public:
  explicit LabelCodec(ScalarQuantizer quantizer);

  [[nodiscard]] std::size_t encode_index(double y) const { return quantizer_.quantize(y); }
  [[nodiscard]] const Hypervector& encode(double y) const { return quantizer_.encode(y); }
  [[nodiscard]] std::size_t decode_index(const Hypervector& v) const;
  [[nodiscard]] double decode(const Hypervector& v) const {
    return quantizer_.grid_point(decode_index(v));
  }

  [[nodiscard]] const ScalarQuantizer& quantizer() const noexcept { return quantizer_; }

 private:
  ScalarQuantizer quantizer_;
};

// One-to-one map from an alphabet onto a random basis, plus the tie-breaker
// used when bundling even-length words.
class SymbolTable {
 public:
  SymbolTable(std::vector<std::string> alphabet, std::size_t d, std::uint64_t seed);

  [[nodiscard]] const Hypervector& lookup(std::string_view symbol) const;
  [[nodiscard]] std::size_t index_of(std::string_view symbol) const;
  [[nodiscard]] const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  [[nodiscard]] const BasisSet& basis() const noexcept { return basis_; }
  [[nodiscard]] const Hypervector& tie_breaker() const noexcept { return tie_breaker_; }

 private:
  std::vector<std::string> alphabet_;
  BasisSet basis_;
  Hypervector tie_breaker_;
};

// bundle_i permute(phi(word[i]), i) with positions counted from 1.
Hypervector encode_sequence(const SymbolTable& table, std::span<const std::string> word);

// Each character is one symbol.
Hypervector encode_word(const SymbolTable& table, std::string_view word);

// bundle_i bind(keys[i], values[i]).
Hypervector encode_record(const BasisSet& keys, std::span<const Hypervector> values,
                          const Hypervector& tie_breaker);

// Left fold of bind; order does not matter.
Hypervector encode_tuple(std::span<const Hypervector> values);

// Deterministic tie-breaker for a given seed and dimension.
Hypervector make_tie_breaker(std::size_t d, std::uint64_t seed);

}  // namespace hyperbasis
