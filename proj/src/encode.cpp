#include "hyperbasis/encode.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/kernels.hpp"
#include "hyperbasis/text.hpp"

namespace hyperbasis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(double x, std::string_view what) {
  if (!std::isfinite(x)) {
    throw InvalidArgument(std::string(what) + " must be finite, got " + text::format_double(x));
  }
}

// |alpha - beta| measured the short way round the circle.
double circular_gap(double alpha, double beta) {
  const double g = std::fabs(wrap_angle(alpha) - wrap_angle(beta));
  return std::min(g, kTwoPi - g);
}

}  // namespace

ScalarQuantizer::ScalarQuantizer(double a, double b, BasisSet basis)
    : a_(a), b_(b), basis_(std::move(basis)) {
  require_finite(a, "quantizer lower bound");
  require_finite(b, "quantizer upper bound");
  if (!(b > a)) throw InvalidArgument("quantizer needs b > a");
  if (basis_.m < 2) throw InvalidArgument("quantizer needs at least 2 levels");
  if (basis_.vectors.size() != basis_.m) throw InvalidArgument("basis set is incomplete");
}

double ScalarQuantizer::grid_point(std::size_t i) const {
  const std::size_t m = basis_.m;
  if (i >= m) throw InvalidArgument("grid index out of range");
  if (i == m - 1) return b_;
  return a_ + static_cast<double>(i) * (b_ - a_) / static_cast<double>(m - 1);
}

std::size_t ScalarQuantizer::quantize(double x) const {
  require_finite(x, "scalar input");
  const std::size_t m = basis_.m;
  if (x <= a_) return 0;
  if (x >= b_) return m - 1;
  const double t = (x - a_) / (b_ - a_) * static_cast<double>(m - 1);
  const auto guess = static_cast<std::size_t>(std::floor(t));
  // Settle rounding at the cell boundary by comparing against the grid
  // points themselves.
  const std::size_t lo = guess == 0 ? 0 : guess - 1;
  const std::size_t hi = std::min(guess + 1, m - 1);
  std::size_t best = lo;
  double best_gap = std::fabs(x - grid_point(lo));
  for (std::size_t i = lo + 1; i <= hi; ++i) {
    const double gap = std::fabs(x - grid_point(i));
    if (gap < best_gap) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

double wrap_angle(double theta) {
  require_finite(theta, "angle");
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

AngleQuantizer::AngleQuantizer(BasisSet basis) : basis_(std::move(basis)) {
  if (basis_.m < 1) throw InvalidArgument("angle quantizer needs at least 1 bin");
  if (basis_.vectors.size() != basis_.m) throw InvalidArgument("basis set is incomplete");
}

double AngleQuantizer::bin_center(std::size_t i) const {
  if (i >= basis_.m) throw InvalidArgument("bin index out of range");
  return static_cast<double>(i) * kTwoPi / static_cast<double>(basis_.m);
}

std::size_t AngleQuantizer::quantize(double theta) const {
  const double w = wrap_angle(theta);
  const std::size_t m = basis_.m;
  const auto guess = static_cast<std::size_t>(std::floor(w / kTwoPi * static_cast<double>(m))) % m;
  const std::size_t candidates[3] = {(guess + m - 1) % m, guess, (guess + 1) % m};
  std::size_t best = candidates[0];
  double best_gap = circular_gap(w, bin_center(best));
  for (std::size_t c : candidates) {
    const double gap = circular_gap(w, bin_center(c));
    if (gap < best_gap || (gap == best_gap && c < best)) {
      best = c;
      best_gap = gap;
    }
  }
  return best;
}

LabelCodec::LabelCodec(ScalarQuantizer quantizer) : quantizer_(std::move(quantizer)) {}

std::size_t LabelCodec::decode_index(const Hypervector& v) const {
  const auto& labels = quantizer_.basis().vectors;
  if (v.dim() != quantizer_.basis().d) throw DimensionMismatch(quantizer_.basis().d, v.dim());
  return kernels::nearest(v, labels).index;
}

Hypervector make_tie_breaker(std::size_t d, std::uint64_t seed) {
  auto rng = make_rng(seed, "tie-breaker");
  return Hypervector::random(d, rng);
}

SymbolTable::SymbolTable(std::vector<std::string> alphabet, std::size_t d, std::uint64_t seed)
    : alphabet_(std::move(alphabet)),
      basis_(generate_random_set(alphabet_.empty() ? 1 : alphabet_.size(), d, seed)),
      tie_breaker_(make_tie_breaker(d, seed)) {
  if (alphabet_.empty()) throw InvalidArgument("symbol table needs a non-empty alphabet");
  auto sorted = alphabet_;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw InvalidArgument("duplicate symbol '" + *dup + "' in alphabet");
}

std::size_t SymbolTable::index_of(std::string_view symbol) const {
  const auto it = std::find(alphabet_.begin(), alphabet_.end(), symbol);
  if (it == alphabet_.end()) {
    throw InvalidArgument("unknown symbol '" + std::string(symbol) + "'");
  }
  return static_cast<std::size_t>(it - alphabet_.begin());
}

const Hypervector& SymbolTable::lookup(std::string_view symbol) const {
  return basis_.vectors[index_of(symbol)];
}

Hypervector encode_sequence(const SymbolTable& table, std::span<const std::string> word) {
  if (word.empty()) throw InvalidArgument("cannot encode an empty word");
  std::vector<Hypervector> shifted;
  shifted.reserve(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) {
    shifted.push_back(permute(table.lookup(word[i]), static_cast<std::int64_t>(i + 1)));
  }
  return bundle(shifted, table.tie_breaker());
}

Hypervector encode_word(const SymbolTable& table, std::string_view word) {
  std::vector<std::string> symbols;
  symbols.reserve(word.size());
  for (char c : word) symbols.emplace_back(1, c);
  return encode_sequence(table, symbols);
}

Hypervector encode_record(const BasisSet& keys, std::span<const Hypervector> values,
                          const Hypervector& tie_breaker) {
  if (values.empty()) throw InvalidArgument("cannot encode an empty record");
  if (values.size() > keys.vectors.size()) {
    throw InvalidArgument("record has " + std::to_string(values.size()) + " fields but only " +
                          std::to_string(keys.vectors.size()) + " keys");
  }
  if (values.size() == 1) return bind(keys.vectors[0], values[0]);
  std::vector<Hypervector> bound;
  bound.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) bound.push_back(bind(keys.vectors[i], values[i]));
  BundleAccumulator acc(tie_breaker.dim());
  for (const auto& b : bound) acc.add(b);
  return acc.finalize(tie_breaker);
}

Hypervector encode_tuple(std::span<const Hypervector> values) {
  if (values.empty()) throw InvalidArgument("cannot encode an empty tuple");
  Hypervector out = values[0];
  for (std::size_t i = 1; i < values.size(); ++i) out = bind(out, values[i]);
  return out;
}

}  // namespace hyperbasis
