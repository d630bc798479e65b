#include "hyperbasis/hypervector.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>

#include "hyperbasis/errors.hpp"

namespace hyperbasis {

namespace {

std::size_t checked_dim(std::size_t dim) {
  if (dim == 0) throw InvalidArgument("hypervector dimension must be >= 1");
  return dim;
}

constexpr std::uint64_t low_mask(std::size_t len) noexcept {
  return len >= kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << len) - 1;
}

// len (<= 64, <= dim) bits of the cyclic sequence a starting at start.
std::uint64_t read_window(std::span<const std::uint64_t> words, std::size_t dim,
                          std::size_t start, std::size_t len) noexcept {
  auto linear = [&](std::size_t from, std::size_t n) {
    const std::size_t idx = from / kWordBits;
    const std::size_t off = from % kWordBits;
    std::uint64_t v = words[idx] >> off;
    if (off != 0 && idx + 1 < words.size()) v |= words[idx + 1] << (kWordBits - off);
    return v & low_mask(n);
  };
  if (start + len <= dim) return linear(start, len);
  const std::size_t head = dim - start;
  return linear(start, head) | (linear(0, len - head) << head);
}

}  // namespace

Hypervector::Hypervector(std::size_t dim)
    : dim_(checked_dim(dim)), words_(words_for(dim), 0) {}

Hypervector::Hypervector(std::size_t dim, std::vector<std::uint64_t> words)
    : dim_(checked_dim(dim)), words_(std::move(words)) {
  if (words_.size() != words_for(dim_)) {
    throw InvalidArgument("expected " + std::to_string(words_for(dim_)) +
                          " words for dimension " + std::to_string(dim_) + ", got " +
                          std::to_string(words_.size()));
  }
  mask_tail();
}

Hypervector Hypervector::random(std::size_t dim, Rng& rng) {
  std::vector<std::uint64_t> words(words_for(checked_dim(dim)));
  for (auto& w : words) w = rng();
  return Hypervector(dim, std::move(words));
}

Hypervector Hypervector::ones(std::size_t dim) {
  return Hypervector(dim, std::vector<std::uint64_t>(words_for(checked_dim(dim)),
                                                     ~std::uint64_t{0}));
}

Hypervector Hypervector::from_string(std::string_view bits) {
  std::vector<std::uint64_t> words(words_for(checked_dim(bits.size())), 0);
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] == '1') {
      words[j / kWordBits] |= std::uint64_t{1} << (j % kWordBits);
    } else if (bits[j] != '0') {
      throw InvalidArgument("hypervector text may only contain '0' and '1'");
    }
  }
  return Hypervector(bits.size(), std::move(words));
}

bool Hypervector::bit(std::size_t j) const {
  if (j >= dim_) throw InvalidArgument("bit index out of range");
  return (words_[j / kWordBits] >> (j % kWordBits)) & 1U;
}

std::size_t Hypervector::popcount() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

Hypervector Hypervector::complement() const {
  std::vector<std::uint64_t> out(words_.size());
  std::transform(words_.begin(), words_.end(), out.begin(), [](auto w) { return ~w; });
  return Hypervector(dim_, std::move(out));
}

std::string Hypervector::to_string() const {
  std::string s(dim_, '0');
  for (std::size_t j = 0; j < dim_; ++j) {
    if ((words_[j / kWordBits] >> (j % kWordBits)) & 1U) s[j] = '1';
  }
  return s;
}

void Hypervector::mask_tail() noexcept {
  const std::size_t rem = dim_ % kWordBits;
  if (rem != 0) words_.back() &= low_mask(rem);
}

void require_same_dim(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
}

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  require_same_dim(a, b);
  const auto wa = a.words();
  const auto wb = b.words();
  std::vector<std::uint64_t> out(wa.size());
  for (std::size_t i = 0; i < wa.size(); ++i) out[i] = wa[i] ^ wb[i];
  return Hypervector(a.dim(), std::move(out));
}

Hypervector bundle(std::span<const Hypervector> operands, const Hypervector& tie_breaker) {
  if (operands.empty()) throw InvalidArgument("bundle of an empty operand list");
  for (const auto& op : operands) require_same_dim(op, tie_breaker);

  // Column-wise vote: for each bit position count the ones directly.
  const std::size_t n = operands.size();
  const std::size_t dim = tie_breaker.dim();
  const auto tie = tie_breaker.words();
  std::vector<std::uint64_t> out(tie.size(), 0);
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::size_t bits = std::min(kWordBits, dim - w * kWordBits);
    std::uint64_t word = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      std::size_t ones = 0;
      for (const auto& op : operands) ones += (op.words()[w] >> b) & 1U;
      const bool set = 2 * ones == n ? ((tie[w] >> b) & 1U) != 0 : 2 * ones > n;
      word |= static_cast<std::uint64_t>(set) << b;
    }
    out[w] = word;
  }
  return Hypervector(dim, std::move(out));
}

Hypervector permute(const Hypervector& a, std::int64_t shift) {
  const auto dim = static_cast<std::int64_t>(a.dim());
  const auto s = static_cast<std::size_t>(((shift % dim) + dim) % dim);
  if (s == 0) return a;
  const auto src = a.words();
  std::vector<std::uint64_t> out(src.size());
  for (std::size_t w = 0; w < out.size(); ++w) {
    const std::size_t first = w * kWordBits;
    const std::size_t len = std::min(kWordBits, a.dim() - first);
    // result[k] = a[(k - s) mod d]
    const std::size_t start = (first + a.dim() - s) % a.dim();
    out[w] = read_window(src, a.dim(), start, len);
  }
  return Hypervector(a.dim(), std::move(out));
}

std::size_t hamming_count(const Hypervector& a, const Hypervector& b) {
  require_same_dim(a, b);
  const auto wa = a.words();
  const auto wb = b.words();
  std::size_t n = 0;
  for (std::size_t i = 0; i < wa.size(); ++i) {
    n += static_cast<std::size_t>(std::popcount(wa[i] ^ wb[i]));
  }
  return n;
}

double hamming_distance(const Hypervector& a, const Hypervector& b) {
  return static_cast<double>(hamming_count(a, b)) / static_cast<double>(a.dim());
}

double similarity(const Hypervector& a, const Hypervector& b) {
  return 1.0 - hamming_distance(a, b);
}

BundleAccumulator::BundleAccumulator(std::size_t dim) : counts_(checked_dim(dim), 0) {}

void BundleAccumulator::add(const Hypervector& v) {
  if (v.dim() != counts_.size()) throw DimensionMismatch(counts_.size(), v.dim());
  const auto words = v.words();
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    const auto one = static_cast<std::int32_t>((words[j / kWordBits] >> (j % kWordBits)) & 1U);
    counts_[j] += 2 * one - 1;
  }
  ++n_added_;
}

void BundleAccumulator::merge(const BundleAccumulator& other) {
  if (other.dim() != dim()) throw DimensionMismatch(dim(), other.dim());
  for (std::size_t j = 0; j < counts_.size(); ++j) counts_[j] += other.counts_[j];
  n_added_ += other.n_added_;
}

Hypervector BundleAccumulator::finalize(const Hypervector& tie_breaker) const {
  if (n_added_ == 0) throw InvalidArgument("finalize on an empty accumulator");
  if (tie_breaker.dim() != dim()) throw DimensionMismatch(dim(), tie_breaker.dim());
  const auto tie = tie_breaker.words();
  std::vector<std::uint64_t> out(tie.size(), 0);
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    const std::size_t w = j / kWordBits;
    const std::size_t b = j % kWordBits;
    const bool set = counts_[j] == 0 ? ((tie[w] >> b) & 1U) != 0 : counts_[j] > 0;
    out[w] |= static_cast<std::uint64_t>(set) << b;
  }
  return Hypervector(dim(), std::move(out));
}

void write_u64(std::ostream& out, std::uint64_t value) {
  std::array<char, 8> buf{};
  for (std::size_t i = 0; i < 8; ++i) buf[i] = static_cast<char>((value >> (8 * i)) & 0xffU);
  out.write(buf.data(), buf.size());
}

std::uint64_t read_u64(std::istream& in) {
  std::array<char, 8> buf{};
  if (!in.read(buf.data(), buf.size())) throw DataError("unexpected end of binary stream");
  std::uint64_t value = 0;
  for (std::size_t i = 0; i < 8; ++i) {
    value |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
  }
  return value;
}

void write_f64(std::ostream& out, double value) {
  write_u64(out, std::bit_cast<std::uint64_t>(value));
}

double read_f64(std::istream& in) { return std::bit_cast<double>(read_u64(in)); }

void write_hypervector(std::ostream& out, const Hypervector& v) {
  write_u64(out, v.dim());
  for (auto w : v.words()) write_u64(out, w);
}

Hypervector read_hypervector(std::istream& in) {
  const std::uint64_t dim = read_u64(in);
  if (dim == 0 || dim > (std::uint64_t{1} << 40)) {
    throw DataError("corrupt hypervector header: dimension " + std::to_string(dim));
  }
  std::vector<std::uint64_t> words(words_for(dim));
  for (auto& w : words) w = read_u64(in);
  if (dim % kWordBits != 0 && (words.back() >> (dim % kWordBits)) != 0) {
    throw DataError("corrupt hypervector: bits set beyond dimension");
  }
  return Hypervector(dim, std::move(words));
}

}  // namespace hyperbasis
