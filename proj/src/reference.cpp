#include "hyperbasis/reference.hpp"

#include <string>

#include "hyperbasis/errors.hpp"

namespace hyperbasis::reference {

namespace {

Hypervector from_bits(const std::string& bits) { return Hypervector::from_string(bits); }

}  // namespace

Hypervector bind(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::string bits(a.dim(), '0');
  for (std::size_t j = 0; j < a.dim(); ++j) {
    if (a.bit(j) != b.bit(j)) bits[j] = '1';
  }
  return from_bits(bits);
}

Hypervector bundle(std::span<const Hypervector> operands, const Hypervector& tie_breaker) {
  if (operands.empty()) throw InvalidArgument("bundle of an empty operand list");
  const std::size_t dim = tie_breaker.dim();
  std::string bits(dim, '0');
  for (std::size_t j = 0; j < dim; ++j) {
    long votes = 0;
    for (const auto& op : operands) {
      if (op.dim() != dim) throw DimensionMismatch(dim, op.dim());
      votes += op.bit(j) ? 1 : -1;
    }
    const bool set = votes == 0 ? tie_breaker.bit(j) : votes > 0;
    if (set) bits[j] = '1';
  }
  return from_bits(bits);
}

Hypervector permute(const Hypervector& a, std::int64_t shift) {
  const auto d = static_cast<std::int64_t>(a.dim());
  std::string bits(a.dim(), '0');
  for (std::int64_t j = 0; j < d; ++j) {
    const std::int64_t target = (((j + shift) % d) + d) % d;
    if (a.bit(static_cast<std::size_t>(j))) bits[static_cast<std::size_t>(target)] = '1';
  }
  return from_bits(bits);
}

std::size_t hamming_count(const Hypervector& a, const Hypervector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch(a.dim(), b.dim());
  std::size_t n = 0;
  for (std::size_t j = 0; j < a.dim(); ++j) n += a.bit(j) != b.bit(j) ? 1 : 0;
  return n;
}

std::vector<std::size_t> nearest_batch(std::span<const Hypervector> queries,
                                       std::span<const Hypervector> candidates) {
  if (candidates.empty()) throw InvalidArgument("nearest over an empty candidate set");
  std::vector<std::size_t> out;
  out.reserve(queries.size());
  for (const auto& q : queries) {
    std::size_t best = 0;
    std::size_t best_d = reference::hamming_count(q, candidates[0]);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const std::size_t d = reference::hamming_count(q, candidates[i]);
      if (d < best_d) {
        best = i;
        best_d = d;
      }
    }
    out.push_back(best);
  }
  return out;
}

std::vector<double> pairwise_similarity(std::span<const Hypervector> vectors) {
  const std::size_t m = vectors.size();
  std::vector<double> out(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      out[i * m + j] = 1.0 - static_cast<double>(reference::hamming_count(vectors[i], vectors[j])) /
                                 static_cast<double>(vectors[i].dim());
    }
  }
  return out;
}

BundleAccumulator accumulate(std::span<const Hypervector> vectors, std::size_t dim) {
  BundleAccumulator acc(dim);
  for (const auto& v : vectors) acc.add(v);
  return acc;
}

}  // namespace hyperbasis::reference
