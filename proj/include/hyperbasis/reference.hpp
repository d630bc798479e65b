#pragma once

// Serial, bit-at-a-time reference implementations. They share no code with
// the word-packed operations or the OpenMP kernels and exist so tests and
// benchmarks have an independent route to compare against.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hyperbasis/hypervector.hpp"

namespace hyperbasis::reference {

Hypervector bind(const Hypervector& a, const Hypervector& b);
Hypervector bundle(std::span<const Hypervector> operands, const Hypervector& tie_breaker);
Hypervector permute(const Hypervector& a, std::int64_t shift);
std::size_t hamming_count(const Hypervector& a, const Hypervector& b);

std::vector<std::size_t> nearest_batch(std::span<const Hypervector> queries,
                                       std::span<const Hypervector> candidates);
std::vector<double> pairwise_similarity(std::span<const Hypervector> vectors);
BundleAccumulator accumulate(std::span<const Hypervector> vectors, std::size_t dim);

}  // namespace hyperbasis::reference
