#pragma once

// OpenMP-parallel batch kernels. Each has a serial counterpart in
// reference.hpp that the tests and benchmarks compare against.

#include <cstddef>
#include <span>
#include <vector>

#include "hyperbasis/hypervector.hpp"

namespace hyperbasis::kernels {

struct Nearest {
  std::size_t index;
  std::size_t distance;  // raw Hamming count
};

// Argmin of Hamming distance; ties resolve to the lowest index. Serial: meant
// to be called from inside an already-parallel loop.
Nearest nearest(const Hypervector& query, std::span<const Hypervector> candidates);

std::vector<std::size_t> hamming_counts(const Hypervector& query,
                                        std::span<const Hypervector> candidates);

// nearest(q, candidates).index for every query.
std::vector<std::size_t> nearest_batch(std::span<const Hypervector> queries,
                                       std::span<const Hypervector> candidates);

// Row-major m x m similarity matrix.
std::vector<double> pairwise_similarity(std::span<const Hypervector> vectors);

// Per-thread accumulators merged by count addition.
BundleAccumulator accumulate(std::span<const Hypervector> vectors, std::size_t dim);

// bind(lhs[i], rhs[i]) for every i.
std::vector<Hypervector> bind_each(std::span<const Hypervector> lhs,
                                   std::span<const Hypervector> rhs);

}  // namespace hyperbasis::kernels
