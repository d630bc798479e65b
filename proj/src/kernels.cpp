#include "hyperbasis/kernels.hpp"

#include <omp.h>

#include <cstdint>
#include <optional>

#include "hyperbasis/errors.hpp"

namespace hyperbasis::kernels {

namespace {

void require_dims(std::span<const Hypervector> vs, std::size_t dim) {
  for (const auto& v : vs) {
    if (v.dim() != dim) throw DimensionMismatch(dim, v.dim());
  }
}

}  // namespace

Nearest nearest(const Hypervector& query, std::span<const Hypervector> candidates) {
  if (candidates.empty()) throw InvalidArgument("nearest over an empty candidate set");
  Nearest best{0, hamming_count(query, candidates[0])};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const std::size_t d = hamming_count(query, candidates[i]);
    if (d < best.distance) best = {i, d};
  }
  return best;
}

std::vector<std::size_t> hamming_counts(const Hypervector& query,
                                        std::span<const Hypervector> candidates) {
  require_dims(candidates, query.dim());
  std::vector<std::size_t> out(candidates.size());
  const auto n = static_cast<std::int64_t>(candidates.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = hamming_count(query, candidates[static_cast<std::size_t>(i)]);
  }
  return out;
}

std::vector<std::size_t> nearest_batch(std::span<const Hypervector> queries,
                                       std::span<const Hypervector> candidates) {
  if (candidates.empty()) throw InvalidArgument("nearest over an empty candidate set");
  require_dims(queries, candidates[0].dim());
  require_dims(candidates, candidates[0].dim());
  std::vector<std::size_t> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto q = static_cast<std::size_t>(i);
    out[q] = nearest(queries[q], candidates).index;
  }
  return out;
}

std::vector<double> pairwise_similarity(std::span<const Hypervector> vectors) {
  const std::size_t m = vectors.size();
  if (m == 0) return {};
  require_dims(vectors, vectors[0].dim());
  std::vector<double> out(m * m, 1.0);
  const auto rows = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    for (std::size_t j = i + 1; j < m; ++j) {
      const double s = similarity(vectors[i], vectors[j]);
      out[i * m + j] = s;
      out[j * m + i] = s;
    }
  }
  return out;
}

BundleAccumulator accumulate(std::span<const Hypervector> vectors, std::size_t dim) {
  require_dims(vectors, dim);
  BundleAccumulator total(dim);
  const auto n = static_cast<std::int64_t>(vectors.size());
#pragma omp parallel
  {
    BundleAccumulator local(dim);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) local.add(vectors[static_cast<std::size_t>(i)]);
#pragma omp critical(hyperbasis_accumulate_merge)
    total.merge(local);
  }
  return total;
}

std::vector<Hypervector> bind_each(std::span<const Hypervector> lhs,
                                   std::span<const Hypervector> rhs) {
  if (lhs.size() != rhs.size()) {
    throw InvalidArgument("bind_each: operand lists differ in length");
  }
  if (lhs.empty()) return {};
  require_dims(lhs, lhs[0].dim());
  require_dims(rhs, lhs[0].dim());
  std::vector<std::optional<Hypervector>> tmp(lhs.size());
  const auto n = static_cast<std::int64_t>(lhs.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    tmp[k].emplace(bind(lhs[k], rhs[k]));
  }
  std::vector<Hypervector> out;
  out.reserve(tmp.size());
  for (auto& v : tmp) out.push_back(std::move(*v));
  return out;
}

}  // namespace hyperbasis::kernels
