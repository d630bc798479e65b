#include "hyperbasis/markov.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/random.hpp"

namespace hyperbasis {

namespace {

void require_target(std::size_t d, std::size_t target) {
  if (d == 0) throw InvalidArgument("dimension must be >= 1");
  if (target < 1 || target > d) {
    throw InvalidArgument("absorbing state must satisfy 1 <= target <= d (target = " +
                          std::to_string(target) + ", d = " + std::to_string(d) + ")");
  }
}

}  // namespace

double expected_flip_count(std::size_t d, std::size_t target) {
  require_target(d, target);
  // Unknowns u(0)..u(target-1); row k has sub-diagonal a, diagonal b = 1,
  // super-diagonal c and right-hand side 1. Every row sums to zero
  // (a + b + c = 0), so the Thomas pivot b - a c'[k-1] is carried as
  // -c - a g[k-1] with g = 1 + c'. All terms stay non-negative and the sweep
  // never subtracts nearly equal numbers, which plain Thomas does once
  // target approaches d.
  const std::size_t n = target;
  const auto dd = static_cast<double>(d);
  std::vector<double> c_prime(n, 0.0);
  std::vector<double> rhs_prime(n, 0.0);
  double g = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const auto kk = static_cast<double>(k);
    const double a = k == 0 ? 0.0 : -kk / dd;
    const double c = k == 0 ? -1.0 : -(dd - kk) / dd;
    const double pivot = -c - a * g;
    c_prime[k] = k + 1 < n ? c / pivot : 0.0;
    g = -a * g / pivot;
    rhs_prime[k] = (1.0 - (k == 0 ? 0.0 : a * rhs_prime[k - 1])) / pivot;
  }
  double u = rhs_prime[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) u = rhs_prime[k] - c_prime[k] * u;
  return u;
}

WalkEstimate simulate_flip_count(std::size_t d, std::size_t target, std::size_t walks,
                                 std::uint64_t seed) {
  require_target(d, target);
  if (walks == 0) throw InvalidArgument("need at least one walk");

  double sum = 0.0;
  double sum_sq = 0.0;
  const auto n = static_cast<std::int64_t>(walks);
#pragma omp parallel for schedule(static) reduction(+ : sum, sum_sq)
  for (std::int64_t w = 0; w < n; ++w) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(w)));
    std::size_t k = 0;
    std::uint64_t steps = 0;
    while (k < target) {
      // Flip a uniformly chosen bit; the k already-flipped bits are
      // exchangeable, so only whether the choice lands among them matters.
      const std::uint64_t pick = rng() % d;
      k = pick < k ? k - 1 : k + 1;
      ++steps;
    }
    const auto s = static_cast<double>(steps);
    sum += s;
    sum_sq += s * s;
  }
  const auto count = static_cast<double>(walks);
  const double mean = sum / count;
  const double var = walks > 1 ? (sum_sq - count * mean * mean) / (count - 1.0) : 0.0;
  return {mean, std::sqrt(std::max(var, 0.0) / count), walks};
}

}  // namespace hyperbasis
