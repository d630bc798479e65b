#pragma once

// Expected number of single random bit flips needed before a vector first
// sits at Hamming distance `target` from where it started. The chain state k
// is the current distance; a flip moves k -> k+1 with probability (d-k)/d and
// k -> k-1 with probability k/d, and the chain is absorbed at k = target.

#include <cstddef>
#include <cstdint>

namespace hyperbasis {

// u(0) from the tridiagonal system
//   u(0) = 1 + u(1)
//   u(k) = 1 + ((d-k) u(k+1) + k u(k-1)) / d   for 0 < k < target
//   u(target) = 0
// Requires 1 <= target <= d.
double expected_flip_count(std::size_t d, std::size_t target);

struct WalkEstimate {
  double mean_steps;
  double std_error;
  std::size_t walks;
};

// Monte-Carlo estimate of the same quantity by simulating the chain. Walk i
// uses its own stream derived from (seed, i), so the result does not depend
// on the number of threads.
WalkEstimate simulate_flip_count(std::size_t d, std::size_t target, std::size_t walks,
                                 std::uint64_t seed);

}  // namespace hyperbasis
