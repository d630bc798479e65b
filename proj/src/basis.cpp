#include "hyperbasis/basis.hpp"

#include <cfenv>
#include <cmath>
#include <istream>
#include <ostream>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/kernels.hpp"
#include "hyperbasis/text.hpp"

namespace hyperbasis {

namespace {

constexpr std::string_view kBasisMagic = "HBBASIS1";
constexpr std::string_view kBasisStream = "basis";

void require_positive(std::size_t m, std::size_t d) {
  if (m == 0) throw InvalidArgument("basis set size m must be >= 1");
  if (d == 0) throw InvalidArgument("hypervector dimension must be >= 1");
}

void require_unit_interval(double r) {
  if (!(r >= 0.0 && r <= 1.0)) {
    throw InvalidArgument("r must lie in [0, 1], got " + text::format_double(r));
  }
}

std::vector<double> uniform_filter(std::size_t d, Rng& rng) {
  std::vector<double> phi(d);
  for (auto& p : phi) p = uniform01(rng);
  return phi;
}

// Bit k from `low` where phi[k] < tau, else from `high`.
Hypervector interpolate(const Hypervector& low, const Hypervector& high,
                        const std::vector<double>& phi, double tau) {
  const auto lo = low.words();
  const auto hi = high.words();
  std::vector<std::uint64_t> out(lo.size());
  for (std::size_t w = 0; w < out.size(); ++w) {
    std::uint64_t mask = 0;
    const std::size_t base = w * kWordBits;
    const std::size_t bits = std::min(kWordBits, phi.size() - base);
    for (std::size_t b = 0; b < bits; ++b) {
      mask |= static_cast<std::uint64_t>(phi[base + b] < tau) << b;
    }
    out[w] = (lo[w] & mask) | (hi[w] & ~mask);
  }
  return Hypervector(low.dim(), std::move(out));
}

std::vector<Hypervector> level_vectors(std::size_t m, std::size_t d, Rng& rng) {
  std::vector<Hypervector> out;
  out.reserve(m);
  const Hypervector first = Hypervector::random(d, rng);
  const Hypervector last = Hypervector::random(d, rng);
  const auto phi = uniform_filter(d, rng);
  out.push_back(first);
  for (std::size_t l = 2; l < m; ++l) {
    const double tau = static_cast<double>(m - l) / static_cast<double>(m - 1);
    out.push_back(interpolate(first, last, phi, tau));
  }
  out.push_back(last);
  return out;
}

std::vector<Hypervector> interpolated_level_vectors(std::size_t m, std::size_t d, double r,
                                                    Rng& rng) {
  const std::size_t n = interpolation_transitions(m, r);
  std::vector<Hypervector> out;
  out.reserve(m);
  out.push_back(Hypervector::random(d, rng));
  while (out.size() < m) {
    const Hypervector start = out.back();
    const Hypervector end = Hypervector::random(d, rng);
    const auto phi = uniform_filter(d, rng);
    for (std::size_t p = 1; p <= n && out.size() < m; ++p) {
      if (p == n) {
        out.push_back(end);
      } else {
        const double tau = static_cast<double>(n - p) / static_cast<double>(n);
        out.push_back(interpolate(start, end, phi, tau));
      }
    }
  }
  return out;
}

// Phase 2 of the circular construction on an even-sized set.
CircularConstruction close_circle(std::vector<Hypervector> phase1, std::size_t m,
                                  std::size_t d, double r, std::uint64_t seed) {
  const std::size_t half = m / 2;
  CircularConstruction out;
  out.transitions.reserve(half);
  for (std::size_t k = 0; k < half; ++k) {
    out.transitions.push_back(bind(phase1[k], phase1[k + 1]));
  }
  auto& vectors = phase1;
  vectors.reserve(m);
  for (std::size_t i = half + 1; i < m; ++i) {
    vectors.push_back(bind(vectors[i - 1], out.transitions[i - half - 1]));
  }
  out.basis = BasisSet{BasisKind::Circular, m, d, r, seed, std::move(vectors)};
  return out;
}

void require_circular_size(std::size_t m) {
  // Even sizes start at 4; odd sizes go through the 2m construction.
  if (m < 3) {
    throw InvalidArgument("circular sets need m >= 4 (or odd m >= 3), got m = " +
                          std::to_string(m));
  }
}

}  // namespace

std::string_view to_string(BasisKind kind) noexcept {
  switch (kind) {
    case BasisKind::Random: return "random";
    case BasisKind::Level: return "level";
    case BasisKind::Circular: return "circular";
  }
  return "unknown";
}

BasisKind parse_basis_kind(std::string_view text) {
  const auto t = text::lower(text::trim(text));
  if (t == "random") return BasisKind::Random;
  if (t == "level") return BasisKind::Level;
  if (t == "circular") return BasisKind::Circular;
  throw InvalidArgument("unknown basis kind '" + std::string(text) +
                        "' (expected random, level or circular)");
}

std::size_t interpolation_transitions(std::size_t m, double r) {
  require_unit_interval(r);
  if (m < 2) throw InvalidArgument("interpolated sets need m >= 2");
  const double n = r + (1.0 - r) * static_cast<double>(m - 1);
  const int saved = std::fegetround();
  std::fesetround(FE_TONEAREST);
  const double rounded = std::nearbyint(n);
  std::fesetround(saved);
  return rounded < 1.0 ? 1 : static_cast<std::size_t>(rounded);
}

BasisSet generate_random_set(std::size_t m, std::size_t d, std::uint64_t seed) {
  require_positive(m, d);
  auto rng = make_rng(seed, kBasisStream);
  BasisSet set{BasisKind::Random, m, d, 1.0, seed, {}};
  set.vectors.reserve(m);
  for (std::size_t i = 0; i < m; ++i) set.vectors.push_back(Hypervector::random(d, rng));
  return set;
}

BasisSet generate_level_set(std::size_t m, std::size_t d, std::uint64_t seed) {
  require_positive(m, d);
  if (m < 2) throw InvalidArgument("level sets need m >= 2");
  auto rng = make_rng(seed, kBasisStream);
  return BasisSet{BasisKind::Level, m, d, 0.0, seed, level_vectors(m, d, rng)};
}

BasisSet generate_level_set_interpolated(std::size_t m, std::size_t d, double r,
                                         std::uint64_t seed) {
  require_positive(m, d);
  if (m < 2) throw InvalidArgument("level sets need m >= 2");
  require_unit_interval(r);
  auto rng = make_rng(seed, kBasisStream);
  return BasisSet{BasisKind::Level, m, d, r, seed, interpolated_level_vectors(m, d, r, rng)};
}

CircularConstruction generate_circular_construction(std::size_t m, std::size_t d, double r,
                                                    std::uint64_t seed) {
  require_positive(m, d);
  require_circular_size(m);
  require_unit_interval(r);
  if (m % 2 == 1) {
    auto full = generate_circular_construction(2 * m, d, r, seed);
    std::vector<Hypervector> odd;
    odd.reserve(m);
    for (std::size_t i = 0; i < 2 * m; i += 2) odd.push_back(full.basis.vectors[i]);
    full.basis.vectors = std::move(odd);
    full.basis.m = m;
    return full;
  }
  auto rng = make_rng(seed, kBasisStream);
  return close_circle(interpolated_level_vectors(m / 2 + 1, d, r, rng), m, d, r, seed);
}

BasisSet generate_circular_set(std::size_t m, std::size_t d, double r, std::uint64_t seed) {
  return generate_circular_construction(m, d, r, seed).basis;
}

BasisSet generate_circular_set(std::size_t m, std::size_t d, std::uint64_t seed) {
  require_positive(m, d);
  require_circular_size(m);
  if (m % 2 == 1) {
    const auto full = generate_circular_set(2 * m, d, seed);
    BasisSet out{BasisKind::Circular, m, d, 0.0, seed, {}};
    for (std::size_t i = 0; i < 2 * m; i += 2) out.vectors.push_back(full.vectors[i]);
    return out;
  }
  auto rng = make_rng(seed, kBasisStream);
  return close_circle(level_vectors(m / 2 + 1, d, rng), m, d, 0.0, seed).basis;
}

BasisSet generate_basis(BasisKind kind, std::size_t m, std::size_t d, double r,
                        std::uint64_t seed) {
  switch (kind) {
    case BasisKind::Random: return generate_random_set(m, d, seed);
    case BasisKind::Level: return generate_level_set_interpolated(m, d, r, seed);
    case BasisKind::Circular: return generate_circular_set(m, d, r, seed);
  }
  throw InvalidArgument("unknown basis kind");
}

double angular_distance(double alpha, double beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw InvalidArgument("angular_distance: angles must be finite");
  }
  return 0.5 * (1.0 - std::cos(alpha - beta));
}

SimilarityMatrix similarity_matrix(const BasisSet& basis) {
  return SimilarityMatrix{basis.vectors.size(), kernels::pairwise_similarity(basis.vectors)};
}

void write_similarity_csv(std::ostream& out, const SimilarityMatrix& matrix) {
  out << "i,j,similarity\n";
  for (std::size_t i = 0; i < matrix.m; ++i) {
    for (std::size_t j = 0; j < matrix.m; ++j) {
      out << (i + 1) << ',' << (j + 1) << ',' << text::format_double(matrix(i, j)) << '\n';
    }
  }
}

void write_basis(std::ostream& out, const BasisSet& basis) {
  out.write(kBasisMagic.data(), static_cast<std::streamsize>(kBasisMagic.size()));
  write_u64(out, static_cast<std::uint64_t>(basis.kind));
  write_u64(out, basis.m);
  write_u64(out, basis.d);
  write_f64(out, basis.r);
  write_u64(out, basis.seed);
  for (const auto& v : basis.vectors) write_hypervector(out, v);
}

BasisSet read_basis(std::istream& in) {
  std::string magic(kBasisMagic.size(), '\0');
  if (!in.read(magic.data(), static_cast<std::streamsize>(magic.size())) || magic != kBasisMagic) {
    throw DataError("not a basis container (bad magic)");
  }
  BasisSet set;
  const auto kind = read_u64(in);
  if (kind > static_cast<std::uint64_t>(BasisKind::Circular)) {
    throw DataError("basis container: unknown kind " + std::to_string(kind));
  }
  set.kind = static_cast<BasisKind>(kind);
  set.m = read_u64(in);
  set.d = read_u64(in);
  set.r = read_f64(in);
  set.seed = read_u64(in);
  if (set.m > (std::uint64_t{1} << 32)) throw DataError("basis container: implausible m");
  set.vectors.reserve(set.m);
  for (std::size_t i = 0; i < set.m; ++i) {
    set.vectors.push_back(read_hypervector(in));
    if (set.vectors.back().dim() != set.d) {
      throw DataError("basis container: vector " + std::to_string(i) + " has wrong dimension");
    }
  }
  return set;
}

}  // namespace hyperbasis
