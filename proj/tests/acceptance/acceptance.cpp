// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails. Usage: acceptance <path-to-hyperbasis-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "hyperbasis/basis.hpp"
#include "hyperbasis/encode.hpp"
#include "hyperbasis/experiment.hpp"
#include "hyperbasis/hypervector.hpp"
#include "hyperbasis/learn.hpp"
#include "hyperbasis/markov.hpp"
#include "hyperbasis/random.hpp"
#include "hyperbasis/text.hpp"

namespace fs = std::filesystem;
using namespace hyperbasis;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kSeeds = 100;

struct Verdict {
  bool pass;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(double v, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

// ---- 1 ----------------------------------------------------------------

Verdict algebra() {
  const auto start = Clock::now();
  std::size_t failures = 0;
  std::size_t cases = 0;
  Rng rng(derive_seed(1, "acceptance-algebra"));
  for (std::size_t d : {64u, 10000u}) {
    for (int c = 0; c < 1000; ++c, ++cases) {
      const auto a = Hypervector::random(d, rng);
      const auto b = Hypervector::random(d, rng);
      const auto x = Hypervector::random(d, rng);
      if (!(bind(a, bind(a, b)) == b)) ++failures;
      if (hamming_count(bind(a, x), bind(b, x)) != hamming_count(a, b)) ++failures;

      const auto i = static_cast<std::int64_t>(rng() % (3 * d)) - static_cast<std::int64_t>(d);
      const auto j = static_cast<std::int64_t>(rng() % (3 * d)) - static_cast<std::int64_t>(d);
      if (!(permute(a, i + j) == permute(permute(a, i), j))) ++failures;
      if (!(permute(permute(a, i), -i) == a)) ++failures;

      const std::size_t n = 1 + rng() % 9;
      std::vector<Hypervector> ops;
      BundleAccumulator acc(d);
      for (std::size_t k = 0; k < n; ++k) {
        ops.push_back(Hypervector::random(d, rng));
        acc.add(ops.back());
      }
      if (!(acc.finalize(x) == bundle(ops, x))) ++failures;
    }
  }
  const double t = seconds_since(start);
  return {failures == 0 && t < 10.0,
          std::to_string(cases) + " cases, " + std::to_string(failures) + " failures, " + fmt(t, 3) + " s"};
}

// ---- 2-4 --------------------------------------------------------------

using Matrix = std::vector<std::vector<double>>;

Matrix mean_distances(std::size_t m, const std::function<BasisSet(std::uint64_t)>& gen,
                      const std::function<void(const BasisSet&)>& per_set = {}) {
  Matrix mean(m, std::vector<double>(m, 0.0));
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    const auto set = gen(s);
    if (per_set) per_set(set);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        mean[i][j] += hamming_distance(set[i], set[j]) / static_cast<double>(kSeeds);
      }
    }
  }
  return mean;
}

Verdict proposition_one() {
  const auto start = Clock::now();
  const auto mean = mean_distances(12, [](std::uint64_t s) { return generate_level_set(12, 10000, s); });
  double worst = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j, ++pairs) {
      worst = std::max(worst, std::fabs(mean[i][j] - static_cast<double>(j - i) / 22.0));
    }
  }
  const double t = seconds_since(start);
  return {worst <= 0.01 && pairs == 66 && t < 60.0,
          std::to_string(pairs) + " pairs, max |mean - (j-i)/22| = " + fmt(worst) + ", " + fmt(t, 3) + " s"};
}

Verdict circular_law() {
  std::size_t closure_failures = 0;
  const auto mean = mean_distances(
      12, [](std::uint64_t s) { return generate_circular_set(12, 10000, 0.0, s); },
      [&](const BasisSet& set) {
        const auto c = generate_circular_construction(12, 10000, 0.0, set.seed);
        Hypervector chain = c.basis[0];
        for (const auto& t : c.transitions) chain = bind(chain, t);
        if (!(chain == c.basis[6]) || !(c.basis == set)) ++closure_failures;
      });
  double worst = 0.0;
  double worst_half = 0.0;
  for (std::size_t i = 0; i < 12; ++i) {
    for (std::size_t j = i + 1; j < 12; ++j) {
      const double rho = angular_distance(kTwoPi * static_cast<double>(i) / 12.0, kTwoPi * static_cast<double>(j) / 12.0);
      worst = std::max(worst, std::fabs(mean[i][j] - 0.5 * rho));
      if (j - i == 6) worst_half = std::max(worst_half, std::fabs(mean[i][j] - 0.5));
    }
  }
  return {worst <= 0.01 && worst_half <= 0.01 && closure_failures == 0,
          "max |mean - rho/2| = " + fmt(worst) + ", half-turn max |mean - 0.5| = " + fmt(worst_half) +
              ", closure failures " + std::to_string(closure_failures) + "/" + std::to_string(kSeeds)};
}

Verdict interpolation_endpoints() {
  std::size_t mismatches = 0;
  for (std::uint64_t s = 0; s < kSeeds; ++s) {
    if (!(generate_level_set_interpolated(12, 10000, 0.0, s) == generate_level_set(12, 10000, s))) ++mismatches;
    if (!(generate_circular_set(12, 10000, 0.0, s) == generate_circular_set(12, 10000, s))) ++mismatches;
  }
  double worst = 0.0;
  for (auto kind : {BasisKind::Level, BasisKind::Circular}) {
    const auto mean = mean_distances(12, [&](std::uint64_t s) { return generate_basis(kind, 12, 10000, 1.0, s); });
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = i + 1; j < 12; ++j) worst = std::max(worst, std::fabs(mean[i][j] - 0.5));
    }
  }
  return {mismatches == 0 && worst <= 0.01,
          "r=0 mismatches " + std::to_string(mismatches) + "/" + std::to_string(2 * kSeeds) +
              ", r=1 max |mean - 0.5| = " + fmt(worst)};
}

// ---- 5 ----------------------------------------------------------------

Verdict markov_oracle() {
  const double exact = expected_flip_count(10, 2);
  const bool closed = std::fabs(exact - 20.0 / 9.0) <= 1e-9;
  bool mc_ok = true;
  std::string detail = "|u(0) - 20/9| = " + fmt(std::fabs(exact - 20.0 / 9.0), 3);
  for (std::size_t d : {10u, 100u, 200u}) {
    const auto est = simulate_flip_count(d, d / 2, 100000, derive_seed(5, d));
    const double u = expected_flip_count(d, d / 2);
    const double rel = std::fabs(est.mean_steps - u) / u;
    mc_ok = mc_ok && rel < 0.01;
    detail += ", d=" + std::to_string(d) + " rel " + fmt(rel, 3);
  }
  return {closed && mc_ok, detail};
}

// ---- 6 ----------------------------------------------------------------

Verdict exact_inversion() {
  Rng rng(derive_seed(6, "acceptance-inversion"));
  std::size_t exact = 0;
  for (int c = 0; c < 100; ++c) {
    // Default regime: d near 10000, at most 100 label levels. Far smaller
    // d / m makes neighbouring level vectors coincide.
    const std::size_t d = 8192 + rng() % 1809;
    const std::size_t m = 2 + rng() % 99;
    const double a = uniform01(rng) * 20.0 - 10.0;
    const double b = a + 0.1 + uniform01(rng) * 20.0;
    const LabelCodec codec(ScalarQuantizer(a, b, generate_level_set(m, d, rng())));
    const auto x = Hypervector::random(d, rng);
    const double y = a - 1.0 + uniform01(rng) * (b - a + 2.0);
    const std::vector<RegressionSample> one{{x, y}};
    const auto model = train_regressor(one, codec, rng());
    if (predict(model, x) == codec.quantizer().grid_point(codec.encode_index(y))) ++exact;
  }
  return {exact == 100, std::to_string(exact) + "/100 exact"};
}

// ---- 7-8 --------------------------------------------------------------

ExperimentConfig regression_config(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.synthetic = SyntheticSpec{SyntheticKind::Regression, 2000, 0.1, 8};
  cfg.dim = 10000;
  cfg.levels = 72;
  cfg.label_levels = 100;
  cfg.seed = seed;
  return cfg;
}

ExperimentConfig classification_config(std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.synthetic = SyntheticSpec{SyntheticKind::Classification, 4000, 0.3, 8};
  cfg.dim = 10000;
  cfg.levels = 72;
  cfg.seed = seed;
  return cfg;
}

double run_with(ExperimentConfig cfg, BasisKind kind) {
  cfg.kind = kind;
  const auto result = run_experiment(cfg);
  return result.metrics.mse ? *result.metrics.mse : *result.metrics.accuracy;
}

Verdict basis_ordering() {
  const auto start = Clock::now();
  std::size_t both = 0, vs_level = 0, vs_random = 0, cls_wins = 0;
  double circ_mse = 0.0, level_mse = 0.0, random_mse = 0.0, circ_acc = 0.0, random_acc = 0.0;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const auto reg = regression_config(s);
    const double c = run_with(reg, BasisKind::Circular);
    const double l = run_with(reg, BasisKind::Level);
    const double r = run_with(reg, BasisKind::Random);
    circ_mse += c / 10.0;
    level_mse += l / 10.0;
    random_mse += r / 10.0;
    vs_level += c < l;
    vs_random += c < r;
    both += c < l && c < r;

    const auto cls = classification_config(s);
    const double ca = run_with(cls, BasisKind::Circular);
    const double ra = run_with(cls, BasisKind::Random);
    circ_acc += ca / 10.0;
    random_acc += ra / 10.0;
    cls_wins += ca >= ra;
  }
  const double t = seconds_since(start);
  return {both >= 8 && cls_wins >= 8 && t < 300.0,
          "regression circular<level&random " + std::to_string(both) + "/10 (vs level " +
              std::to_string(vs_level) + ", vs random " + std::to_string(vs_random) + "; mean mse c/l/r " +
              fmt(circ_mse) + "/" + fmt(level_mse) + "/" + fmt(random_mse) + "), classification circular>=random " +
              std::to_string(cls_wins) + "/10 (mean acc " + fmt(circ_acc) + " vs " + fmt(random_acc) +
              ", bayes " + fmt(circular_bayes_accuracy(8, 0.3)) + "), " + fmt(t, 3) + " s"};
}

Verdict r_sweep() {
  const std::vector<double> r_values{0.0, 0.01, 0.05, 0.1, 0.5, 1.0};
  const auto rows = sweep_r(regression_config(1), r_values, 10);
  double at_one = 0.0;
  double at_one_sq = 0.0;
  std::size_t min_ok = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    double lowest = INFINITY;
    double one = NAN;
    for (std::size_t k = 0; k < r_values.size(); ++k) {
      const auto& row = rows[t * r_values.size() + k];
      lowest = std::min(lowest, row.normalized);
      if (row.r == 1.0) one = row.normalized;
    }
    at_one += one / 10.0;
    at_one_sq += one * one / 10.0;
    min_ok += lowest <= one;
  }
  const double se = std::sqrt(std::max(0.0, at_one_sq - at_one * at_one) / 9.0);
  return {std::fabs(at_one - 1.0) <= 0.1 && min_ok >= 8,
          "mean normalized error at r=1 " + fmt(at_one) + " (std error " + fmt(se, 3) + "), min<=r1 in " +
              std::to_string(min_ok) + "/10 seeds"};
}

// ---- 9 ----------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// Runs the CLI twice with identical arguments; compares stdout and every
// file it wrote.
bool rerun_identical(const std::string& cli, const std::string& args, const fs::path& out_dir,
                     std::string& why) {
  std::vector<std::pair<std::string, std::string>> first;
  std::string first_stdout;
  for (int pass = 0; pass < 2; ++pass) {
    const auto log = out_dir.parent_path() / (out_dir.filename().string() + ".stdout");
    const std::string cmd = "'" + cli + "' " + args + " >'" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0) {
      why = "command failed: " + args;
      return false;
    }
    std::vector<std::pair<std::string, std::string>> files;
    if (fs::exists(out_dir)) {
      for (const auto& e : fs::directory_iterator(out_dir)) files.emplace_back(e.path().filename().string(), slurp(e.path()));
    }
    std::sort(files.begin(), files.end());
    if (pass == 0) {
      first = std::move(files);
      first_stdout = slurp(log);
    } else if (files != first || slurp(log) != first_stdout) {
      why = "outputs differ: " + args;
      return false;
    }
  }
  return true;
}

Verdict determinism(const std::string& cli) {
  const auto dir = fs::temp_directory_path() / "hyperbasis-acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  {
    std::ofstream reg(dir / "regress.cfg");
    reg << "synthetic = regression\nn = 2000\nnoise_sd = 0.1\nlevels = 72\nlabel_levels = 100\nout = "
        << (dir / "run-reg").string() << '\n';
    std::ofstream cls(dir / "classify.cfg");
    cls << "synthetic = classification\nn = 4000\nclasses = 8\nnoise_sd = 0.3\nlevels = 72\nout = "
        << (dir / "run-cls").string() << '\n';
  }
  const std::string q = "'";
  const std::vector<std::pair<std::string, fs::path>> commands{
      {"basis --kind circular --levels 12 --seed 4 --out " + q + (dir / "basis-c").string() + q, dir / "basis-c"},
      {"basis --kind level --levels 13 --r 0.5 --seed 4 --out " + q + (dir / "basis-l").string() + q, dir / "basis-l"},
      {"basis --kind random --levels 12 --seed 4 --out " + q + (dir / "basis-r").string() + q, dir / "basis-r"},
      {"run --config " + q + (dir / "regress.cfg").string() + q, dir / "run-reg"},
      {"run --config " + q + (dir / "classify.cfg").string() + q, dir / "run-cls"},
      {"sweep-r --config " + q + (dir / "regress.cfg").string() + q + " --trials 2 --dim 2000 --out " + q +
           (dir / "sweep").string() + q,
       dir / "sweep"},
      {"oracle-flips --dim 100 --delta 0.5 --mc --trials 20000", dir / "oracle"},
  };
  std::size_t ok = 0;
  std::string why;
  for (const auto& [args, out] : commands) {
    if (rerun_identical(cli, args, out, why)) ++ok;
  }
  fs::remove_all(dir);
  return {ok == commands.size(),
          std::to_string(ok) + "/" + std::to_string(commands.size()) + " commands byte-identical" +
              (why.empty() ? "" : " (" + why + ")")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <hyperbasis-cli>\n";
    return 2;
  }
  const std::string cli = argv[1];

  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria{
      {"1 algebraic exactness", algebra},
      {"2 level-set expected distance", proposition_one},
      {"3 circular distance law", circular_law},
      {"4 interpolation endpoints", interpolation_endpoints},
      {"5 bit-flip absorption oracle", markov_oracle},
      {"6 regression exact inversion", exact_inversion},
      {"7 basis ordering", basis_ordering},
      {"8 r-sweep", r_sweep},
      {"9 determinism", [&] { return determinism(cli); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v{false, {}};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
