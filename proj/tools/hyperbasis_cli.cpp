// hyperbasis: generate basis sets, run HDC experiments, sweep r, and query
// the bit-flip absorption oracle.
//
// Exit codes: 0 success, 1 runtime/data error, 2 usage/config error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "hyperbasis/basis.hpp"
#include "hyperbasis/errors.hpp"
#include "hyperbasis/experiment.hpp"
#include "hyperbasis/markov.hpp"
#include "hyperbasis/text.hpp"

namespace hb = hyperbasis;
namespace fs = std::filesystem;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("HYPERBASIS_SEED");
  if (raw == nullptr) return std::nullopt;
  const auto v = hb::text::parse_int(raw);
  if (!v || *v < 0) throw hb::ConfigError("HYPERBASIS_SEED must be a non-negative integer");
  return static_cast<std::uint64_t>(*v);
}

// --seed, else HYPERBASIS_SEED, else the fallback.
std::uint64_t master_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto e = env_seed()) return *e;
  return fallback;
}

std::ofstream open_output(const fs::path& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::out | std::ios::trunc | std::ios::binary
                                 : std::ios::out | std::ios::trunc);
  if (!out) throw hb::DataError("cannot write '" + path.string() + "'");
  return out;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw hb::DataError("cannot create directory '" + dir.string() + "': " + ec.message());
}

struct Overrides {
  std::optional<std::size_t> dim;
  std::optional<std::size_t> levels;
  std::optional<double> r;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> kind;
  std::optional<std::string> out;
};

// Flags win over config keys, including per-column sections.
hb::ExperimentConfig apply_overrides(hb::ExperimentConfig cfg, const Overrides& o) {
  if (o.dim) cfg.dim = *o.dim;
  if (o.levels) {
    cfg.levels = *o.levels;
    for (auto& [name, col] : cfg.columns) col.levels.reset();
  }
  if (o.r) {
    cfg.r = *o.r;
    for (auto& [name, col] : cfg.columns) col.r.reset();
  }
  if (o.kind) {
    cfg.kind = hb::parse_basis_kind(*o.kind);
    for (auto& [name, col] : cfg.columns) col.kind.reset();
  }
  if (o.out) cfg.out = *o.out;
  if (o.seed) cfg.seed = *o.seed;
  else if (auto e = env_seed()) cfg.seed = *e;
  return cfg;
}

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--dim", o.dim, "Hypervector dimensionality")->check(CLI::PositiveNumber);
  cmd->add_option("--levels", o.levels, "Levels per scalar/angle column")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  cmd->add_option("--r", o.r, "Interpolation r in [0, 1]")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--seed", o.seed, "Master seed (default: HYPERBASIS_SEED or config)");
  cmd->add_option("--kind", o.kind, "Basis kind for feature columns: random | level | circular");
  cmd->add_option("--out", o.out, "Output directory");
}

int cmd_basis(const std::string& kind, std::size_t m, std::size_t d, double r,
              const std::optional<std::uint64_t>& seed_flag, const fs::path& out_dir) {
  const auto basis = hb::generate_basis(hb::parse_basis_kind(kind), m, d, r, master_seed(seed_flag, 1));
  make_dir(out_dir);
  {
    auto f = open_output(out_dir / "basis.bin", true);
    hb::write_basis(f, basis);
  }
  {
    auto f = open_output(out_dir / "similarity.csv");
    hb::write_similarity_csv(f, hb::similarity_matrix(basis));
  }
  std::cout << "kind = " << hb::to_string(basis.kind) << "\nm = " << basis.m << "\nd = " << basis.d
            << "\nr = " << hb::text::format_double(basis.r) << "\nseed = " << basis.seed
            << "\nwrote " << (out_dir / "basis.bin").string() << " and "
            << (out_dir / "similarity.csv").string() << '\n';
  return 0;
}

int cmd_run(const fs::path& config_path, const Overrides& o) {
  const auto cfg = apply_overrides(hb::load_config(config_path), o);
  const auto result = hb::run_experiment(cfg);
  hb::write_run_outputs(result);
  std::cout << hb::to_config_text(result.resolved) << '\n';
  hb::write_metrics_csv(std::cout, result.metrics);
  if (cfg.synthetic && cfg.synthetic->kind == hb::SyntheticKind::Classification) {
    std::cout << "bayes_accuracy,"
              << hb::text::format_double(
                     hb::circular_bayes_accuracy(cfg.synthetic->classes, cfg.synthetic->noise_sd))
              << '\n';
  }
  return 0;
}

int cmd_sweep(const fs::path& config_path, const Overrides& o, const std::vector<double>& r_values,
              std::size_t trials) {
  auto overrides = o;
  overrides.r.reset();  // r is the swept variable
  const auto cfg = apply_overrides(hb::load_config(config_path), overrides);
  const auto rows = hb::sweep_r(cfg, r_values, trials);
  make_dir(cfg.out);
  {
    auto f = open_output(cfg.out / "sweep.csv");
    hb::write_sweep_csv(f, rows);
  }
  // Summary per r: mean normalized error and its standard error over seeds.
  std::cout << "r,mean_normalized_error,std_error\n";
  std::vector<double> seen;
  for (double r : r_values) {
    if (std::find(seen.begin(), seen.end(), r) != seen.end()) continue;
    seen.push_back(r);
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t n = 0;
    for (const auto& row : rows) {
      if (row.r != r) continue;
      sum += row.normalized;
      sum_sq += row.normalized * row.normalized;
      ++n;
    }
    const double mean = sum / static_cast<double>(n);
    const double var = n > 1 ? (sum_sq - static_cast<double>(n) * mean * mean) / static_cast<double>(n - 1) : 0.0;
    std::cout << hb::text::format_double(r) << ',' << hb::text::format_double(mean) << ','
              << hb::text::format_double(std::sqrt(std::max(var, 0.0) / static_cast<double>(n)))
              << '\n';
  }
  std::cout << "wrote " << (cfg.out / "sweep.csv").string() << '\n';
  return 0;
}

int cmd_oracle(std::size_t d, double delta, bool mc, std::size_t walks,
               const std::optional<std::uint64_t>& seed_flag) {
  if (!(delta > 0.0 && delta <= 1.0)) throw hb::InvalidArgument("--delta must lie in (0, 1]");
  const double target_real = delta * static_cast<double>(d);
  const double target_round = std::round(target_real);
  if (std::fabs(target_real - target_round) > 1e-9 * std::max(1.0, target_real)) {
    throw hb::InvalidArgument("delta * d = " + hb::text::format_double(target_real) +
                              " is not an integral number of bits");
  }
  const auto target = static_cast<std::size_t>(target_round);
  const double exact = hb::expected_flip_count(d, target);
  std::cout << "d = " << d << "\ntarget = " << target
            << "\nexpected_flips = " << hb::text::format_double(exact) << '\n';
  if (mc) {
    const auto est = hb::simulate_flip_count(d, target, walks, master_seed(seed_flag, 1));
    std::cout << "monte_carlo = " << hb::text::format_double(est.mean_steps)
              << "\nmonte_carlo_std_error = " << hb::text::format_double(est.std_error)
              << "\nwalks = " << est.walks << "\nrelative_difference = "
              << hb::text::format_double(std::fabs(est.mean_steps - exact) / exact) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Basis-hypervector generation and HDC experiments"};
  app.require_subcommand(1);

  std::string kind = "random";
  std::size_t levels = 12;
  std::size_t dim = 10000;
  double r = 0.0;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  auto* basis = app.add_subcommand("basis", "Generate a basis set and its similarity matrix");
  basis->add_option("--kind", kind, "random | level | circular")->capture_default_str();
  basis->add_option("--levels", levels, "Set size m")->capture_default_str()->check(CLI::PositiveNumber);
  basis->add_option("--dim", dim, "Dimensionality d")->capture_default_str()->check(CLI::PositiveNumber);
  basis->add_option("--r", r, "Interpolation r in [0, 1]")->capture_default_str()->check(CLI::Range(0.0, 1.0));
  basis->add_option("--seed", seed, "Seed (default: HYPERBASIS_SEED or 1)");
  basis->add_option("--out", out, "Output directory")->capture_default_str();

  std::string config_path;
  Overrides overrides;
  auto* run = app.add_subcommand("run", "Train and evaluate one experiment");
  run->add_option("--config", config_path, "Experiment config file")->required();
  add_override_flags(run, overrides);

  std::string sweep_config;
  Overrides sweep_overrides;
  std::vector<double> r_values{0.0, 0.01, 0.05, 0.1, 0.5, 1.0};
  std::size_t sweep_trials = 10;
  auto* sweep = app.add_subcommand("sweep-r", "Sweep r against the random-basis reference");
  sweep->add_option("--config", sweep_config, "Experiment config file")->required();
  sweep->add_option("--dim", sweep_overrides.dim, "Hypervector dimensionality")->check(CLI::PositiveNumber);
  sweep->add_option("--levels", sweep_overrides.levels, "Levels per scalar/angle column")
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24));
  sweep->add_option("--seed", sweep_overrides.seed, "First seed");
  sweep->add_option("--out", sweep_overrides.out, "Output directory");
  sweep->add_option("--r", r_values, "r values (repeat or comma-separate)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  sweep->add_option("--trials", sweep_trials, "Number of seeds")->capture_default_str()->check(CLI::PositiveNumber);

  std::size_t oracle_dim = 10000;
  double delta = 0.5;
  bool mc = false;
  std::size_t walks = 100000;
  std::optional<std::uint64_t> oracle_seed;
  auto* oracle = app.add_subcommand("oracle-flips", "Expected bit flips to reach a target distance");
  oracle->add_option("--dim", oracle_dim, "Dimensionality d")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--delta", delta, "Target normalized distance in (0, 1]")->capture_default_str();
  oracle->add_flag("--mc", mc, "Also run the Monte-Carlo simulation");
  oracle->add_option("--trials", walks, "Monte-Carlo walks")->capture_default_str()->check(CLI::PositiveNumber);
  oracle->add_option("--seed", oracle_seed, "Monte-Carlo seed (default: HYPERBASIS_SEED or 1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (basis->parsed()) return cmd_basis(kind, levels, dim, r, seed, out);
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (sweep->parsed()) return cmd_sweep(sweep_config, sweep_overrides, r_values, sweep_trials);
    if (oracle->parsed()) return cmd_oracle(oracle_dim, delta, mc, walks, oracle_seed);
  } catch (const hb::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hb::InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
