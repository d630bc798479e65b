#pragma once

// Reproducible experiments: a line-oriented "key = value" configuration, the
// encoder pipeline it describes, and the train/evaluate/sweep drivers used by
// the command-line tool.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hyperbasis/basis.hpp"
#include "hyperbasis/dataset.hpp"
#include "hyperbasis/learn.hpp"
#include "hyperbasis/metrics.hpp"

namespace hyperbasis {

enum class Task { Classify, Regress };

std::string_view to_string(Task task) noexcept;

enum class SyntheticKind { Regression, Classification };

struct SyntheticSpec {
  SyntheticKind kind = SyntheticKind::Regression;
  std::size_t n = 2000;
  double noise_sd = 0.1;
  std::size_t classes = 8;
};

// Per-column overrides; unset fields fall back to the global defaults.
struct ColumnEncoding {
  std::optional<BasisKind> kind;
  std::optional<std::size_t> levels;
  std::optional<double> r;
  std::optional<Range> range;
};

struct ExperimentConfig {
  std::optional<Task> task;
  std::optional<std::filesystem::path> data;
  std::optional<std::filesystem::path> schema;
  std::optional<SyntheticSpec> synthetic;

  std::size_t dim = 10000;
  std::size_t label_levels = 100;
  std::optional<Range> label_range;
  std::uint64_t seed = 1;
  SplitMode split = SplitMode::Random;
  double train_fraction = 0.7;
  std::filesystem::path out = ".";

  // Defaults for feature columns. Unset kind means: angle -> circular,
  // scalar -> level, symbol -> random.
  std::optional<BasisKind> kind;
  std::size_t levels = 64;
  double r = 0.0;

  std::map<std::string, ColumnEncoding> columns;
};

// Format:
//   key = value            global keys (task, data, schema, synthetic, n,
//                          noise_sd, classes, dim, label_levels, label_range,
//                          seed, split, train_fraction, out, kind, levels, r)
//   [column NAME]          per-column keys: kind, levels, r, range
//   [label]                keys: levels, range
// Relative data/schema paths are resolved against base_dir.
ExperimentConfig parse_config(std::string_view text,
                              const std::filesystem::path& base_dir = {});
ExperimentConfig load_config(const std::filesystem::path& path);

// Everything a run needs, with every default materialized.
struct ResolvedColumn {
  ColumnSpec spec;
  BasisKind kind;
  std::size_t levels;
  double r;
  std::optional<Range> range;  // scalar columns
  std::uint64_t basis_seed;
};

struct ResolvedExperiment {
  ExperimentConfig config;
  Task task;
  std::vector<ResolvedColumn> columns;
  std::optional<Range> label_range;  // regression
  std::size_t classes = 0;           // classification
};

// Training-set statistics fill any missing scalar or label range.
ResolvedExperiment resolve(const ExperimentConfig& config, const TabularDataset& train);

// Echo of the resolved configuration in the parseable config format. An
// empty output directory is left out.
std::string to_config_text(const ResolvedExperiment& resolved);

TabularDataset load_dataset(const ExperimentConfig& config);

// Maps dataset rows to record hypervectors: bundle_i bind(K_i, V_i) with one
// random key per column.
class SampleEncoder {
 public:
  SampleEncoder(const ResolvedExperiment& resolved, const TabularDataset& reference);

  [[nodiscard]] Hypervector encode(const std::vector<double>& row) const;
  [[nodiscard]] std::vector<Hypervector> encode_all(const TabularDataset& data) const;

 private:
  struct SymbolColumn {
    BasisSet basis;
  };
  using ColumnEncoder = std::variant<ScalarQuantizer, AngleQuantizer, SymbolColumn>;

  std::size_t dim_;
  BasisSet keys_;
  Hypervector tie_breaker_;
  std::vector<ColumnEncoder> encoders_;
};

struct RunResult {
  ResolvedExperiment resolved;
  Metrics metrics;
  std::variant<ClassificationModel, RegressionModel> model;
};

RunResult run_experiment(const ExperimentConfig& config, const TabularDataset& data);
RunResult run_experiment(const ExperimentConfig& config);

// Writes metrics.csv, model.bin and config.resolved into config.out.
void write_run_outputs(const RunResult& result);

struct SweepRow {
  double r;
  std::uint64_t seed;
  double error;       // mse, or 1 - accuracy
  double normalized;  // against the random-basis run with the same seed
};

// For seeds config.seed .. config.seed + trials - 1 and every r: angle
// columns use a circular basis and scalar columns a level basis at that r.
// The per-seed reference run uses random bases for those columns. Rows come
// out seed-major in the order of r_values; duplicate r values give duplicate
// rows.
std::vector<SweepRow> sweep_r(const ExperimentConfig& config, const std::vector<double>& r_values,
                              std::size_t trials);

// Header "r,seed,error,normalized_error".
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace hyperbasis
