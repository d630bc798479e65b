#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hyperbasis {

enum class ColumnType { Scalar, Angle, Symbol };
enum class AngleUnit { Radians, Degrees, Cycle };

std::string_view to_string(ColumnType type) noexcept;
std::string_view to_string(AngleUnit unit) noexcept;

struct Range {
  double lower;
  double upper;
  friend bool operator==(const Range&, const Range&) = default;
};

struct ColumnSpec {
  std::string name;
  ColumnType type = ColumnType::Scalar;
  AngleUnit unit = AngleUnit::Radians;  // angles only
  std::optional<Range> range;
  bool is_label = false;
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

// Schema text, one column per line:
//   column_name: type [unit] [range a b] [label]
// type is scalar | angle | symbol; unit (angles only) is radians | degrees |
// cycle. Exactly one column carries the `label` flag. '#' starts a comment.
struct Schema {
  std::vector<ColumnSpec> columns;

  [[nodiscard]] const ColumnSpec& label() const;
  [[nodiscard]] std::vector<ColumnSpec> features() const;
};

Schema parse_schema(std::string_view text);
Schema load_schema(const std::filesystem::path& path);

// Feature values are stored as doubles: scalars as read, angles converted to
// radians and wrapped to [0, 2pi), symbols as their index in the column's
// dictionary. Labels are real values or, for a symbol label column, class
// indices into `classes`.
struct TabularDataset {
  std::vector<ColumnSpec> features;
  std::vector<std::vector<std::string>> dictionaries;  // per feature; symbols only
  ColumnSpec label;
  std::vector<std::string> classes;                    // categorical labels only
  std::vector<std::vector<double>> rows;
  std::vector<double> labels;
  std::size_t dropped = 0;

  [[nodiscard]] std::size_t size() const noexcept { return rows.size(); }
  [[nodiscard]] bool categorical() const noexcept { return label.type == ColumnType::Symbol; }

  // Same metadata, selected rows.
  [[nodiscard]] TabularDataset subset(const std::vector<std::size_t>& indices) const;
};

// Rows with an empty, NA or NaN cell in any schema column are dropped and
// counted. Throws ConfigError when a schema column is absent from the
// header, DataError (with row and column) for unparseable cells.
TabularDataset parse_csv(std::string_view csv, const Schema& schema);
TabularDataset load_csv(const std::filesystem::path& path, const Schema& schema);

// theta ~ U[0, 2pi), y = cos(theta) + N(0, noise_sd^2).
TabularDataset synth_circular_regression(std::size_t n, double noise_sd, std::uint64_t seed);

// Class c (0-based) owns the arc [c 2pi/k, (c+1) 2pi/k). Each sample picks a
// class uniformly, an angle uniformly inside its arc, and adds wrapped
// N(0, noise_sd^2) noise.
TabularDataset synth_circular_classification(std::size_t n, std::size_t k, double noise_sd,
                                             std::uint64_t seed);

// Accuracy of the Bayes rule (assign the arc containing the observation) for
// the generator above, by quadrature over the wrapped normal.
double circular_bayes_accuracy(std::size_t k, double noise_sd);

enum class SplitMode { Chronological, Random };

SplitMode parse_split_mode(std::string_view text);
std::string_view to_string(SplitMode mode) noexcept;

// round(train_fraction * n) rows go to the training side.
std::pair<TabularDataset, TabularDataset> split(const TabularDataset& data, double train_fraction,
                                                SplitMode mode, std::uint64_t seed);

}  // namespace hyperbasis
