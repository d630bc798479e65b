#include "hyperbasis/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "hyperbasis/encode.hpp"
#include "hyperbasis/errors.hpp"
#include "hyperbasis/random.hpp"
#include "hyperbasis/text.hpp"

namespace hyperbasis {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string read_file(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + std::string(what) + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_missing(std::string_view cell) {
  const auto t = text::lower(text::trim(cell));
  return t.empty() || t == "na" || t == "nan" || t == "null";
}

std::string unquote(std::string_view cell) {
  cell = text::trim(cell);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = cell.substr(1, cell.size() - 2);
  }
  return std::string(cell);
}

double to_radians(double value, AngleUnit unit) {
  switch (unit) {
    case AngleUnit::Radians: return value;
    case AngleUnit::Degrees: return value * std::numbers::pi / 180.0;
    case AngleUnit::Cycle: return value * kTwoPi;
  }
  return value;
}

std::size_t intern(std::vector<std::string>& dict, const std::string& value) {
  const auto it = std::find(dict.begin(), dict.end(), value);
  if (it != dict.end()) return static_cast<std::size_t>(it - dict.begin());
  dict.push_back(value);
  return dict.size() - 1;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

std::string_view to_string(ColumnType type) noexcept {
  switch (type) {
    case ColumnType::Scalar: return "scalar";
    case ColumnType::Angle: return "angle";
    case ColumnType::Symbol: return "symbol";
  }
  return "unknown";
}

std::string_view to_string(AngleUnit unit) noexcept {
  switch (unit) {
    case AngleUnit::Radians: return "radians";
    case AngleUnit::Degrees: return "degrees";
    case AngleUnit::Cycle: return "cycle";
  }
  return "unknown";
}

const ColumnSpec& Schema::label() const {
  for (const auto& c : columns) {
    if (c.is_label) return c;
  }
  throw ConfigError("schema declares no label column");
}

std::vector<ColumnSpec> Schema::features() const {
  std::vector<ColumnSpec> out;
  for (const auto& c : columns) {
    if (!c.is_label) out.push_back(c);
  }
  return out;
}

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::size_t line_no = 0;
  for (auto raw : text::split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    auto fail = [&](const std::string& msg) -> ConfigError {
      return ConfigError("schema line " + std::to_string(line_no) + ": " + msg);
    };
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw fail("expected 'name: type ...'");
    ColumnSpec col;
    col.name = std::string(text::trim(line.substr(0, colon)));
    if (col.name.empty()) throw fail("empty column name");

    std::vector<std::string> tokens;
    std::istringstream ss{std::string(line.substr(colon + 1))};
    for (std::string tok; ss >> tok;) tokens.push_back(text::lower(tok));
    if (tokens.empty()) throw fail("missing column type");

    if (tokens[0] == "scalar") col.type = ColumnType::Scalar;
    else if (tokens[0] == "angle") col.type = ColumnType::Angle;
    else if (tokens[0] == "symbol") col.type = ColumnType::Symbol;
    else throw fail("unknown column type '" + tokens[0] + "'");

    for (std::size_t i = 1; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (t == "radians" || t == "rad") col.unit = AngleUnit::Radians;
      else if (t == "degrees" || t == "deg") col.unit = AngleUnit::Degrees;
      else if (t == "cycle" || t == "fraction") col.unit = AngleUnit::Cycle;
      else if (t == "label") col.is_label = true;
      else if (t == "range") {
        if (i + 2 >= tokens.size()) throw fail("'range' needs two bounds");
        const auto a = text::parse_double(tokens[i + 1]);
        const auto b = text::parse_double(tokens[i + 2]);
        if (!a || !b || !(*b > *a)) throw fail("invalid range bounds");
        col.range = Range{*a, *b};
        i += 2;
      } else {
        throw fail("unexpected token '" + t + "'");
      }
    }
    if (col.type != ColumnType::Angle && col.unit != AngleUnit::Radians) {
      throw fail("units only apply to angle columns");
    }
    for (const auto& existing : schema.columns) {
      if (existing.name == col.name) throw fail("duplicate column '" + col.name + "'");
    }
    schema.columns.push_back(std::move(col));
  }
  const auto labels = std::count_if(schema.columns.begin(), schema.columns.end(),
                                    [](const auto& c) { return c.is_label; });
  if (labels != 1) throw ConfigError("schema must flag exactly one column as label");
  if (schema.label().type == ColumnType::Angle) {
    throw ConfigError("angle-valued labels are not supported");
  }
  if (schema.columns.size() < 2) throw ConfigError("schema needs at least one feature column");
  return schema;
}

Schema load_schema(const std::filesystem::path& path) {
  return parse_schema(read_file(path, "schema file"));
}

TabularDataset TabularDataset::subset(const std::vector<std::size_t>& indices) const {
  TabularDataset out;
  out.features = features;
  out.dictionaries = dictionaries;
  out.label = label;
  out.classes = classes;
  out.rows.reserve(indices.size());
  out.labels.reserve(indices.size());
  for (auto i : indices) {
    out.rows.push_back(rows.at(i));
    out.labels.push_back(labels.at(i));
  }
  return out;
}

TabularDataset parse_csv(std::string_view csv, const Schema& schema) {
  TabularDataset data;
  data.features = schema.features();
  data.label = schema.label();
  data.dictionaries.resize(data.features.size());

  auto lines = text::split(csv, '\n');
  if (lines.empty() || text::trim(lines[0]).empty()) throw DataError("CSV has no header row");
  std::vector<std::string> header;
  for (auto cell : text::split(lines[0], ',')) header.push_back(unquote(cell));

  auto column_index = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ConfigError("CSV is missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  std::vector<std::size_t> feature_cols;
  for (const auto& f : data.features) feature_cols.push_back(column_index(f.name));
  const std::size_t label_col = column_index(data.label.name);

  for (std::size_t li = 1; li < lines.size(); ++li) {
    if (text::trim(lines[li]).empty()) continue;
    const auto cells = text::split(lines[li], ',');
    auto cell_at = [&](std::size_t col) -> std::string_view {
      if (col >= cells.size()) {
        throw DataError("line " + std::to_string(li + 1) + ": expected " +
                        std::to_string(header.size()) + " cells, found " +
                        std::to_string(cells.size()));
      }
      return cells[col];
    };

    bool missing = is_missing(cell_at(label_col));
    for (auto col : feature_cols) missing = missing || is_missing(cell_at(col));
    if (missing) {
      ++data.dropped;
      continue;
    }

    auto numeric = [&](std::size_t col, const std::string& name) {
      const auto v = text::parse_double(unquote(cell_at(col)));
      if (!v) {
        throw DataError("line " + std::to_string(li + 1) + ", column '" + name +
                        "': cannot parse '" + std::string(text::trim(cell_at(col))) + "'");
      }
      return *v;
    };

    std::vector<double> row(data.features.size());
    bool non_finite = false;
    for (std::size_t f = 0; f < data.features.size(); ++f) {
      const auto& spec = data.features[f];
      if (spec.type == ColumnType::Symbol) {
        row[f] = static_cast<double>(intern(data.dictionaries[f], unquote(cell_at(feature_cols[f]))));
        continue;
      }
      const double v = numeric(feature_cols[f], spec.name);
      if (!std::isfinite(v)) {
        non_finite = true;
        break;
      }
      row[f] = spec.type == ColumnType::Angle ? wrap_angle(to_radians(v, spec.unit)) : v;
    }
    double label = 0.0;
    if (!non_finite) {
      if (data.categorical()) {
        label = static_cast<double>(intern(data.classes, unquote(cell_at(label_col))));
      } else {
        label = numeric(label_col, data.label.name);
        non_finite = !std::isfinite(label);
      }
    }
    if (non_finite) {
      ++data.dropped;
      continue;
    }
    data.rows.push_back(std::move(row));
    data.labels.push_back(label);
  }
  return data;
}

TabularDataset load_csv(const std::filesystem::path& path, const Schema& schema) {
  std::ifstream probe(path);
  if (!probe) throw ConfigError("cannot open data file '" + path.string() + "'");
  return parse_csv(read_file(path, "data file"), schema);
}

TabularDataset synth_circular_regression(std::size_t n, double noise_sd, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("synthetic dataset needs n >= 1");
  if (!(noise_sd >= 0.0)) throw InvalidArgument("noise_sd must be >= 0");
  TabularDataset data;
  data.features = {ColumnSpec{"theta", ColumnType::Angle, AngleUnit::Radians, std::nullopt, false}};
  data.dictionaries.resize(1);
  data.label = ColumnSpec{"y", ColumnType::Scalar, AngleUnit::Radians,
                          Range{-1.0 - 3.0 * noise_sd, 1.0 + 3.0 * noise_sd}, true};
  auto rng = make_rng(seed, "synth-regression");
  data.rows.reserve(n);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = uniform01(rng) * kTwoPi;
    const double noise = standard_normal(rng);
    data.rows.push_back({theta});
    data.labels.push_back(std::cos(theta) + noise_sd * noise);
  }
  return data;
}

TabularDataset synth_circular_classification(std::size_t n, std::size_t k, double noise_sd,
                                             std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("synthetic dataset needs n >= 1");
  if (k < 2) throw InvalidArgument("synthetic classification needs k >= 2");
  if (!(noise_sd >= 0.0)) throw InvalidArgument("noise_sd must be >= 0");
  TabularDataset data;
  data.features = {ColumnSpec{"theta", ColumnType::Angle, AngleUnit::Radians, std::nullopt, false}};
  data.dictionaries.resize(1);
  data.label = ColumnSpec{"arc", ColumnType::Symbol, AngleUnit::Radians, std::nullopt, true};
  for (std::size_t c = 0; c < k; ++c) data.classes.push_back(std::to_string(c));
  const double width = kTwoPi / static_cast<double>(k);
  auto rng = make_rng(seed, "synth-classification");
  data.rows.reserve(n);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t c = rng() % k;
    const double u = uniform01(rng) * width;
    const double noise = standard_normal(rng);
    const double theta = wrap_angle(static_cast<double>(c) * width + u + noise_sd * noise);
    data.rows.push_back({theta});
    data.labels.push_back(static_cast<double>(c));
  }
  return data;
}

double circular_bayes_accuracy(std::size_t k, double noise_sd) {
  if (k < 2) throw InvalidArgument("need k >= 2");
  if (!(noise_sd >= 0.0)) throw InvalidArgument("noise_sd must be >= 0");
  if (noise_sd == 0.0) return 1.0;
  const double w = kTwoPi / static_cast<double>(k);
  const int wraps = 2 + static_cast<int>(std::ceil(8.0 * noise_sd / kTwoPi));
  // P(u + eps lands in [0, w) mod 2pi) for a start offset u inside the arc.
  auto stay = [&](double u) {
    double p = 0.0;
    for (int j = -wraps; j <= wraps; ++j) {
      const double shift = kTwoPi * j;
      p += normal_cdf((w - u + shift) / noise_sd) - normal_cdf((-u + shift) / noise_sd);
    }
    return p;
  };
  // Composite Simpson over u in [0, w].
  constexpr int kPanels = 2000;
  const double h = w / kPanels;
  double sum = stay(0.0) + stay(w);
  for (int i = 1; i < kPanels; ++i) sum += (i % 2 == 1 ? 4.0 : 2.0) * stay(i * h);
  return sum * h / 3.0 / w;
}

SplitMode parse_split_mode(std::string_view text) {
  const auto t = text::lower(text::trim(text));
  if (t == "chronological") return SplitMode::Chronological;
  if (t == "random") return SplitMode::Random;
  throw ConfigError("unknown split mode '" + std::string(text) +
                    "' (expected chronological or random)");
}

std::string_view to_string(SplitMode mode) noexcept {
  return mode == SplitMode::Chronological ? "chronological" : "random";
}

std::pair<TabularDataset, TabularDataset> split(const TabularDataset& data, double train_fraction,
                                                SplitMode mode, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw InvalidArgument("train fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = data.size();
  const auto n_train = static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (mode == SplitMode::Random) {
    auto rng = make_rng(seed, "split");
    // Fisher-Yates with an explicit draw so the permutation is library independent.
    for (std::size_t i = n; i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(order[i - 1], order[j]);
    }
  }
  std::vector<std::size_t> train(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_train));
  std::vector<std::size_t> test(order.begin() + static_cast<std::ptrdiff_t>(n_train), order.end());
  if (mode == SplitMode::Random) {
    std::sort(train.begin(), train.end());
    std::sort(test.begin(), test.end());
  }
  return {data.subset(train), data.subset(test)};
}

}  // namespace hyperbasis
