#include "hyperbasis/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <optional>
#include <sstream>

#include "hyperbasis/encode.hpp"
#include "hyperbasis/errors.hpp"
#include "hyperbasis/random.hpp"
#include "hyperbasis/text.hpp"

namespace hyperbasis {

namespace {

std::string read_text(const std::filesystem::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + std::string(what) + " '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Range parse_range(std::string_view value, const std::string& where) {
  std::istringstream ss{std::string(value)};
  std::string a_text;
  std::string b_text;
  std::string extra;
  ss >> a_text >> b_text;
  const auto a = text::parse_double(a_text);
  const auto b = text::parse_double(b_text);
  if (!a || !b || (ss >> extra) || !(*b > *a)) {
    throw ConfigError(where + ": range needs two numbers 'a b' with b > a");
  }
  return Range{*a, *b};
}

std::size_t parse_count(std::string_view value, const std::string& where, std::size_t min) {
  const auto v = text::parse_int(value);
  if (!v || *v < static_cast<long long>(min)) {
    throw ConfigError(where + ": expected an integer >= " + std::to_string(min));
  }
  return static_cast<std::size_t>(*v);
}

double parse_real(std::string_view value, const std::string& where) {
  const auto v = text::parse_double(value);
  if (!v || !std::isfinite(*v)) throw ConfigError(where + ": expected a number");
  return *v;
}

double parse_r(std::string_view value, const std::string& where) {
  const double r = parse_real(value, where);
  if (r < 0.0 || r > 1.0) throw ConfigError(where + ": r must lie in [0, 1]");
  return r;
}

BasisKind parse_kind(std::string_view value, const std::string& where) {
  try {
    return parse_basis_kind(value);
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string range_text(const Range& r) {
  return text::format_double(r.lower) + " " + text::format_double(r.upper);
}

Range observed_range(const std::vector<double>& values, const std::string& what) {
  if (values.empty()) throw DataError("cannot infer a range for " + what + " from no data");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*hi > *lo) return Range{*lo, *hi};
  return Range{*lo - 0.5, *hi + 0.5};
}

BasisKind default_kind(ColumnType type) {
  switch (type) {
    case ColumnType::Angle: return BasisKind::Circular;
    case ColumnType::Scalar: return BasisKind::Level;
    case ColumnType::Symbol: return BasisKind::Random;
  }
  return BasisKind::Random;
}

}  // namespace

std::string_view to_string(Task task) noexcept {
  return task == Task::Classify ? "classify" : "regress";
}

ExperimentConfig parse_config(std::string_view text, const std::filesystem::path& base_dir) {
  ExperimentConfig cfg;
  enum class Section { Global, Column, Label } section = Section::Global;
  std::string column;
  std::size_t line_no = 0;

  auto resolve_path = [&](std::string_view value) {
    std::filesystem::path p{std::string(value)};
    return (p.is_relative() && !base_dir.empty()) ? base_dir / p : p;
  };
  auto synthetic = [&]() -> SyntheticSpec& {
    if (!cfg.synthetic) cfg.synthetic = SyntheticSpec{};
    return *cfg.synthetic;
  };

  for (auto raw : text::split(text, '\n')) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const auto line = text::trim(raw);
    if (line.empty()) continue;
    const std::string where = "config line " + std::to_string(line_no);

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + ": unterminated section header");
      const auto inner = text::trim(line.substr(1, line.size() - 2));
      if (inner == "label") {
        section = Section::Label;
      } else if (inner.starts_with("column ") || inner.starts_with("column\t")) {
        section = Section::Column;
        column = std::string(text::trim(inner.substr(7)));
        if (column.empty()) throw ConfigError(where + ": column section needs a name");
        cfg.columns[column];
      } else {
        throw ConfigError(where + ": unknown section '" + std::string(inner) + "'");
      }
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + ": expected 'key = value'");
    const std::string key = text::lower(text::trim(line.substr(0, eq)));
    const auto value = text::trim(line.substr(eq + 1));
    if (value.empty()) throw ConfigError(where + ": empty value for '" + key + "'");

    if (section == Section::Column) {
      auto& enc = cfg.columns[column];
      if (key == "kind") enc.kind = parse_kind(value, where);
      else if (key == "levels") enc.levels = parse_count(value, where, 2);
      else if (key == "r") enc.r = parse_r(value, where);
      else if (key == "range") enc.range = parse_range(value, where);
      else throw ConfigError(where + ": unknown column key '" + key + "'");
      continue;
    }
    if (section == Section::Label) {
      if (key == "levels") cfg.label_levels = parse_count(value, where, 2);
      else if (key == "range") cfg.label_range = parse_range(value, where);
      else throw ConfigError(where + ": unknown label key '" + key + "'");
      continue;
    }

    if (key == "task") {
      const auto t = text::lower(value);
      if (t == "classify") cfg.task = Task::Classify;
      else if (t == "regress") cfg.task = Task::Regress;
      else throw ConfigError(where + ": task must be classify or regress");
    } else if (key == "data") {
      cfg.data = resolve_path(value);
    } else if (key == "schema") {
      cfg.schema = resolve_path(value);
    } else if (key == "synthetic") {
      const auto t = text::lower(value);
      if (t == "regression") synthetic().kind = SyntheticKind::Regression;
      else if (t == "classification") synthetic().kind = SyntheticKind::Classification;
      else throw ConfigError(where + ": synthetic must be regression or classification");
    } else if (key == "n") {
      synthetic().n = parse_count(value, where, 1);
    } else if (key == "noise_sd") {
      const double sd = parse_real(value, where);
      if (sd < 0.0) throw ConfigError(where + ": noise_sd must be >= 0");
      synthetic().noise_sd = sd;
    } else if (key == "classes") {
      synthetic().classes = parse_count(value, where, 2);
    } else if (key == "dim") {
      cfg.dim = parse_count(value, where, 1);
    } else if (key == "label_levels") {
      cfg.label_levels = parse_count(value, where, 2);
    } else if (key == "label_range") {
      cfg.label_range = parse_range(value, where);
    } else if (key == "seed") {
      const auto v = text::parse_int(value);
      if (!v || *v < 0) throw ConfigError(where + ": seed must be a non-negative integer");
      cfg.seed = static_cast<std::uint64_t>(*v);
    } else if (key == "split") {
      cfg.split = parse_split_mode(value);
    } else if (key == "train_fraction") {
      const double f = parse_real(value, where);
      if (!(f > 0.0 && f < 1.0)) throw ConfigError(where + ": train_fraction must be in (0, 1)");
      cfg.train_fraction = f;
    } else if (key == "out") {
      cfg.out = std::filesystem::path{std::string(value)};
    } else if (key == "kind") {
      cfg.kind = parse_kind(value, where);
    } else if (key == "levels") {
      cfg.levels = parse_count(value, where, 2);
    } else if (key == "r") {
      cfg.r = parse_r(value, where);
    } else {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
  if (cfg.synthetic && (cfg.data || cfg.schema)) {
    throw ConfigError("config sets both a synthetic dataset and a data/schema source");
  }
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  return parse_config(read_text(path, "config file"), path.parent_path());
}

TabularDataset load_dataset(const ExperimentConfig& config) {
  if (config.synthetic) {
    const auto& s = *config.synthetic;
    const auto seed = derive_seed(config.seed, "data");
    return s.kind == SyntheticKind::Regression
               ? synth_circular_regression(s.n, s.noise_sd, seed)
               : synth_circular_classification(s.n, s.classes, s.noise_sd, seed);
  }
  if (!config.data || !config.schema) {
    throw ConfigError("config needs either 'synthetic' or both 'data' and 'schema'");
  }
  if (!std::filesystem::exists(*config.schema)) {
    throw ConfigError("schema file not found: '" + config.schema->string() + "'");
  }
  if (!std::filesystem::exists(*config.data)) {
    throw ConfigError("data file not found: '" + config.data->string() + "'");
  }
  return load_csv(*config.data, load_schema(*config.schema));
}

ResolvedExperiment resolve(const ExperimentConfig& config, const TabularDataset& train) {
  ResolvedExperiment out;
  out.config = config;
  out.task = config.task.value_or(train.categorical() ? Task::Classify : Task::Regress);
  if (out.task == Task::Classify && !train.categorical()) {
    throw ConfigError("task 'classify' needs a symbol label column");
  }
  if (out.task == Task::Regress && train.categorical()) {
    throw ConfigError("task 'regress' needs a scalar label column");
  }

  for (const auto& [name, enc] : config.columns) {
    const bool known = std::any_of(train.features.begin(), train.features.end(),
                                   [&](const ColumnSpec& c) { return c.name == name; });
    if (!known) throw ConfigError("config describes unknown column '" + name + "'");
  }

  for (std::size_t f = 0; f < train.features.size(); ++f) {
    const auto& spec = train.features[f];
    const auto it = config.columns.find(spec.name);
    const ColumnEncoding enc = it == config.columns.end() ? ColumnEncoding{} : it->second;

    ResolvedColumn col{spec, BasisKind::Random, 0, 1.0, std::nullopt,
                       derive_seed(config.seed, "column:" + spec.name)};
    if (spec.type == ColumnType::Symbol) {
      col.levels = std::max<std::size_t>(1, train.dictionaries[f].size());
    } else {
      col.kind = enc.kind.value_or(config.kind.value_or(default_kind(spec.type)));
      col.levels = enc.levels.value_or(config.levels);
      col.r = col.kind == BasisKind::Random ? 1.0 : enc.r.value_or(config.r);
      if (col.kind == BasisKind::Circular && col.levels < 3) {
        throw ConfigError("column '" + spec.name + "': circular bases need at least 3 levels");
      }
    }
    if (spec.type == ColumnType::Scalar) {
      if (enc.range) col.range = enc.range;
      else if (spec.range) col.range = spec.range;
      else {
        std::vector<double> values;
        values.reserve(train.rows.size());
        for (const auto& row : train.rows) values.push_back(row[f]);
        col.range = observed_range(values, "column '" + spec.name + "'");
      }
    }
    out.columns.push_back(std::move(col));
  }

  if (out.task == Task::Regress) {
    if (config.label_range) out.label_range = config.label_range;
    else if (train.label.range) out.label_range = train.label.range;
    else out.label_range = observed_range(train.labels, "the label");
  } else {
    out.classes = train.classes.size();
  }
  return out;
}

std::string to_config_text(const ResolvedExperiment& resolved) {
  const auto& c = resolved.config;
  std::ostringstream s;
  s << "task = " << to_string(resolved.task) << '\n';
  if (c.synthetic) {
    const auto& syn = *c.synthetic;
    s << "synthetic = " << (syn.kind == SyntheticKind::Regression ? "regression" : "classification")
      << '\n';
    s << "n = " << syn.n << '\n';
    s << "noise_sd = " << text::format_double(syn.noise_sd) << '\n';
    if (syn.kind == SyntheticKind::Classification) s << "classes = " << syn.classes << '\n';
  } else {
    if (c.data) s << "data = " << c.data->string() << '\n';
    if (c.schema) s << "schema = " << c.schema->string() << '\n';
  }
  s << "dim = " << c.dim << '\n';
  s << "seed = " << c.seed << '\n';
  s << "split = " << to_string(c.split) << '\n';
  s << "train_fraction = " << text::format_double(c.train_fraction) << '\n';
  if (!c.out.empty()) s << "out = " << c.out.string() << '\n';
  s << "levels = " << c.levels << '\n';
  s << "r = " << text::format_double(c.r) << '\n';
  if (c.kind) s << "kind = " << to_string(*c.kind) << '\n';
  for (const auto& col : resolved.columns) {
    s << "\n[column " << col.spec.name << "]\n";
    s << "# type = " << to_string(col.spec.type) << '\n';
    s << "kind = " << to_string(col.kind) << '\n';
    s << "levels = " << col.levels << '\n';
    s << "r = " << text::format_double(col.r) << '\n';
    if (col.range) s << "range = " << range_text(*col.range) << '\n';
  }
  if (resolved.task == Task::Regress) {
    s << "\n[label]\n";
    s << "levels = " << c.label_levels << '\n';
    s << "range = " << range_text(*resolved.label_range) << '\n';
  } else {
    s << "\n# classes = " << resolved.classes << '\n';
  }
  return s.str();
}

SampleEncoder::SampleEncoder(const ResolvedExperiment& resolved, const TabularDataset& reference)
    : dim_(resolved.config.dim),
      keys_(generate_random_set(std::max<std::size_t>(1, resolved.columns.size()), dim_,
                                derive_seed(resolved.config.seed, "keys"))),
      tie_breaker_(make_tie_breaker(dim_, derive_seed(resolved.config.seed, "record"))) {
  if (resolved.columns.empty()) throw ConfigError("no feature columns to encode");
  for (std::size_t f = 0; f < resolved.columns.size(); ++f) {
    const auto& col = resolved.columns[f];
    switch (col.spec.type) {
      case ColumnType::Scalar:
        encoders_.emplace_back(ScalarQuantizer(
            col.range->lower, col.range->upper,
            generate_basis(col.kind, col.levels, dim_, col.r, col.basis_seed)));
        break;
      case ColumnType::Angle:
        encoders_.emplace_back(
            AngleQuantizer(generate_basis(col.kind, col.levels, dim_, col.r, col.basis_seed)));
        break;
      case ColumnType::Symbol: {
        const std::size_t m = std::max<std::size_t>(1, reference.dictionaries.at(f).size());
        encoders_.emplace_back(SymbolColumn{generate_random_set(m, dim_, col.basis_seed)});
        break;
      }
    }
  }
}

Hypervector SampleEncoder::encode(const std::vector<double>& row) const {
  if (row.size() != encoders_.size()) {
    throw InvalidArgument("row has " + std::to_string(row.size()) + " values, expected " +
                          std::to_string(encoders_.size()));
  }
  std::vector<Hypervector> values;
  values.reserve(row.size());
  for (std::size_t f = 0; f < row.size(); ++f) {
    const auto& enc = encoders_[f];
    if (const auto* s = std::get_if<ScalarQuantizer>(&enc)) {
      values.push_back(s->encode(row[f]));
    } else if (const auto* a = std::get_if<AngleQuantizer>(&enc)) {
      values.push_back(a->encode(row[f]));
    } else {
      const auto& sym = std::get<SymbolColumn>(enc);
      const auto idx = static_cast<std::size_t>(row[f]);
      if (idx >= sym.basis.vectors.size()) throw InvalidArgument("symbol index out of range");
      values.push_back(sym.basis.vectors[idx]);
    }
  }
  return encode_record(keys_, values, tie_breaker_);
}

std::vector<Hypervector> SampleEncoder::encode_all(const TabularDataset& data) const {
  std::vector<std::optional<Hypervector>> tmp(data.size());
  std::vector<std::exception_ptr> errors(data.size());
  const auto n = static_cast<std::int64_t>(data.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      tmp[k].emplace(encode(data.rows[k]));
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<Hypervector> out;
  out.reserve(tmp.size());
  for (auto& v : tmp) out.push_back(std::move(*v));
  return out;
}

RunResult run_experiment(const ExperimentConfig& config, const TabularDataset& data) {
  if (config.dim == 0) throw ConfigError("dim must be >= 1");
  if (!(config.r >= 0.0 && config.r <= 1.0)) throw ConfigError("r must lie in [0, 1]");
  auto [train, test] = split(data, config.train_fraction, config.split,
                             derive_seed(config.seed, "split"));
  if (train.size() == 0) throw DataError("training split is empty");
  if (test.size() == 0) throw DataError("test split is empty");

  auto resolved = resolve(config, train);
  const SampleEncoder encoder(resolved, data);
  const auto train_x = encoder.encode_all(train);
  const auto test_x = encoder.encode_all(test);
  const auto model_seed = derive_seed(config.seed, "model");
  // The output directory says nothing about how samples were encoded.
  auto described = resolved;
  described.config.out.clear();
  const std::string descriptor = to_config_text(described);

  if (resolved.task == Task::Classify) {
    std::vector<ClassSample> train_s;
    std::vector<ClassSample> test_s;
    for (std::size_t i = 0; i < train.size(); ++i) {
      train_s.push_back({train_x[i], static_cast<std::size_t>(train.labels[i])});
    }
    for (std::size_t i = 0; i < test.size(); ++i) {
      test_s.push_back({test_x[i], static_cast<std::size_t>(test.labels[i])});
    }
    auto model = train_classifier(train_s, resolved.classes, model_seed, descriptor);
    auto metrics = evaluate_classification(model, test_s);
    return RunResult{std::move(resolved), metrics, std::move(model)};
  }

  const auto& range = *resolved.label_range;
  LabelCodec codec(ScalarQuantizer(
      range.lower, range.upper,
      generate_basis(BasisKind::Level, config.label_levels, config.dim, 0.0,
                     derive_seed(config.seed, "label"))));
  std::vector<RegressionSample> train_s;
  std::vector<RegressionSample> test_s;
  for (std::size_t i = 0; i < train.size(); ++i) train_s.push_back({train_x[i], train.labels[i]});
  for (std::size_t i = 0; i < test.size(); ++i) test_s.push_back({test_x[i], test.labels[i]});
  auto model = train_regressor(train_s, codec, model_seed, descriptor);
  auto metrics = evaluate_regression(model, test_s);
  return RunResult{std::move(resolved), metrics, std::move(model)};
}

RunResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, load_dataset(config));
}

void write_run_outputs(const RunResult& result) {
  const auto& dir = result.resolved.config.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create output directory '" + dir.string() + "': " + ec.message());

  auto open = [&](const char* name, std::ios::openmode mode) {
    std::ofstream f(dir / name, mode);
    if (!f) throw DataError("cannot write '" + (dir / name).string() + "'");
    return f;
  };
  {
    auto f = open("metrics.csv", std::ios::out | std::ios::trunc);
    write_metrics_csv(f, result.metrics);
  }
  {
    auto f = open("model.bin", std::ios::out | std::ios::trunc | std::ios::binary);
    std::visit([&](const auto& model) { write_model(f, model); }, result.model);
  }
  {
    auto f = open("config.resolved", std::ios::out | std::ios::trunc);
    f << to_config_text(result.resolved);
  }
}

std::vector<SweepRow> sweep_r(const ExperimentConfig& config, const std::vector<double>& r_values,
                              std::size_t trials) {
  if (trials == 0) throw ConfigError("sweep needs at least one trial");
  if (r_values.empty()) throw ConfigError("sweep needs at least one r value");
  for (double r : r_values) {
    if (!(r >= 0.0 && r <= 1.0)) throw ConfigError("sweep r values must lie in [0, 1]");
  }

  std::optional<TabularDataset> shared;
  if (!config.synthetic) shared = load_dataset(config);

  struct Job {
    std::size_t trial;
    std::optional<double> r;  // nullopt: random-basis reference
  };
  std::vector<Job> jobs;
  for (std::size_t t = 0; t < trials; ++t) {
    jobs.push_back({t, std::nullopt});
    for (double r : r_values) jobs.push_back({t, r});
  }

  std::vector<TabularDataset> datasets;
  for (std::size_t t = 0; t < trials; ++t) {
    if (shared) continue;
    auto cfg = config;
    cfg.seed = config.seed + t;
    datasets.push_back(load_dataset(cfg));
  }
  const auto& features = shared ? shared->features : datasets.front().features;

  auto configure = [&](std::size_t trial, std::optional<double> r) {
    auto cfg = config;
    cfg.seed = config.seed + trial;
    for (const auto& f : features) {
      if (f.type == ColumnType::Symbol) continue;
      auto& enc = cfg.columns[f.name];
      if (!r) {
        enc.kind = BasisKind::Random;
        continue;
      }
      enc.kind = f.type == ColumnType::Angle ? BasisKind::Circular : BasisKind::Level;
      enc.r = *r;
    }
    return cfg;
  };

  std::vector<double> errors(jobs.size(), 0.0);
  std::vector<std::exception_ptr> failures(jobs.size());
  const auto n = static_cast<std::int64_t>(jobs.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    try {
      const auto& job = jobs[k];
      const auto& data = shared ? *shared : datasets[job.trial];
      const auto result = run_experiment(configure(job.trial, job.r), data);
      errors[k] = result.metrics.mse ? *result.metrics.mse : 1.0 - *result.metrics.accuracy;
    } catch (...) {
      failures[k] = std::current_exception();
    }
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<SweepRow> rows;
  std::size_t k = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double reference = errors[k++];
    for (double r : r_values) {
      const double err = errors[k++];
      const double norm = normalized_mse(err, reference);  // same ratio for 1 - accuracy
      rows.push_back({r, config.seed + t, err, norm});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "r,seed,error,normalized_error\n";
  for (const auto& row : rows) {
    out << text::format_double(row.r) << ',' << row.seed << ',' << text::format_double(row.error)
        << ',' << text::format_double(row.normalized) << '\n';
  }
}

}  // namespace hyperbasis
