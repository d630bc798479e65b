#include "hyperbasis/learn.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/kernels.hpp"
#include "hyperbasis/random.hpp"

namespace hyperbasis {

namespace {

constexpr std::string_view kClassifierMagic = "HBCLASS1";
constexpr std::string_view kRegressorMagic = "HBREGR01";

void write_magic(std::ostream& out, std::string_view magic) {
  out.write(magic.data(), static_cast<std::streamsize>(magic.size()));
}

void expect_magic(std::istream& in, std::string_view magic, std::string_view what) {
  std::string got(magic.size(), '\0');
  if (!in.read(got.data(), static_cast<std::streamsize>(got.size())) || got != magic) {
    throw DataError("not a " + std::string(what) + " container (bad magic)");
  }
}

void write_string(std::ostream& out, const std::string& s) {
  write_u64(out, s.size());
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

std::string read_string(std::istream& in) {
  const auto n = read_u64(in);
  if (n > (std::uint64_t{1} << 24)) throw DataError("implausible string length in container");
  std::string s(n, '\0');
  if (!in.read(s.data(), static_cast<std::streamsize>(n))) throw DataError("truncated container");
  return s;
}

std::string read_descriptor(std::istream& in) {
  const auto digest = read_u64(in);
  auto descriptor = read_string(in);
  if (fnv1a64(descriptor) != digest) throw DataError("model descriptor digest mismatch");
  return descriptor;
}

void require_dim(const Hypervector& v, std::size_t d) {
  if (v.dim() != d) throw DimensionMismatch(d, v.dim());
}

}  // namespace

ClassifierTrainer::ClassifierTrainer(std::size_t classes, std::size_t d, std::uint64_t seed)
    : d_(d), seed_(seed) {
  if (classes == 0) throw InvalidArgument("classifier needs at least one class");
  accumulators_.assign(classes, BundleAccumulator(d));
}

void ClassifierTrainer::add(const Hypervector& encoding, std::size_t label) {
  if (label >= accumulators_.size()) {
    throw InvalidArgument("class label " + std::to_string(label) + " out of range (k = " +
                          std::to_string(accumulators_.size()) + ")");
  }
  accumulators_[label].add(encoding);
}

void ClassifierTrainer::merge(const ClassifierTrainer& other) {
  if (other.accumulators_.size() != accumulators_.size() || other.d_ != d_) {
    throw InvalidArgument("cannot merge trainers with different shapes");
  }
  for (std::size_t c = 0; c < accumulators_.size(); ++c) {
    accumulators_[c].merge(other.accumulators_[c]);
  }
}

ClassificationModel ClassifierTrainer::finish(std::string descriptor) const {
  std::string missing;
  for (std::size_t c = 0; c < accumulators_.size(); ++c) {
    if (accumulators_[c].empty()) missing += (missing.empty() ? "" : ", ") + std::to_string(c);
  }
  if (!missing.empty()) throw InvalidArgument("classes without training samples: " + missing);

  const Hypervector tie = make_tie_breaker(d_, seed_);
  ClassificationModel model{{}, seed_, std::move(descriptor)};
  model.class_vectors.reserve(accumulators_.size());
  for (const auto& acc : accumulators_) model.class_vectors.push_back(acc.finalize(tie));
  return model;
}

ClassificationModel train_classifier(std::span<const ClassSample> samples, std::size_t classes,
                                     std::uint64_t seed, std::string descriptor) {
  if (samples.empty()) throw InvalidArgument("no training samples");
  const std::size_t d = samples[0].encoding.dim();
  for (const auto& s : samples) {
    require_dim(s.encoding, d);
    if (s.label >= classes) {
      throw InvalidArgument("class label " + std::to_string(s.label) + " out of range (k = " +
                            std::to_string(classes) + ")");
    }
  }

  ClassifierTrainer total(classes, d, seed);
  const auto n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel
  {
    ClassifierTrainer local(classes, d, seed);
#pragma omp for schedule(static) nowait
    for (std::int64_t i = 0; i < n; ++i) {
      const auto& s = samples[static_cast<std::size_t>(i)];
      local.add(s.encoding, s.label);
    }
#pragma omp critical(hyperbasis_classifier_merge)
    total.merge(local);
  }
  return total.finish(std::move(descriptor));
}

std::size_t classify(const ClassificationModel& model, const Hypervector& query) {
  if (model.class_vectors.empty()) throw InvalidArgument("model has no classes");
  require_dim(query, model.dim());
  return kernels::nearest(query, model.class_vectors).index;
}

std::vector<std::size_t> classify_batch(const ClassificationModel& model,
                                        std::span<const Hypervector> queries) {
  if (model.class_vectors.empty()) throw InvalidArgument("model has no classes");
  return kernels::nearest_batch(queries, model.class_vectors);
}

RegressionModel train_regressor(std::span<const RegressionSample> samples, const LabelCodec& codec,
                                std::uint64_t seed, std::string descriptor) {
  if (samples.empty()) throw InvalidArgument("no training samples");
  const std::size_t d = codec.quantizer().basis().d;
  std::vector<Hypervector> inputs;
  std::vector<Hypervector> labels;
  inputs.reserve(samples.size());
  labels.reserve(samples.size());
  for (const auto& s : samples) {
    require_dim(s.encoding, d);
    inputs.push_back(s.encoding);
    labels.push_back(codec.encode(s.label));
  }
  const auto bound = kernels::bind_each(inputs, labels);
  const auto acc = kernels::accumulate(bound, d);
  return RegressionModel{acc.finalize(make_tie_breaker(d, seed)), codec, seed,
                         std::move(descriptor)};
}

double predict(const RegressionModel& model, const Hypervector& query) {
  return model.codec.decode(bind(model.memory, query));
}

std::vector<double> predict_batch(const RegressionModel& model,
                                  std::span<const Hypervector> queries) {
  for (const auto& q : queries) require_dim(q, model.memory.dim());
  std::vector<double> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = model.codec.decode(bind(model.memory, queries[k]));
  }
  return out;
}

void write_model(std::ostream& out, const ClassificationModel& model) {
  write_magic(out, kClassifierMagic);
  write_u64(out, model.seed);
  write_u64(out, fnv1a64(model.descriptor));
  write_string(out, model.descriptor);
  write_u64(out, model.class_vectors.size());
  for (const auto& v : model.class_vectors) write_hypervector(out, v);
}

ClassificationModel read_classification_model(std::istream& in) {
  expect_magic(in, kClassifierMagic, "classification model");
  ClassificationModel model;
  model.seed = read_u64(in);
  model.descriptor = read_descriptor(in);
  const auto k = read_u64(in);
  if (k == 0 || k > (std::uint64_t{1} << 24)) throw DataError("implausible class count");
  for (std::uint64_t c = 0; c < k; ++c) model.class_vectors.push_back(read_hypervector(in));
  for (const auto& v : model.class_vectors) {
    if (v.dim() != model.class_vectors[0].dim()) throw DataError("class vectors differ in dimension");
  }
  return model;
}

void write_model(std::ostream& out, const RegressionModel& model) {
  const auto& q = model.codec.quantizer();
  const auto& basis = q.basis();
  write_magic(out, kRegressorMagic);
  write_u64(out, model.seed);
  write_u64(out, fnv1a64(model.descriptor));
  write_string(out, model.descriptor);
  write_f64(out, q.lower());
  write_f64(out, q.upper());
  write_u64(out, static_cast<std::uint64_t>(basis.kind));
  write_u64(out, basis.m);
  write_f64(out, basis.r);
  write_u64(out, basis.seed);
  write_hypervector(out, model.memory);
}

RegressionModel read_regression_model(std::istream& in) {
  expect_magic(in, kRegressorMagic, "regression model");
  const auto seed = read_u64(in);
  auto descriptor = read_descriptor(in);
  const double a = read_f64(in);
  const double b = read_f64(in);
  const auto kind = read_u64(in);
  const auto m = read_u64(in);
  const double r = read_f64(in);
  const auto basis_seed = read_u64(in);
  auto memory = read_hypervector(in);
  if (kind > static_cast<std::uint64_t>(BasisKind::Circular)) throw DataError("unknown label basis kind");
  if (m < 2 || m > (std::uint64_t{1} << 24)) throw DataError("implausible label level count");
  auto basis = generate_basis(static_cast<BasisKind>(kind), m, memory.dim(), r, basis_seed);
  return RegressionModel{std::move(memory), LabelCodec(ScalarQuantizer(a, b, std::move(basis))),
                         seed, std::move(descriptor)};
}

}  // namespace hyperbasis
