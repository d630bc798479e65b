#pragma once

// Single-pass HDC learners: class-vector prototypes for classification and a
// bind-bundle associative memory for regression.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hyperbasis/encode.hpp"
#include "hyperbasis/hypervector.hpp"

namespace hyperbasis {

struct ClassSample {
  Hypervector encoding;
  std::size_t label;  // 0-based class index
};

struct RegressionSample {
  Hypervector encoding;
  double label;
};

struct ClassificationModel {
  std::vector<Hypervector> class_vectors;
  std::uint64_t seed = 0;
  std::string descriptor;  // how samples were encoded

  [[nodiscard]] std::size_t classes() const noexcept { return class_vectors.size(); }
  [[nodiscard]] std::size_t dim() const { return class_vectors.at(0).dim(); }
};

// Accumulates samples into per-class counters. Trainers over disjoint
// partitions can be merged before finishing.
class ClassifierTrainer {
 public:
  ClassifierTrainer(std::size_t classes, std::size_t d, std::uint64_t seed);

  void add(const Hypervector& encoding, std::size_t label);
  void merge(const ClassifierTrainer& other);

  // Throws InvalidArgument naming every class that received no samples.
  [[nodiscard]] ClassificationModel finish(std::string descriptor = {}) const;

 private:
  std::size_t d_;
  std::uint64_t seed_;
  std::vector<BundleAccumulator> accumulators_;
};

ClassificationModel train_classifier(std::span<const ClassSample> samples, std::size_t classes,
                                     std::uint64_t seed, std::string descriptor = {});

// Nearest class-vector; ties to the lowest class index.
std::size_t classify(const ClassificationModel& model, const Hypervector& query);
std::vector<std::size_t> classify_batch(const ClassificationModel& model,
                                        std::span<const Hypervector> queries);

struct RegressionModel {
  Hypervector memory;
  LabelCodec codec;
  std::uint64_t seed = 0;
  std::string descriptor;
};

RegressionModel train_regressor(std::span<const RegressionSample> samples, const LabelCodec& codec,
                                std::uint64_t seed, std::string descriptor = {});

// Decodes bind(memory, query) through the label codec.
double predict(const RegressionModel& model, const Hypervector& query);
std::vector<double> predict_batch(const RegressionModel& model,
                                  std::span<const Hypervector> queries);

// Containers: magic, seed, FNV-1a digest of the descriptor, then the payload.
// Regression models store the codec range and label-basis parameters; the
// label basis is regenerated on load.
void write_model(std::ostream& out, const ClassificationModel& model);
void write_model(std::ostream& out, const RegressionModel& model);
ClassificationModel read_classification_model(std::istream& in);
RegressionModel read_regression_model(std::istream& in);

}  // namespace hyperbasis
