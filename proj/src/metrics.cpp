#include "hyperbasis/metrics.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "hyperbasis/errors.hpp"
#include "hyperbasis/text.hpp"

namespace hyperbasis {

namespace {

template <typename T, typename U>
void require_pairs(std::span<const T> predicted, std::span<const U> truth) {
  if (predicted.size() != truth.size()) {
    throw InvalidArgument("prediction and truth lengths differ");
  }
  if (truth.empty()) throw InvalidArgument("cannot evaluate on an empty test set");
}

// x / 0 is reported as 1 when x is also 0 and +inf otherwise.
double ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

Metrics evaluate_classification(std::span<const std::size_t> predicted,
                                std::span<const std::size_t> truth) {
  require_pairs(predicted, truth);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) correct += predicted[i] == truth[i] ? 1 : 0;
  Metrics m;
  m.samples = truth.size();
  m.accuracy = static_cast<double>(correct) / static_cast<double>(truth.size());
  return m;
}

Metrics evaluate_regression(std::span<const double> predicted, std::span<const double> truth) {
  require_pairs(predicted, truth);
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const double e = predicted[i] - truth[i];
    sum += e * e;
  }
  Metrics m;
  m.samples = truth.size();
  m.mse = sum / static_cast<double>(truth.size());
  return m;
}

Metrics evaluate_classification(const ClassificationModel& model,
                                std::span<const ClassSample> test) {
  if (test.empty()) throw InvalidArgument("cannot evaluate on an empty test set");
  std::vector<Hypervector> queries;
  std::vector<std::size_t> truth;
  queries.reserve(test.size());
  truth.reserve(test.size());
  for (const auto& s : test) {
    queries.push_back(s.encoding);
    truth.push_back(s.label);
  }
  const auto predicted = classify_batch(model, queries);
  return evaluate_classification(predicted, truth);
}

Metrics evaluate_regression(const RegressionModel& model, std::span<const RegressionSample> test) {
  if (test.empty()) throw InvalidArgument("cannot evaluate on an empty test set");
  std::vector<Hypervector> queries;
  std::vector<double> truth;
  queries.reserve(test.size());
  truth.reserve(test.size());
  for (const auto& s : test) {
    queries.push_back(s.encoding);
    truth.push_back(s.label);
  }
  const auto predicted = predict_batch(model, queries);
  return evaluate_regression(predicted, truth);
}

double normalized_accuracy_error(double accuracy, double reference_accuracy) {
  return ratio(1.0 - accuracy, 1.0 - reference_accuracy);
}

double normalized_mse(double mse, double reference_mse) { return ratio(mse, reference_mse); }

void normalize_against(Metrics& metrics, const Metrics& reference) {
  if (metrics.accuracy && reference.accuracy) {
    metrics.normalized = normalized_accuracy_error(*metrics.accuracy, *reference.accuracy);
  } else if (metrics.mse && reference.mse) {
    metrics.normalized = normalized_mse(*metrics.mse, *reference.mse);
  } else {
    throw InvalidArgument("reference metrics are for a different task");
  }
}

void write_metrics_csv(std::ostream& out, const Metrics& metrics) {
  out << "metric,value\n";
  out << "samples," << metrics.samples << '\n';
  if (metrics.accuracy) out << "accuracy," << text::format_double(*metrics.accuracy) << '\n';
  if (metrics.mse) out << "mse," << text::format_double(*metrics.mse) << '\n';
  if (metrics.normalized) out << "normalized_error," << text::format_double(*metrics.normalized) << '\n';
}

}  // namespace hyperbasis
