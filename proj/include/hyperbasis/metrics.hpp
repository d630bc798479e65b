#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>

#include "hyperbasis/learn.hpp"

namespace hyperbasis {

struct Metrics {
  std::size_t samples = 0;
  std::optional<double> accuracy;    // classification
  std::optional<double> mse;         // regression
  std::optional<double> normalized;  // against a reference run, when supplied
};

Metrics evaluate_classification(std::span<const std::size_t> predicted,
                                std::span<const std::size_t> truth);
Metrics evaluate_regression(std::span<const double> predicted, std::span<const double> truth);

Metrics evaluate_classification(const ClassificationModel& model,
                                std::span<const ClassSample> test);
Metrics evaluate_regression(const RegressionModel& model, std::span<const RegressionSample> test);

// (1 - accuracy) / (1 - reference_accuracy).
double normalized_accuracy_error(double accuracy, double reference_accuracy);
// mse / reference_mse.
double normalized_mse(double mse, double reference_mse);

// Fills `normalized` from a reference run of the same task.
void normalize_against(Metrics& metrics, const Metrics& reference);

// "metric,value" rows.
void write_metrics_csv(std::ostream& out, const Metrics& metrics);

}  // namespace hyperbasis
