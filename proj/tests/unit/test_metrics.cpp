#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "hyperbasis/dataset.hpp"
#include "hyperbasis/errors.hpp"
#include "hyperbasis/metrics.hpp"

using namespace hyperbasis;

TEST_CASE("perfect predictions") {
  const std::vector<std::size_t> labels{0, 2, 1, 1};
  const auto c = evaluate_classification(labels, labels);
  CHECK(*c.accuracy == 1.0);
  CHECK(c.samples == 4);
  const std::vector<double> y{0.5, -1.0, 3.0};
  CHECK(*evaluate_regression(y, y).mse == 0.0);
}

TEST_CASE("accuracy and mse values") {
  const std::vector<std::size_t> pred{0, 1, 1, 0};
  const std::vector<std::size_t> truth{0, 1, 0, 0};
  CHECK(*evaluate_classification(pred, truth).accuracy == 0.75);
  const std::vector<double> p{1.0, 2.0};
  const std::vector<double> t{0.0, 4.0};
  CHECK(*evaluate_regression(p, t).mse == 2.5);
  CHECK_THROWS_AS(evaluate_regression(std::vector<double>{}, std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(evaluate_regression(p, std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("normalized errors") {
  CHECK(normalized_accuracy_error(0.8, 0.8) == 1.0);
  CHECK(normalized_accuracy_error(0.9, 0.8) == doctest::Approx(0.5));
  CHECK(normalized_accuracy_error(1.0, 1.0) == 1.0);
  CHECK(normalized_accuracy_error(0.5, 1.0) == std::numeric_limits<double>::infinity());
  CHECK(normalized_mse(0.2, 0.4) == 0.5);
  CHECK(normalized_mse(0.0, 0.0) == 1.0);

  Metrics run{10, 0.7, std::nullopt, std::nullopt};
  normalize_against(run, run);
  CHECK(*run.normalized == 1.0);
  Metrics reg{10, std::nullopt, 0.3, std::nullopt};
  CHECK_THROWS_AS(normalize_against(reg, run), InvalidArgument);
}

TEST_CASE("mean predictor mse equals the label variance") {
  const auto data = synth_circular_regression(20000, 0.1, 3);
  double mean = 0.0;
  for (double y : data.labels) mean += y / static_cast<double>(data.size());
  double var = 0.0;
  for (double y : data.labels) var += (y - mean) * (y - mean) / static_cast<double>(data.size());
  const std::vector<double> constant(data.size(), mean);
  CHECK(*evaluate_regression(constant, data.labels).mse == doctest::Approx(var).epsilon(0.01));
  // cos(theta) with theta uniform has variance 1/2.
  CHECK(var == doctest::Approx(0.5 + 0.01).epsilon(0.03));
}

TEST_CASE("metrics csv") {
  std::ostringstream out;
  write_metrics_csv(out, Metrics{3, std::nullopt, 0.25, 1.5});
  CHECK(out.str() == "metric,value\nsamples,3\nmse,0.25\nnormalized_error,1.5\n");
  std::ostringstream cls;
  write_metrics_csv(cls, Metrics{4, 0.75, std::nullopt, std::nullopt});
  CHECK(cls.str() == "metric,value\nsamples,4\naccuracy,0.75\n");
}
