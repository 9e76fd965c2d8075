#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace classmatch {
namespace stats {

struct WilsonInterval {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 1.0;
};

/// Two-sided Wilson score interval for a binomial proportion (z = 1.96 for
/// the 95% level used everywhere here).
WilsonInterval wilson(std::int64_t successes, std::int64_t trials, double z = 1.96);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;  // sample standard error of the mean
  std::int64_t n = 0;
};
MeanSe meanSe(const std::vector<double>& xs);

double quantile(std::vector<double> xs, double q);  // sorts a copy

/// Kolmogorov distance between the empirical CDF of `xs` and `cdf`.
template <typename Cdf>
double ksDistanceToCdf(std::vector<double> xs, Cdf cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs((i + 1) / n - f));
    d = std::max(d, std::abs(i / n - f));
  }
  return d;
}

double ksDistanceTwoSample(std::vector<double> a, std::vector<double> b);

double pearsonCorrelation(const std::vector<double>& a, const std::vector<double>& b);

struct LinearFit {
  double intercept = 0.0;
  double intercept_se = 0.0;
  double slope = 0.0;
};

/// Weighted least squares y = a + b*x with per-point standard errors.
LinearFit weightedLinearFit(const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<double>& se);

/// Nondecreasing trend check on adjacent proportions: fails only when a later
/// interval lies strictly below an earlier one.
bool trendNondecreasing(const std::vector<WilsonInterval>& points);

}  // namespace stats
}  // namespace classmatch
