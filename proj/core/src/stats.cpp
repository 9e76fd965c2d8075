#include "classmatch/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace classmatch {
namespace stats {

WilsonInterval wilson(std::int64_t successes, std::int64_t trials, double z) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double half =
      z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  return {p, std::max(0.0, center - half), std::min(1.0, center + half)};
}

MeanSe meanSe(const std::vector<double>& xs) {
  MeanSe out;
  out.n = static_cast<std::int64_t>(xs.size());
  if (xs.empty()) return out;
  double s = 0.0;
  for (double x : xs) s += x;
  out.mean = s / xs.size();
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.se = std::sqrt(ss / (xs.size() - 1.0) / xs.size());
  return out;
}

double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw std::invalid_argument("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  const double pos = q * (xs.size() - 1);
  const size_t lo = static_cast<size_t>(pos);
  if (lo + 1 >= xs.size()) return xs.back();
  const double frac = pos - lo;
  return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

double ksDistanceTwoSample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j])
      ++i;
    else
      ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                             static_cast<double>(j) / b.size()));
  }
  return d;
}

double pearsonCorrelation(const std::vector<double>& a,
                          const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("correlation needs two equal-length samples");
  double ma = 0, mb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  double sab = 0, saa = 0, sbb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

LinearFit weightedLinearFit(const std::vector<double>& x,
                            const std::vector<double>& y,
                            const std::vector<double>& se) {
  if (x.size() != y.size() || x.size() != se.size() || x.size() < 2)
    throw std::invalid_argument("fit needs >= 2 points with errors");
  double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double w = 1.0 / (se[i] * se[i]);
    sw += w;
    swx += w * x[i];
    swy += w * y[i];
    swxx += w * x[i] * x[i];
    swxy += w * x[i] * y[i];
  }
  const double delta = sw * swxx - swx * swx;
  LinearFit fit;
  fit.intercept = (swxx * swy - swx * swxy) / delta;
  fit.slope = (sw * swxy - swx * swy) / delta;
  fit.intercept_se = std::sqrt(swxx / delta);
  return fit;
}

bool trendNondecreasing(const std::vector<WilsonInterval>& points) {
  for (size_t i = 0; i + 1 < points.size(); ++i)
    if (points[i + 1].hi < points[i].lo) return false;
  return true;
}

}  // namespace stats
}  // namespace classmatch
