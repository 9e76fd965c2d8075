#include "classmatch/distributions.hpp"

#include <cmath>
#include <stdexcept>

namespace classmatch {

namespace {

double stdNormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

DistributionSpec DistributionSpec::uniform01() {
  DistributionSpec s;
  s.kind = DistKind::Uniform01;
  return s;
}

DistributionSpec DistributionSpec::pdfBounded(double alpha, double beta,
                                              std::vector<double> inverse_cdf) {
  DistributionSpec s;
  s.kind = DistKind::PdfBounded;
  s.alpha = alpha;
  s.beta = beta;
  s.inverse_cdf = std::move(inverse_cdf);
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::truncatedNormal(double mean, double sigma,
                                                   int knots) {
  if (knots < 1024) knots = 1024;
  const double z0 = stdNormalCdf((0.0 - mean) / sigma);
  const double z1 = stdNormalCdf((1.0 - mean) / sigma);
  const double mass = z1 - z0;
  // F(x) = (Phi((x - mean)/sigma) - z0) / mass; invert by bisection per knot.
  std::vector<double> inv(knots);
  for (int i = 0; i < knots; ++i) {
    const double target = static_cast<double>(i) / (knots - 1);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double f = (stdNormalCdf((mid - mean) / sigma) - z0) / mass;
      (f < target ? lo : hi) = mid;
    }
    inv[i] = 0.5 * (lo + hi);
  }
  inv.front() = 0.0;
  inv.back() = 1.0;
  // Density extremes on [0,1]: peak at the mean, minimum at the far endpoint.
  const double norm = 1.0 / (sigma * std::sqrt(2.0 * M_PI) * mass);
  const double f0 = norm * std::exp(-0.5 * std::pow((0.0 - mean) / sigma, 2));
  const double f1 = norm * std::exp(-0.5 * std::pow((1.0 - mean) / sigma, 2));
  DistributionSpec s;
  s.kind = DistKind::PdfBounded;
  s.alpha = std::min(f0, f1);
  s.beta = norm;
  s.inverse_cdf = std::move(inv);
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::exponential(double lambda) {
  DistributionSpec s;
  s.kind = DistKind::Exponential;
  s.lambda = lambda;
  s.validate();
  return s;
}

DistributionSpec DistributionSpec::reversedExponential(double lambda) {
  DistributionSpec s;
  s.kind = DistKind::ReversedExponential;
  s.lambda = lambda;
  s.validate();
  return s;
}

void DistributionSpec::validate() const {
  switch (kind) {
    case DistKind::Uniform01:
      break;
    case DistKind::PdfBounded:
      if (!(alpha > 0.0) || !(alpha <= beta))
        throw std::invalid_argument("PdfBounded requires 0 < alpha <= beta");
      if (inverse_cdf.size() < 1024)
        throw std::invalid_argument("PdfBounded inverse CDF needs >= 1024 knots");
      for (size_t i = 0; i < inverse_cdf.size(); ++i) {
        double v = inverse_cdf[i];
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("PdfBounded inverse CDF must map into [0,1]");
        if (i > 0 && v < inverse_cdf[i - 1])
          throw std::invalid_argument("PdfBounded inverse CDF must be monotone");
      }
      break;
    case DistKind::Exponential:
    case DistKind::ReversedExponential:
      if (!(lambda > 0.0)) throw std::invalid_argument("rate lambda must be > 0");
      break;
  }
}

double DistributionSpec::sample(Rng& rng) const {
  switch (kind) {
    case DistKind::Uniform01:
      return rng.nextDouble();
    case DistKind::PdfBounded: {
      const double u = rng.nextDouble();
      const double pos = u * (inverse_cdf.size() - 1);
      const size_t lo = static_cast<size_t>(pos);
      if (lo + 1 >= inverse_cdf.size()) return inverse_cdf.back();
      const double frac = pos - lo;
      return inverse_cdf[lo] * (1.0 - frac) + inverse_cdf[lo + 1] * frac;
    }
    case DistKind::Exponential:
      return -std::log(rng.nextDoubleOpen()) / lambda;
    case DistKind::ReversedExponential:
      // CDF F(x) = exp(-lambda (1-x)) on (-inf, 1]; x = 1 + log(u)/lambda.
      return 1.0 + std::log(rng.nextDoubleOpen()) / lambda;
  }
  return 0.0;
}

std::string DistributionSpec::name() const {
  switch (kind) {
    case DistKind::Uniform01:
      return "uniform01";
    case DistKind::PdfBounded:
      return "pdf_bounded(" + std::to_string(alpha) + "," + std::to_string(beta) + ")";
    case DistKind::Exponential:
      return "exp(" + std::to_string(lambda) + ")";
    case DistKind::ReversedExponential:
      return "reexp(" + std::to_string(lambda) + ")";
  }
  return "?";
}

std::vector<double> sampleUtilities(const DistributionSpec& spec, int n, int m,
                                    Seed seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("need n, m >= 1");
  spec.validate();
  Rng rng(seed);
  std::vector<double> out(static_cast<size_t>(n) * m);
  for (auto& v : out) v = spec.sample(rng);
  return out;
}

Instance sampleInstance(const DistributionSpec& spec, std::vector<int> class_sizes,
                        int m, Seed seed) {
  int n = 0;
  for (int s : class_sizes) n += s;
  return Instance(std::move(class_sizes), m, sampleUtilities(spec, n, m, seed));
}

std::vector<double> sampleReExpEdgeWeights(double lambda, int count, Seed seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("rate lambda must be > 0");
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  auto spec = DistributionSpec::reversedExponential(lambda);
  Rng rng(seed);
  std::vector<double> out(count);
  for (auto& v : out) v = spec.sample(rng);
  return out;
}

}  // namespace classmatch
