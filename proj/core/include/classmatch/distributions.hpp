#pragma once

#include <string>
#include <vector>

#include "classmatch/rng.hpp"
#include "classmatch/types.hpp"

namespace classmatch {

enum class DistKind { Uniform01, PdfBounded, Exponential, ReversedExponential };

/// Declarative description of the sampling law for utilities.
///
/// PdfBounded covers the non-atomic laws on [0,1] whose density stays within
/// [alpha, beta]; the concrete member is supplied through a tabulated
/// piecewise-linear inverse CDF (>= 1024 knots). Built-in presets:
/// uniform01 and a truncated normal on [0,1].
struct DistributionSpec {
  DistKind kind = DistKind::Uniform01;
  double alpha = 1.0;             // density lower bound (PdfBounded)
  double beta = 1.0;              // density upper bound (PdfBounded)
  double lambda = 1.0;            // rate (Exponential / ReversedExponential)
  std::vector<double> inverse_cdf;  // knots of F^{-1} at i/(K-1), PdfBounded only

  static DistributionSpec uniform01();
  static DistributionSpec pdfBounded(double alpha, double beta,
                                     std::vector<double> inverse_cdf);
  /// Normal(mean, sigma) conditioned on [0,1], tabulated with `knots` points.
  static DistributionSpec truncatedNormal(double mean = 0.5, double sigma = 0.25,
                                          int knots = 4096);
  static DistributionSpec exponential(double lambda);
  static DistributionSpec reversedExponential(double lambda);

  void validate() const;
  double sample(Rng& rng) const;
  std::string name() const;
};

/// n x m matrix of i.i.d. draws, row-major. Entry (i,j) uses counter i*m+j of
/// the stream, so the matrix is a pure function of (spec, n, m, seed).
std::vector<double> sampleUtilities(const DistributionSpec& spec, int n, int m,
                                    Seed seed);

Instance sampleInstance(const DistributionSpec& spec, std::vector<int> class_sizes,
                        int m, Seed seed);

/// i.i.d. draws with density lambda*exp(-lambda*(1-x)) on (-inf, 1].
std::vector<double> sampleReExpEdgeWeights(double lambda, int count, Seed seed);

}  // namespace classmatch
