#include "classmatch/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace classmatch {
namespace bounds {

namespace {

double logChoose(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

DisjointBundleBound disjointBundleLowerBound(const std::vector<int>& class_sizes,
                                             int m) {
  const int k = static_cast<int>(class_sizes.size());
  if (k < 1) throw std::invalid_argument("need at least one class");
  int total = 0;
  for (int s : class_sizes) {
    if (s < 1) throw std::invalid_argument("class sizes must be >= 1");
    total += s;
  }
  if (m < total)
    throw std::invalid_argument("m must be at least the number of agents");

  double log_product = 0.0;
  int prefix = 0;
  for (int p = 0; p < k; ++p) {
    log_product += logChoose(m - prefix, class_sizes[p]) - logChoose(m, class_sizes[p]);
    prefix += class_sizes[p];
  }

  // Relaxed exponential form from the same chain of inequalities.
  double exponent = 0.0;
  prefix = class_sizes[0];
  for (int p = 1; p < k; ++p) {
    exponent += static_cast<double>(prefix) * class_sizes[p] / (m - prefix + 1.0);
    prefix += class_sizes[p];
  }

  return {std::exp(log_product), std::exp(-exponent)};
}

double lemma6LowerBound(int n_p, int m, int k, double alpha) {
  if (n_p < 1 || m < 1 || k < 1) throw std::invalid_argument("counts must be >= 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (m <= n_p * k)
    throw std::invalid_argument(
        "condition violated: need m > n_p*k for positive denominators");
  double inner = 0.0, total = 0.0;
  for (int r = 1; r <= n_p; ++r) {
    inner += 1.0 / (m - static_cast<double>(r) * k);
    total += inner / r;
  }
  return n_p - total / alpha;
}

ExpectedGap lemma12ExpectedGap(int n_p, int n_q, int m, int k, double alpha,
                               double beta) {
  if (n_p < 1 || n_q < 1 || k < 1) throw std::invalid_argument("counts must be >= 1");
  if (!(alpha > 0.0) || !(alpha <= beta))
    throw std::invalid_argument("need 0 < alpha <= beta");
  if (m <= k) throw std::invalid_argument("need m > k");
  const double mn = std::min(n_p, n_q);
  const double leading =
      (1.0 - 1.0 / (2.0 * alpha * k)) * (n_p - mn) +
      (alpha / beta - (n_q + 1.0) / (alpha * (m - k))) * mn / n_q;
  return {leading, true};
}

double lemma7UpperBound(int n_p, int n_q, double alpha, double beta,
                        const std::vector<double>& expected_w) {
  const int mn = std::min(n_p, n_q);
  if (static_cast<int>(expected_w.size()) < mn)
    throw std::invalid_argument("need an E[W] entry per round up to min(n_p,n_q)");
  double inner = 0.0, total = 0.0;
  for (int r = 1; r <= mn; ++r) {
    inner += expected_w[r - 1] / (n_q - r + 2.0);
    total += inner / r;
  }
  return mn - (alpha / beta) * total;
}

double lemma7UpperBoundUnitW(int n_p, int n_q, double alpha, double beta) {
  return lemma7UpperBound(n_p, n_q, alpha, beta,
                          std::vector<double>(std::min(n_p, n_q), 1.0));
}

double lemma13DoubleSum(int n_p, int n_q) {
  if (n_p < 1 || n_q < 1) throw std::invalid_argument("counts must be >= 1");
  const int mn = std::min(n_p, n_q);
  double inner = 0.0, total = 0.0;
  for (int r = 1; r <= mn; ++r) {
    inner += 1.0 / (n_q - r + 2.0);
    total += inner / r;
  }
  return total;
}

double randomAssignmentExpectation(int n, int m, int r, RandAssignFormula f) {
  if (n < 1 || m < 1) throw std::invalid_argument("counts must be >= 1");
  if (r < 0 || r > std::min(n, m))
    throw std::invalid_argument("infeasible matching size r");
  double total = 0.0;
  if (f == RandAssignFormula::kPaperInline) {
    double inner = 0.0;
    for (int i = 1; i <= r; ++i) {
      inner += 1.0 / (m - (i - 1));
      total += inner / n;
    }
  } else {
    for (int i = 0; i < r; ++i)
      for (int j = 0; i + j < r; ++j)
        total += 1.0 / (static_cast<double>(n - i) * (m - j));
  }
  return total;
}

}  // namespace bounds
}  // namespace classmatch
