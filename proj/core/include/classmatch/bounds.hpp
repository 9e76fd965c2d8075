#pragma once

#include <string>
#include <vector>

namespace classmatch {
namespace bounds {

struct DisjointBundleBound {
  double product;   // exact product of binomial ratios
  double exp_form;  // looser closed-form relaxation of the same chain
};

/// Lower bound on the probability that all classes' favorite size-n_p bundles
/// are pairwise disjoint (and hence a maximum-weight matching is class
/// envy-free): product over classes of C(m - prefix, n_p) / C(m, n_p).
DisjointBundleBound disjointBundleLowerBound(const std::vector<int>& class_sizes,
                                             int m);

/// Lower bound on E[X_p] for the round-robin output:
/// n_p − (1/alpha) * sum_{r=1..n_p} (1/r) * sum_{r'=1..r} 1/(m − r'·k).
/// Requires m > n_p * k so every denominator stays positive.
double lemma6LowerBound(int n_p, int m, int k, double alpha);

/// Leading part of the expected envy-gap lower bound:
/// D = (1 − 1/(2αk))(n_p − min) + (α/β − (n_q+1)/(α(m−k))) · min/n_q.
/// The trailing −O(min^{-1}) has an unspecified constant; callers get it as an
/// explicit caveat, never silently folded in.
struct ExpectedGap {
  double leading;              // D(n_p, n_q) as above
  bool unknown_constant_caveat = true;  // true: bound omits -O(min^{-1})
};
ExpectedGap lemma12ExpectedGap(int n_p, int n_q, int m, int k, double alpha,
                               double beta);

/// Upper-bound correction term with caller-supplied edge-weight expectations:
/// min − (α/β) * sum_{r=1..min} (1/r) * sum_{r'=1..r} W[r'-1]/(n_q − r' + 2).
double lemma7UpperBound(int n_p, int n_q, double alpha, double beta,
                        const std::vector<double>& expected_w);
/// Same with every W = 1.
double lemma7UpperBoundUnitW(int n_p, int n_q, double alpha, double beta);

/// sum_{r=1..min(n_p,n_q)} (1/r) * sum_{r'=1..r} 1/(n_q − r' + 2);
/// bounded by pi^2/6 + o(1).
double lemma13DoubleSum(int n_p, int n_q);

enum class RandAssignFormula { kPaperInline, kCoppersmithSorkin };

/// Expected minimum total weight of a matching with r edges under i.i.d.
/// rate-1 exponential weights on n x m.
///   kPaperInline:       sum_{i=1..r} (1/n) sum_{j=0..i-1} 1/(m-j)
///   kCoppersmithSorkin: sum_{i,j>=0, i+j<r} 1/((n-i)(m-j))
double randomAssignmentExpectation(int n, int m, int r, RandAssignFormula f);

}  // namespace bounds
}  // namespace classmatch
