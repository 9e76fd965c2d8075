#pragma once

#include <vector>

#include "classmatch/matching.hpp"
#include "classmatch/types.hpp"

namespace classmatch {

/// Builds a matcher over the given agent rows and item columns of an
/// instance. Local indices follow the order of the supplied vectors.
MaxWeightMatcher makeSubMatcher(const Instance& inst,
                                const std::vector<int>& agents,
                                const std::vector<int>& items);

/// Agents of class p, ascending.
std::vector<int> classAgents(const Instance& inst, int p);

/// Maximum-weight matching with exactly r edges between the subsets, built by
/// r successive best augmentations. Pairs are (agent, item) in instance
/// indices, sorted. Throws InfeasibleSize when r > min(|agents|, |items|).
Matching maxWeightMatchingOfSize(const Instance& inst,
                                 const std::vector<int>& agents,
                                 const std::vector<int>& items, int r);

/// Same, returning the per-step alternating paths (instance indices).
std::vector<AugmentStep> augmentingPathTrace(const Instance& inst,
                                             const std::vector<int>& agents,
                                             const std::vector<int>& items, int r);

/// v_p(bundle): value of the maximum-weight matching between class p and the
/// bundle, of size min(n_p, |bundle|).
double assignmentValuation(const Instance& inst, int p,
                           const std::vector<int>& bundle);

/// v_p(bundle ∪ {item}) − v_p(bundle); item must not lie in bundle.
double marginalGain(const Instance& inst, int p, const std::vector<int>& bundle,
                    int item);

/// Marginal gain of every item outside the bundle, NaN inside it. One solve
/// plus one gains query, so batch audits stay cheap.
std::vector<double> allMarginalGains(const Instance& inst, int p,
                                     const std::vector<int>& bundle);

/// v_p(bundle ∖ {j}) for every j in bundle (same order as `bundle`).
std::vector<double> allRemovalValues(const Instance& inst, int p,
                                     const std::vector<int>& bundle);

/// Size-r bundle maximizing v_p, grown greedily by highest marginal gain
/// (ties: lowest item index). Returns ascending item indices.
std::vector<int> favoriteBundle(const Instance& inst, int p, int r);

}  // namespace classmatch
