#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "classmatch/types.hpp"

namespace classmatch {

/// One augmentation step: the alternating path applied to grow the matching
/// by one edge. Replaying steps in order (drop `removed`, insert `added`)
/// reproduces the matching exactly.
struct AugmentStep {
  std::vector<std::pair<int, int>> added;
  std::vector<std::pair<int, int>> removed;
  int start_left = -1;     // left vertex that becomes matched
  int entered_right = -1;  // right vertex that becomes matched
  double gain = 0.0;       // change in total weight
};

/// Incremental maximum-weight matching on a dense bipartite graph.
///
/// Grows one edge per phase along the best augmenting path, so after r phases
/// the matching is a maximum-weight matching with exactly r edges (successive
/// shortest paths on negated weights, with dual potentials kept feasible
/// across phases). Weights may be any reals. Rights can be deactivated and
/// later reactivated while unmatched; matched rights stay active.
class MaxWeightMatcher {
 public:
  MaxWeightMatcher(int num_left, int num_right, std::vector<double> weights);

  int numLeft() const { return L_; }
  int numRight() const { return R_; }
  int size() const { return size_; }
  double value() const { return value_; }
  double weight(int l, int r) const { return w_[static_cast<size_t>(l) * R_ + r]; }
  int matchOfLeft(int l) const { return match_l_[l]; }
  int matchOfRight(int r) const { return match_r_[r]; }
  bool rightActive(int r) const { return active_[r]; }
  bool hasFreeLeft() const { return size_ < L_; }

  void deactivateRight(int r);
  void activateRight(int r);

  /// Marginal value of each free active right j: v(matched ∪ {j}) − v(matched),
  /// where v is the max-weight matching value with at most numLeft() edges.
  /// Entries for matched or inactive rights are NaN. When a free left exists
  /// this is the best augmenting-path gain; otherwise the best same-size swap.
  std::vector<double> entryGains() const;

  /// Augment along the best path ending at `right`. Pre: a free left exists,
  /// `right` is free+active and attains the maximum augmenting gain (ties
  /// allowed). Use argmax of entryGains(), lowest index on ties.
  AugmentStep augmentTo(int right);

  /// Augment along the overall best path (max gain, ties -> lowest right
  /// index). Returns nullopt when no augmentation is possible.
  std::optional<AugmentStep> augmentBest();

  /// Value of the best matching after deleting matched right `b` (keeping at
  /// most numLeft() edges). Pure query. Requires non-negative weights for the
  /// unrestricted-size semantics to coincide with min(|A|,|B|-1).
  double removalValue(int b) const;

  /// removalValue for every matched right; NaN elsewhere.
  std::vector<double> removalValues() const;

 private:
  struct Phase {
    std::vector<double> minv;   // reduced distance per right
    std::vector<int> pred;      // best predecessor left per right
    std::vector<double> dl;     // reduced distance per left
    bool valid = false;
  };

  void runPhaseDijkstra() const;
  std::vector<double> swapGains() const;

  int L_, R_;
  std::vector<double> w_;  // row-major L x R
  std::vector<char> active_;
  std::vector<int> match_l_, match_r_;
  std::vector<double> pl_, pr_;  // dual potentials (min-cost convention, c = -w)
  double value_ = 0.0;
  int size_ = 0;
  mutable Phase phase_;
};

/// Applies a sequence of augmentation steps to an (initially empty) pair set.
std::vector<std::pair<int, int>> replaySteps(const std::vector<AugmentStep>& steps);

}  // namespace classmatch
