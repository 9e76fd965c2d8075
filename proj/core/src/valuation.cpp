#include "classmatch/valuation.hpp"

#include <algorithm>
#include <cmath>

namespace classmatch {

MaxWeightMatcher makeSubMatcher(const Instance& inst,
                                const std::vector<int>& agents,
                                const std::vector<int>& items) {
  for (int a : agents)
    if (a < 0 || a >= inst.numAgents())
      throw InvalidInstance("agent index out of range");
  for (int j : items)
    if (j < 0 || j >= inst.numItems())
      throw InvalidInstance("item index out of range");
  std::vector<double> w(agents.size() * items.size());
  size_t idx = 0;
  for (int a : agents)
    for (int j : items) w[idx++] = inst.u(a, j);
  return MaxWeightMatcher(static_cast<int>(agents.size()),
                          static_cast<int>(items.size()), std::move(w));
}

std::vector<int> classAgents(const Instance& inst, int p) {
  std::vector<int> out;
  out.reserve(inst.classSize(p));
  for (int a = inst.classBegin(p); a < inst.classEnd(p); ++a) out.push_back(a);
  return out;
}

namespace {

AugmentStep toGlobal(const AugmentStep& s, const std::vector<int>& agents,
                     const std::vector<int>& items) {
  AugmentStep g = s;
  for (auto& [l, r] : g.added) {
    l = agents[l];
    r = items[r];
  }
  for (auto& [l, r] : g.removed) {
    l = agents[l];
    r = items[r];
  }
  g.start_left = agents[s.start_left];
  g.entered_right = items[s.entered_right];
  return g;
}

int bestEntry(const std::vector<double>& gains) {
  int best = -1;
  double bg = -std::numeric_limits<double>::infinity();
  for (int r = 0; r < static_cast<int>(gains.size()); ++r) {
    if (std::isnan(gains[r])) continue;
    if (gains[r] > bg) {
      bg = gains[r];
      best = r;
    }
  }
  return best;
}

}  // namespace

Matching maxWeightMatchingOfSize(const Instance& inst,
                                 const std::vector<int>& agents,
                                 const std::vector<int>& items, int r) {
  if (r < 0 || r > static_cast<int>(std::min(agents.size(), items.size())))
    throw InfeasibleSize("r exceeds min(|agents|, |items|)");
  Matching out;
  if (r == 0) return out;
  MaxWeightMatcher m = makeSubMatcher(inst, agents, items);
  for (int step = 0; step < r; ++step) {
    auto gains = m.entryGains();
    int target = bestEntry(gains);
    if (target == -1) throw InfeasibleSize("no augmenting path available");
    m.augmentTo(target);
  }
  for (int l = 0; l < m.numLeft(); ++l)
    if (m.matchOfLeft(l) != -1)
      out.pairs.emplace_back(agents[l], items[m.matchOfLeft(l)]);
  out.sortPairs();
  return out;
}

std::vector<AugmentStep> augmentingPathTrace(const Instance& inst,
                                             const std::vector<int>& agents,
                                             const std::vector<int>& items,
                                             int r) {
  if (r < 0 || r > static_cast<int>(std::min(agents.size(), items.size())))
    throw InfeasibleSize("r exceeds min(|agents|, |items|)");
  std::vector<AugmentStep> steps;
  if (r == 0) return steps;
  MaxWeightMatcher m = makeSubMatcher(inst, agents, items);
  steps.reserve(r);
  for (int step = 0; step < r; ++step) {
    auto gains = m.entryGains();
    int target = bestEntry(gains);
    if (target == -1) throw InfeasibleSize("no augmenting path available");
    steps.push_back(toGlobal(m.augmentTo(target), agents, items));
  }
  return steps;
}

double assignmentValuation(const Instance& inst, int p,
                           const std::vector<int>& bundle) {
  if (bundle.empty()) return 0.0;
  auto agents = classAgents(inst, p);
  const int r = static_cast<int>(std::min(agents.size(), bundle.size()));
  MaxWeightMatcher m = makeSubMatcher(inst, agents, bundle);
  for (int step = 0; step < r; ++step) {
    auto gains = m.entryGains();
    m.augmentTo(bestEntry(gains));
  }
  return m.value();
}

double marginalGain(const Instance& inst, int p, const std::vector<int>& bundle,
                    int item) {
  auto agents = classAgents(inst, p);
  std::vector<int> cols = bundle;
  cols.push_back(item);
  MaxWeightMatcher m = makeSubMatcher(inst, agents, cols);
  const int jr = static_cast<int>(cols.size()) - 1;
  m.deactivateRight(jr);
  const int r = static_cast<int>(std::min(agents.size(), bundle.size()));
  for (int step = 0; step < r; ++step) m.augmentTo(bestEntry(m.entryGains()));
  m.activateRight(jr);
  const double g = m.entryGains()[jr];
  return std::max(0.0, g);
}

std::vector<double> allMarginalGains(const Instance& inst, int p,
                                     const std::vector<int>& bundle) {
  auto agents = classAgents(inst, p);
  std::vector<int> cols;
  cols.reserve(inst.numItems());
  std::vector<char> in_bundle(inst.numItems(), 0);
  for (int j : bundle) in_bundle[j] = 1;
  for (int j : bundle) cols.push_back(j);
  for (int j = 0; j < inst.numItems(); ++j)
    if (!in_bundle[j]) cols.push_back(j);

  MaxWeightMatcher m = makeSubMatcher(inst, agents, cols);
  for (size_t c = bundle.size(); c < cols.size(); ++c)
    m.deactivateRight(static_cast<int>(c));
  const int r = static_cast<int>(std::min(agents.size(), bundle.size()));
  for (int step = 0; step < r; ++step) m.augmentTo(bestEntry(m.entryGains()));
  for (size_t c = bundle.size(); c < cols.size(); ++c)
    m.activateRight(static_cast<int>(c));

  auto gains = m.entryGains();
  std::vector<double> out(inst.numItems(),
                          std::numeric_limits<double>::quiet_NaN());
  for (size_t c = bundle.size(); c < cols.size(); ++c)
    out[cols[c]] = std::max(0.0, gains[c]);
  return out;
}

std::vector<double> allRemovalValues(const Instance& inst, int p,
                                     const std::vector<int>& bundle) {
  auto agents = classAgents(inst, p);
  std::vector<double> out(bundle.size(), 0.0);
  if (bundle.empty()) return out;
  MaxWeightMatcher m = makeSubMatcher(inst, agents, bundle);
  const int r = static_cast<int>(std::min(agents.size(), bundle.size()));
  for (int step = 0; step < r; ++step) m.augmentTo(bestEntry(m.entryGains()));
  for (size_t c = 0; c < bundle.size(); ++c) {
    if (m.matchOfRight(static_cast<int>(c)) == -1) {
      // Unmatched bundle items do not contribute; removal changes nothing.
      out[c] = m.value();
    } else {
      out[c] = m.removalValue(static_cast<int>(c));
    }
  }
  return out;
}

std::vector<int> favoriteBundle(const Instance& inst, int p, int r) {
  if (r < 0 || r > inst.numItems()) throw InfeasibleSize("bundle size out of range");
  std::vector<int> all_items(inst.numItems());
  for (int j = 0; j < inst.numItems(); ++j) all_items[j] = j;
  auto agents = classAgents(inst, p);
  MaxWeightMatcher m = makeSubMatcher(inst, agents, all_items);
  std::vector<int> bundle;
  bundle.reserve(r);
  for (int step = 0; step < r; ++step) {
    if (m.hasFreeLeft()) {
      auto gains = m.entryGains();
      // Highest marginal, lowest item index on exact ties.
      int best = -1;
      double bg = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < inst.numItems(); ++j) {
        if (std::isnan(gains[j])) continue;
        if (gains[j] > bg) {
          bg = gains[j];
          best = j;
        }
      }
      m.augmentTo(best);
      bundle.push_back(best);
    } else {
      // All agents matched: every further item has zero marginal value, so
      // extend by lowest-index unused items.
      for (int j = 0; j < inst.numItems() && static_cast<int>(bundle.size()) <= step;
           ++j)
        if (std::find(bundle.begin(), bundle.end(), j) == bundle.end())
          bundle.push_back(j);
    }
  }
  std::sort(bundle.begin(), bundle.end());
  return bundle;
}

}  // namespace classmatch
