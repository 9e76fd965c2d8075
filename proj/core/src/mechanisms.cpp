#include "classmatch/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>

#include "classmatch/valuation.hpp"

namespace classmatch {

namespace {

AugmentStep remapStep(const AugmentStep& s, const std::vector<int>& agents) {
  AugmentStep g = s;
  for (auto& [l, r] : g.added) l = agents[l];
  for (auto& [l, r] : g.removed) l = agents[l];
  g.start_left = agents[s.start_left];
  return g;
}

}  // namespace

RoundRobinResult roundRobin(const Instance& inst, Tol tol) {
  const int k = inst.numClasses();
  const int m = inst.numItems();

  std::vector<std::vector<int>> agents(k);
  std::vector<MaxWeightMatcher> matchers;
  matchers.reserve(k);
  for (int p = 0; p < k; ++p) {
    agents[p] = classAgents(inst, p);
    std::vector<int> all_items(m);
    std::iota(all_items.begin(), all_items.end(), 0);
    matchers.push_back(makeSubMatcher(inst, agents[p], all_items));
  }

  RoundRobinResult res;
  std::vector<char> taken(m, 0);
  for (int round = 1; round <= m + 1; ++round) {
    bool any = false;
    for (int p = 0; p < k; ++p) {
      auto& mp = matchers[p];
      // A class with all agents matched never desires another item: its bundle
      // is greedy-optimal among everything it has seen, so every remaining
      // marginal is zero.
      if (!mp.hasFreeLeft()) continue;
      auto gains = mp.entryGains();
      int best = -1;
      double bg = -std::numeric_limits<double>::infinity();
      for (int j = 0; j < m; ++j) {
        if (taken[j] || std::isnan(gains[j])) continue;
        if (gains[j] > bg) {
          bg = gains[j];
          best = j;
        }
      }
      if (best == -1 || !tol.gt(bg, 0.0)) continue;  // class p desires nothing
      AugmentStep step = mp.augmentTo(best);
      taken[best] = 1;
      for (int q = 0; q < k; ++q)
        if (q != p) matchers[q].deactivateRight(best);
      RoundEvent ev;
      ev.round = round;
      ev.class_index = p;
      ev.item = best;
      ev.marginal = bg;
      ev.step = remapStep(step, agents[p]);
      res.trace.events.push_back(std::move(ev));
      any = true;
    }
    if (!any) break;
  }

  res.class_values.resize(k);
  for (int p = 0; p < k; ++p) {
    res.class_values[p] = matchers[p].value();
    for (int l = 0; l < matchers[p].numLeft(); ++l)
      if (matchers[p].matchOfLeft(l) != -1)
        res.matching.pairs.emplace_back(agents[p][l], matchers[p].matchOfLeft(l));
  }
  res.matching.sortPairs();
  return res;
}

Matching maxWeightMechanism(const Instance& inst) {
  const int n = inst.numAgents();
  const int m = inst.numItems();
  const int r = std::min(n, m);
  std::vector<int> all_agents(n);
  std::iota(all_agents.begin(), all_agents.end(), 0);

  // Some optimal size-r matching lies inside the union of every agent's top-r
  // columns (swap any other matched item for an unused, weakly better one),
  // so wide instances can be pruned before the solve.
  std::vector<int> items;
  if (m > 16 * r) {
    std::vector<char> keep(m, 0);
    std::vector<int> idx(m);
    for (int a = 0; a < n; ++a) {
      std::iota(idx.begin(), idx.end(), 0);
      std::partial_sort(idx.begin(), idx.begin() + r, idx.end(),
                        [&](int x, int y) {
                          if (inst.u(a, x) != inst.u(a, y))
                            return inst.u(a, x) > inst.u(a, y);
                          return x < y;
                        });
      for (int c = 0; c < r; ++c) keep[idx[c]] = 1;
    }
    for (int j = 0; j < m; ++j)
      if (keep[j]) items.push_back(j);
  } else {
    items.resize(m);
    std::iota(items.begin(), items.end(), 0);
  }
  return maxWeightMatchingOfSize(inst, all_agents, items, r);
}

Matching greedyHouseAllocation(const Instance& inst, CollisionPolicy policy) {
  const int n = inst.numAgents();
  const int m = inst.numItems();
  if (m < n)
    throw MechanismInfeasible("greedy house allocation needs at least one item per agent");

  std::vector<int> holder(m, -1);
  std::vector<int> assigned(n, -1);
  std::vector<char> discarded(m, 0);
  std::deque<int> queue;
  for (int a = 0; a < n; ++a) queue.push_back(a);

  auto favorite = [&](int a) {
    int best = -1;
    double bu = -1.0;
    for (int j = 0; j < m; ++j) {
      if (discarded[j]) continue;
      if (inst.u(a, j) > bu) {
        bu = inst.u(a, j);
        best = j;
      }
    }
    return best;
  };

  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    if (assigned[a] != -1) continue;
    while (true) {
      const int j = favorite(a);
      if (j == -1)
        throw MechanismInfeasible("greedy house allocation ran out of items");
      if (holder[j] == -1) {
        holder[j] = a;
        assigned[a] = j;
        break;
      }
      // Collision: j was chosen in an earlier step; remove it from further
      // consideration.
      discarded[j] = 1;
      if (policy == CollisionPolicy::kReclaim) {
        const int h = holder[j];
        holder[j] = -1;
        assigned[h] = -1;
        queue.push_back(h);
      }
      if (policy == CollisionPolicy::kDefer) {
        queue.push_back(a);
        break;
      }
    }
  }

  Matching out;
  for (int a = 0; a < n; ++a)
    if (assigned[a] != -1) out.pairs.emplace_back(a, assigned[a]);
  out.sortPairs();
  return out;
}

namespace {

// An envy cycle ordered so consecutive classes satisfy "cycle[i] envies
// cycle[i+1]". Pre: every class is envied (in-degree >= 1), so walking
// backwards along lowest-index enviers from class 0 must repeat.
std::vector<int> findEnvyCycle(const std::vector<std::vector<char>>& envies) {
  const int k = static_cast<int>(envies.size());
  std::vector<int> path;
  std::vector<int> pos(k, -1);
  int cur = 0;
  while (pos[cur] == -1) {
    pos[cur] = static_cast<int>(path.size());
    path.push_back(cur);
    int prev = -1;
    for (int p = 0; p < k; ++p)
      if (p != cur && envies[p][cur]) {
        prev = p;
        break;
      }
    cur = prev;
  }
  std::vector<int> cycle(path.begin() + pos[cur], path.end());
  std::reverse(cycle.begin(), cycle.end());
  return cycle;
}

}  // namespace

EnvyGraphResult envyGraphAllocate(const Instance& inst, Tol tol) {
  const int k = inst.numClasses();
  const int m = inst.numItems();
  std::vector<std::vector<int>> bundles(k);
  std::vector<double> own_value(k, 0.0);

  auto cross = [&](int p, const std::vector<int>& bundle) {
    return assignmentValuation(inst, p, bundle);
  };

  for (int j = 0; j < m; ++j) {
    while (true) {
      std::vector<std::vector<char>> envies(k, std::vector<char>(k, 0));
      std::vector<char> envied(k, 0);
      for (int p = 0; p < k; ++p)
        for (int q = 0; q < k; ++q) {
          if (p == q) continue;
          if (tol.gt(cross(p, bundles[q]), own_value[p])) {
            envies[p][q] = 1;
            envied[q] = 1;
          }
        }
      int source = -1;
      for (int p = 0; p < k; ++p)
        if (!envied[p]) {
          source = p;
          break;
        }
      if (source != -1) {
        bundles[source].push_back(j);
        std::sort(bundles[source].begin(), bundles[source].end());
        own_value[source] = cross(source, bundles[source]);
        break;
      }
      // Every class is envied: rotate bundles along an envy cycle. Each class
      // on the cycle strictly gains, so this terminates.
      auto cycle = findEnvyCycle(envies);
      std::vector<std::vector<int>> rotated(cycle.size());
      for (size_t i = 0; i < cycle.size(); ++i)
        rotated[i] = bundles[cycle[(i + 1) % cycle.size()]];
      for (size_t i = 0; i < cycle.size(); ++i) {
        bundles[cycle[i]] = std::move(rotated[i]);
        own_value[cycle[i]] = cross(cycle[i], bundles[cycle[i]]);
      }
    }
  }

  EnvyGraphResult res;
  res.bundles = bundles;
  for (int p = 0; p < k; ++p) {
    if (bundles[p].empty()) continue;
    auto agents = classAgents(inst, p);
    const int r = static_cast<int>(
        std::min(agents.size(), bundles[p].size()));
    Matching mp = maxWeightMatchingOfSize(inst, agents, bundles[p], r);
    for (auto pr : mp.pairs) res.matching.pairs.push_back(pr);
  }
  res.matching.sortPairs();
  return res;
}

Matching envyGraphMechanism(const Instance& inst, Tol tol) {
  return envyGraphAllocate(inst, tol).matching;
}

}  // namespace classmatch
