#include "classmatch/matching.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <set>

namespace classmatch {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

MaxWeightMatcher::MaxWeightMatcher(int num_left, int num_right,
                                   std::vector<double> weights)
    : L_(num_left),
      R_(num_right),
      w_(std::move(weights)),
      active_(num_right, 1),
      match_l_(num_left, -1),
      match_r_(num_right, -1),
      pl_(num_left, 0.0),
      pr_(num_right, 0.0) {
  if (L_ < 1 || R_ < 1) throw InfeasibleSize("matcher needs at least 1x1");
  if (static_cast<int>(w_.size()) != L_ * R_)
    throw InfeasibleSize("weight matrix shape mismatch");
  // Initial duals: pr[r] = min_l (-w(l,r)) makes every reduced cost
  // c(l,r) + pl[l] - pr[r] non-negative.
  for (int r = 0; r < R_; ++r) {
    double mn = kInf;
    for (int l = 0; l < L_; ++l) mn = std::min(mn, -weight(l, r));
    pr_[r] = mn;
  }
}

void MaxWeightMatcher::deactivateRight(int r) {
  if (match_r_[r] != -1) throw std::logic_error("cannot deactivate a matched right");
  active_[r] = 0;
  phase_.valid = false;
}

void MaxWeightMatcher::activateRight(int r) {
  // Safe: left potentials only grow, so this right's reduced costs are still
  // non-negative against its frozen dual.
  active_[r] = 1;
  phase_.valid = false;
}

void MaxWeightMatcher::runPhaseDijkstra() const {
  auto& ph = phase_;
  ph.minv.assign(R_, kInf);
  ph.pred.assign(R_, -1);
  ph.dl.assign(L_, kInf);

  // Seeds: every free left l enters at reduced distance -pl[l] (arcs from the
  // implicit source carry cost 0 and free-left potentials stay <= 0).
  for (int l = 0; l < L_; ++l) {
    if (match_l_[l] != -1) continue;
    ph.dl[l] = -pl_[l];
    const double base = ph.dl[l] + pl_[l];  // = 0
    for (int r = 0; r < R_; ++r) {
      if (!active_[r]) continue;
      const double red = std::max(0.0, base - weight(l, r) - pr_[r]);
      if (red < ph.minv[r]) {
        ph.minv[r] = red;
        ph.pred[r] = l;
      }
    }
  }

  std::vector<char> done(R_, 0);
  for (int iter = 0; iter < R_; ++iter) {
    int r0 = -1;
    double best = kInf;
    for (int r = 0; r < R_; ++r)
      if (active_[r] && !done[r] && ph.minv[r] < best) {
        best = ph.minv[r];
        r0 = r;
      }
    if (r0 == -1) break;
    done[r0] = 1;
    const int l0 = match_r_[r0];
    if (l0 == -1) continue;  // free rights do not extend alternating paths
    // The matched arc (r0 -> l0) is tight, so the label just carries over.
    ph.dl[l0] = ph.minv[r0];
    const double base = ph.dl[l0] + pl_[l0];
    for (int r = 0; r < R_; ++r) {
      if (!active_[r] || done[r]) continue;
      const double cand = base - weight(l0, r) - pr_[r];
      const double red = std::max(ph.dl[l0], cand);  // clamp fp noise below d(l0)
      if (red < ph.minv[r]) {
        ph.minv[r] = red;
        ph.pred[r] = l0;
      }
    }
  }
  ph.valid = true;
}

std::vector<double> MaxWeightMatcher::entryGains() const {
  if (hasFreeLeft()) {
    if (!phase_.valid) runPhaseDijkstra();
    std::vector<double> gains(R_, kNaN);
    for (int r = 0; r < R_; ++r) {
      if (!active_[r] || match_r_[r] != -1) continue;
      gains[r] = phase_.minv[r] == kInf ? kNaN : -(phase_.minv[r] + pr_[r]);
    }
    return gains;
  }
  return swapGains();
}

std::vector<double> MaxWeightMatcher::swapGains() const {
  // Same-size exchange: a free right j enters, some matched right leaves.
  // Multi-source Dijkstra over the residual graph from all matched rights,
  // seeded so accumulated labels recover raw path costs.
  std::vector<double> gains(R_, kNaN);
  if (size_ == 0) return gains;  // no free left and size 0 cannot happen (L>=1)

  double maxpr = -kInf;
  for (int r = 0; r < R_; ++r)
    if (match_r_[r] != -1) maxpr = std::max(maxpr, pr_[r]);

  std::vector<double> dist(R_, kInf);
  std::vector<char> done(R_, 0);
  // dist over rights; lefts are expanded eagerly when their right is popped.
  for (int r = 0; r < R_; ++r)
    if (match_r_[r] != -1) dist[r] = maxpr - pr_[r];

  for (int iter = 0; iter < R_; ++iter) {
    int r0 = -1;
    double best = kInf;
    for (int r = 0; r < R_; ++r)
      if (active_[r] && !done[r] && dist[r] < best) {
        best = dist[r];
        r0 = r;
      }
    if (r0 == -1) break;
    done[r0] = 1;
    const int l0 = match_r_[r0];
    if (l0 == -1) continue;  // free right: terminal, nothing to extend
    // Unmatch (l0, r0): reduced cost of the matched arc is 0.
    const double dl0 = dist[r0];
    const double base = dl0 + pl_[l0];
    for (int r = 0; r < R_; ++r) {
      if (!active_[r] || done[r] || r == r0) continue;
      const double red = std::max(dl0, base - weight(l0, r) - pr_[r]);
      if (red < dist[r]) dist[r] = red;
    }
  }

  for (int r = 0; r < R_; ++r) {
    if (!active_[r] || match_r_[r] != -1) continue;
    if (dist[r] == kInf) continue;
    const double raw = dist[r] - maxpr + pr_[r];
    gains[r] = std::max(0.0, -raw);  // never worse than not adding the item
  }
  return gains;
}

AugmentStep MaxWeightMatcher::augmentTo(int right) {
  assert(hasFreeLeft());
  assert(active_[right] && match_r_[right] == -1);
  if (!phase_.valid) runPhaseDijkstra();
  auto& ph = phase_;
  assert(ph.minv[right] < kInf);

  AugmentStep step;
  step.entered_right = right;
  const double cap = ph.minv[right];

  // Rebuild the alternating path from the predecessor chain.
  int r = right;
  while (true) {
    const int l = ph.pred[r];
    assert(l != -1);
    step.added.emplace_back(l, r);
    const int prev_r = match_l_[l];
    match_l_[l] = r;
    match_r_[r] = l;
    if (prev_r == -1) {
      step.start_left = l;
      break;
    }
    step.removed.emplace_back(l, prev_r);
    r = prev_r;
  }
  double gain = 0.0;
  for (auto [l, rr] : step.added) gain += weight(l, rr);
  for (auto [l, rr] : step.removed) gain -= weight(l, rr);
  step.gain = gain;
  value_ += gain;
  ++size_;

  // Dual update capped at the target's label keeps all reduced costs >= 0 and
  // the new matched arcs tight.
  for (int rr = 0; rr < R_; ++rr)
    if (active_[rr] && ph.minv[rr] < kInf) pr_[rr] += std::min(ph.minv[rr], cap);
  for (int l = 0; l < L_; ++l)
    if (ph.dl[l] < kInf) pl_[l] += std::min(ph.dl[l], cap);

  phase_.valid = false;
  return step;
}

std::optional<AugmentStep> MaxWeightMatcher::augmentBest() {
  if (!hasFreeLeft()) return std::nullopt;
  if (!phase_.valid) runPhaseDijkstra();
  int best_r = -1;
  double best_gain = -kInf;
  for (int r = 0; r < R_; ++r) {
    if (!active_[r] || match_r_[r] != -1 || phase_.minv[r] == kInf) continue;
    const double gain = -(phase_.minv[r] + pr_[r]);
    if (gain > best_gain) {
      best_gain = gain;
      best_r = r;
    }
  }
  if (best_r == -1) return std::nullopt;
  return augmentTo(best_r);
}

double MaxWeightMatcher::removalValue(int b) const {
  const int lb = match_r_[b];
  if (lb == -1) throw std::logic_error("removalValue requires a matched right");

  // Best repair after deleting b: an alternating walk from lb that ends by
  // re-matching into a free right (size kept) or by leaving some left
  // unmatched (size shrinks by one). Labels are reduced; seeds absorb the
  // start potential so raw costs come back out at the terminals.
  std::vector<double> dist_r(R_, kInf);
  std::vector<double> dist_l(L_, kInf);
  std::vector<char> done(R_, 0);
  dist_l[lb] = 0.0;
  for (int r = 0; r < R_; ++r) {
    if (!active_[r] || r == b) continue;
    dist_r[r] = std::max(0.0, -weight(lb, r) + pl_[lb] - pr_[r]);
  }

  for (int iter = 0; iter < R_; ++iter) {
    int r0 = -1;
    double best = kInf;
    for (int r = 0; r < R_; ++r)
      if (active_[r] && !done[r] && r != b && dist_r[r] < best) {
        best = dist_r[r];
        r0 = r;
      }
    if (r0 == -1) break;
    done[r0] = 1;
    const int l0 = match_r_[r0];
    if (l0 == -1) continue;
    dist_l[l0] = dist_r[r0];
    const double base = dist_l[l0] + pl_[l0];
    for (int r = 0; r < R_; ++r) {
      if (!active_[r] || done[r] || r == b) continue;
      const double red = std::max(dist_l[l0], base - weight(l0, r) - pr_[r]);
      if (red < dist_r[r]) dist_r[r] = red;
    }
  }

  double best_patch = 0.0;  // drop lb outright
  for (int l = 0; l < L_; ++l) {
    if (dist_l[l] == kInf) continue;
    const double raw = dist_l[l] + pl_[l] - pl_[lb];
    best_patch = std::max(best_patch, -raw);
  }
  for (int r = 0; r < R_; ++r) {
    if (!active_[r] || r == b || match_r_[r] != -1 || dist_r[r] == kInf) continue;
    const double raw = dist_r[r] + pr_[r] - pl_[lb];
    best_patch = std::max(best_patch, -raw);
  }
  return value_ - weight(lb, b) + best_patch;
}

std::vector<double> MaxWeightMatcher::removalValues() const {
  std::vector<double> out(R_, kNaN);
  for (int r = 0; r < R_; ++r)
    if (match_r_[r] != -1) out[r] = removalValue(r);
  return out;
}

std::vector<std::pair<int, int>> replaySteps(const std::vector<AugmentStep>& steps) {
  std::set<std::pair<int, int>> cur;
  for (const auto& s : steps) {
    for (auto e : s.removed) cur.erase(e);
    for (auto e : s.added) cur.insert(e);
  }
  return {cur.begin(), cur.end()};
}

}  // namespace classmatch
