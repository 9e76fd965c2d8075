#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace classmatch {

/// Absolute tolerance used for all weight comparisons unless overridden.
inline constexpr double kDefaultTol = 1e-9;

/// Comparison helpers for accumulated floating-point weights. "Strictly
/// greater" requires a gap larger than tol, so ties within tolerance never
/// count as envy or desire.
struct Tol {
  double tol = kDefaultTol;
  bool gt(double a, double b) const { return a > b + tol; }
  bool ge(double a, double b) const { return a >= b - tol; }
  bool eq(double a, double b) const { return a <= b + tol && b <= a + tol; }
};

struct InvalidInstance : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InfeasibleSize : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct MalformedMatching : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Agents partitioned into classes plus a dense utility matrix. Utilities are
/// expected in [0,1] for sampled inputs, but any non-negative reals are
/// accepted so that integer worked examples run unmodified.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<int> class_sizes, int num_items,
           std::vector<double> utilities_row_major)
      : class_sizes_(std::move(class_sizes)),
        m_(num_items),
        u_(std::move(utilities_row_major)) {
    n_ = 0;
    for (int s : class_sizes_) n_ += s;
    class_offsets_.reserve(class_sizes_.size() + 1);
    int off = 0;
    for (int s : class_sizes_) {
      class_offsets_.push_back(off);
      off += s;
    }
    class_offsets_.push_back(off);
    validate();
  }

  static Instance fromNested(std::vector<int> class_sizes,
                             const std::vector<std::vector<double>>& rows) {
    int m = rows.empty() ? 0 : static_cast<int>(rows[0].size());
    std::vector<double> flat;
    flat.reserve(rows.size() * m);
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != m)
        throw InvalidInstance("utility rows have unequal lengths");
      flat.insert(flat.end(), row.begin(), row.end());
    }
    return Instance(std::move(class_sizes), m, std::move(flat));
  }

  int numAgents() const { return n_; }
  int numItems() const { return m_; }
  int numClasses() const { return static_cast<int>(class_sizes_.size()); }
  int classSize(int p) const { return class_sizes_[p]; }
  const std::vector<int>& classSizes() const { return class_sizes_; }
  int classBegin(int p) const { return class_offsets_[p]; }
  int classEnd(int p) const { return class_offsets_[p + 1]; }
  int classOf(int agent) const {
    for (int p = 0; p + 1 < static_cast<int>(class_offsets_.size()); ++p)
      if (agent < class_offsets_[p + 1]) return p;
    return -1;
  }
  double u(int agent, int item) const { return u_[agent * m_ + item]; }
  const std::vector<double>& utilitiesFlat() const { return u_; }

 private:
  void validate() const {
    if (class_sizes_.empty()) throw InvalidInstance("no classes");
    for (int s : class_sizes_)
      if (s < 1) throw InvalidInstance("class sizes must be >= 1");
    if (n_ < 1 || m_ < 1) throw InvalidInstance("need at least one agent and one item");
    if (static_cast<int>(u_.size()) != n_ * m_)
      throw InvalidInstance("utility matrix shape does not match agents x items");
    for (double w : u_)
      if (!(w >= 0.0)) throw InvalidInstance("utilities must be non-negative reals");
  }

  std::vector<int> class_sizes_;
  std::vector<int> class_offsets_;
  int n_ = 0;
  int m_ = 0;
  std::vector<double> u_;  // row-major n x m
};

/// A set of agent-item pairs, at most one per agent and per item.
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  void validateFor(const Instance& inst) const {
    std::vector<char> agent_seen(inst.numAgents(), 0), item_seen(inst.numItems(), 0);
    for (auto [a, j] : pairs) {
      if (a < 0 || a >= inst.numAgents() || j < 0 || j >= inst.numItems())
        throw MalformedMatching("pair index out of range");
      if (agent_seen[a]++) throw MalformedMatching("agent matched twice");
      if (item_seen[j]++) throw MalformedMatching("item matched twice");
    }
  }

  /// Items matched to agents of class p, ascending.
  std::vector<int> bundle(const Instance& inst, int p) const {
    std::vector<int> out;
    for (auto [a, j] : pairs)
      if (a >= inst.classBegin(p) && a < inst.classEnd(p)) out.push_back(j);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Realized utility u_p(M): sum of class p's matched edge weights.
  double classUtility(const Instance& inst, int p) const {
    double s = 0;
    for (auto [a, j] : pairs)
      if (a >= inst.classBegin(p) && a < inst.classEnd(p)) s += inst.u(a, j);
    return s;
  }

  double totalWeight(const Instance& inst) const {
    double s = 0;
    for (auto [a, j] : pairs) s += inst.u(a, j);
    return s;
  }

  void sortPairs() {
    std::sort(pairs.begin(), pairs.end());
  }
};

}  // namespace classmatch
