#pragma once

#include <stdexcept>
#include <vector>

#include "classmatch/matching.hpp"
#include "classmatch/types.hpp"

namespace classmatch {

struct MechanismInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One pick in the round-robin run: class `class_index` took `item` in round
/// `round` (1-based) for marginal value `marginal`, applying `step` to its
/// internal matching.
struct RoundEvent {
  int round = 0;
  int class_index = -1;
  int item = -1;
  double marginal = 0.0;
  AugmentStep step;
};

struct RoundTrace {
  std::vector<RoundEvent> events;
};

struct RoundRobinResult {
  Matching matching;
  RoundTrace trace;
  std::vector<double> class_values;  // v_p(M(N_p)) = u_p(M) under this mechanism
};

/// Round-robin for classes with assignment valuations: in index order, each
/// class that desires a remaining item (marginal gain > tol) takes an
/// argmax-marginal item (lowest index on ties) and re-optimizes its internal
/// matching; the loop ends when no class desires any remaining item.
RoundRobinResult roundRobin(const Instance& inst, Tol tol = {});

/// Maximum-weight matching of size min(n, m) over all agents and items.
Matching maxWeightMechanism(const Instance& inst);

enum class CollisionPolicy {
  kRepick,   // contested item is discarded, holder keeps it, picker re-picks now
  kDefer,    // as kRepick, but the picker goes to the back of the queue
  kReclaim,  // contested item is discarded and its holder re-enters the queue
};

/// Agents pick their favorite non-discarded item in index order; a pick that
/// hits an item chosen in an earlier step removes that item from further
/// consideration, with the collision handled per `policy`. Requires m >= n.
/// kReclaim can exhaust the item pool on adversarial inputs and then throws.
Matching greedyHouseAllocation(const Instance& inst,
                               CollisionPolicy policy = CollisionPolicy::kRepick);

struct EnvyGraphResult {
  Matching matching;                      // per-class optimal matchings
  std::vector<std::vector<int>> bundles;  // all m items, one bundle per class
};

/// Envy-graph procedure with assignment valuations: each item goes to a class
/// nobody envies, resolving envy cycles by bundle rotation first. Allocates
/// every item; the output is CEF1 but not necessarily non-wasteful.
EnvyGraphResult envyGraphAllocate(const Instance& inst, Tol tol = {});
Matching envyGraphMechanism(const Instance& inst, Tol tol = {});

}  // namespace classmatch
