#include "classmatch/audit.hpp"

#include <algorithm>
#include <cmath>

#include "classmatch/valuation.hpp"

namespace classmatch {

namespace {

struct Bundles {
  std::vector<std::vector<int>> per_class;
  std::vector<double> u;      // realized class utilities
  std::vector<double> v_own;  // v_p(M(N_p))
};

Bundles collect(const Instance& inst, const Matching& m) {
  m.validateFor(inst);
  const int k = inst.numClasses();
  Bundles b;
  b.per_class.resize(k);
  b.u.resize(k);
  b.v_own.resize(k);
  for (int p = 0; p < k; ++p) {
    b.per_class[p] = m.bundle(inst, p);
    b.u[p] = m.classUtility(inst, p);
    b.v_own[p] = assignmentValuation(inst, p, b.per_class[p]);
  }
  return b;
}

void fillPairwise(const Instance& inst, const Bundles& b, AuditReport& rep,
                  Tol tol) {
  if (!rep.pairwise.empty()) return;
  const int k = inst.numClasses();
  rep.class_utils = b.u;
  rep.class_opt_utils = b.v_own;
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      if (p == q) continue;
      PairEnvy pe;
      pe.p = p;
      pe.q = q;
      pe.u_p = b.u[p];
      pe.v_p_of_q = assignmentValuation(inst, p, b.per_class[q]);
      pe.envies = tol.gt(pe.v_p_of_q, pe.u_p);
      rep.pairwise.push_back(pe);
    }
}

}  // namespace

bool checkClassEnvyFree(const Instance& inst, const Matching& m, AuditReport& rep,
                        Tol tol) {
  rep.tol = tol.tol;
  Bundles b = collect(inst, m);
  fillPairwise(inst, b, rep, tol);
  bool ok = true;
  for (const auto& pe : rep.pairwise) {
    if (pe.envies && ok) {
      ok = false;
      rep.class_ef_witness = {pe.p, pe.q, -1};
    }
  }
  rep.class_ef = ok;
  return ok;
}

bool checkCef1(const Instance& inst, const Matching& m, double alpha,
               AuditReport& rep, Tol tol) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha must lie in (0,1]");
  rep.tol = tol.tol;
  rep.alpha = alpha;
  Bundles b = collect(inst, m);
  fillPairwise(inst, b, rep, tol);
  bool ok = true;
  for (const auto& pe : rep.pairwise) {
    if (!pe.envies) continue;
    // Some item of q's bundle whose removal brings the envied value within
    // the alpha factor of p's utility.
    const auto& bundle_q = b.per_class[pe.q];
    auto removal = allRemovalValues(inst, pe.p, bundle_q);
    bool witnessed = false;
    for (size_t c = 0; c < bundle_q.size() && !witnessed; ++c)
      if (tol.ge(pe.u_p / alpha, removal[c])) witnessed = true;
    if (!witnessed && ok) {
      ok = false;
      rep.cef1_witness = {pe.p, pe.q, -1};
    }
  }
  rep.cef1 = ok;
  return ok;
}

bool checkMcef1(const Instance& inst, const Matching& m, AuditReport& rep,
                Tol tol) {
  rep.tol = tol.tol;
  Bundles b = collect(inst, m);
  fillPairwise(inst, b, rep, tol);
  bool ok = true;
  for (const auto& pe : rep.pairwise) {
    if (!pe.envies) continue;
    const auto& bundle_q = b.per_class[pe.q];
    std::vector<int> merged = b.per_class[pe.p];
    merged.insert(merged.end(), bundle_q.begin(), bundle_q.end());
    std::sort(merged.begin(), merged.end());
    auto removal = allRemovalValues(inst, pe.p, merged);
    bool witnessed = false;
    for (size_t c = 0; c < merged.size() && !witnessed; ++c) {
      const bool from_q =
          std::binary_search(bundle_q.begin(), bundle_q.end(), merged[c]);
      if (from_q && tol.ge(2.0 * pe.u_p, removal[c])) witnessed = true;
    }
    if (!witnessed && ok) {
      ok = false;
      rep.mcef1_witness = {pe.p, pe.q, -1};
    }
  }
  rep.mcef1 = ok;
  return ok;
}

bool checkNonWasteful(const Instance& inst, const Matching& m, AuditReport& rep,
                      Tol tol) {
  rep.tol = tol.tol;
  Bundles b = collect(inst, m);
  const int k = inst.numClasses();
  const int mi = inst.numItems();

  std::vector<int> owner(mi, -1);
  for (int q = 0; q < k; ++q)
    for (int j : b.per_class[q]) owner[j] = q;

  // Marginal of every outside item for every class, one batched query each.
  std::vector<std::vector<double>> gains(k);
  for (int p = 0; p < k; ++p) gains[p] = allMarginalGains(inst, p, b.per_class[p]);

  bool ok = true;
  auto record = [&](int p, int q, int j) {
    if (ok) {
      ok = false;
      rep.nw_witness = {p, q, j};
    }
  };

  // Condition (a): unallocated item with a positive marginal for some class.
  for (int j = 0; j < mi && ok; ++j) {
    if (owner[j] != -1) continue;
    for (int p = 0; p < k; ++p)
      if (tol.gt(gains[p][j], 0.0)) {
        record(p, -1, j);
        break;
      }
  }

  // Condition (b): item movable from its owner at zero loss with positive
  // gain elsewhere.
  for (int q = 0; q < k && ok; ++q) {
    const auto& bundle_q = b.per_class[q];
    if (bundle_q.empty()) continue;
    auto removal = allRemovalValues(inst, q, bundle_q);
    for (size_t c = 0; c < bundle_q.size() && ok; ++c) {
      if (!tol.eq(removal[c], b.v_own[q])) continue;  // removal costs the owner
      const int j = bundle_q[c];
      for (int p = 0; p < k; ++p) {
        if (p == q) continue;
        if (tol.gt(gains[p][j], 0.0)) {
          record(p, q, j);
          break;
        }
      }
    }
  }

  rep.non_wasteful = ok;
  return ok;
}

bool checkPerAgentEnvyFree(const Instance& inst, const Matching& m,
                           AuditReport& rep, Tol tol) {
  rep.tol = tol.tol;
  m.validateFor(inst);
  if (static_cast<int>(m.pairs.size()) != inst.numAgents())
    throw MalformedMatching("per-agent envy-freeness needs one item per agent");
  std::vector<int> item_of(inst.numAgents(), -1);
  for (auto [a, j] : m.pairs) item_of[a] = j;
  bool ok = true;
  for (int a = 0; a < inst.numAgents() && ok; ++a)
    for (int a2 = 0; a2 < inst.numAgents(); ++a2) {
      if (a == a2) continue;
      if (tol.gt(inst.u(a, item_of[a2]), inst.u(a, item_of[a]))) {
        ok = false;
        rep.per_agent_witness = {a, a2, item_of[a2]};
        break;
      }
    }
  rep.per_agent_ef = ok;
  return ok;
}

AuditReport audit(const Instance& inst, const Matching& m, const AuditOptions& opt) {
  AuditReport rep;
  rep.tol = opt.tol.tol;
  rep.alpha = opt.alpha;
  if (opt.class_ef) checkClassEnvyFree(inst, m, rep, opt.tol);
  if (opt.cef1) checkCef1(inst, m, opt.alpha, rep, opt.tol);
  if (opt.mcef1) checkMcef1(inst, m, rep, opt.tol);
  if (opt.non_wasteful) checkNonWasteful(inst, m, rep, opt.tol);
  if (opt.per_agent_ef) checkPerAgentEnvyFree(inst, m, rep, opt.tol);
  return rep;
}

}  // namespace classmatch
