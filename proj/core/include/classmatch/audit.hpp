#pragma once

#include <optional>
#include <vector>

#include "classmatch/types.hpp"

namespace classmatch {

struct PairEnvy {
  int p = -1, q = -1;
  double u_p = 0.0;       // realized utility of class p under M
  double v_p_of_q = 0.0;  // v_p(M(N_q))
  bool envies = false;
};

struct Witness {
  int p = -1, q = -1, item = -1;
  bool valid() const { return p >= 0; }
};

/// Per-pair envy values plus verdicts for every fairness notion checked.
struct AuditReport {
  double tol = kDefaultTol;
  double alpha = 1.0;
  std::vector<double> class_utils;      // u_p(M)
  std::vector<double> class_opt_utils;  // v_p(M(N_p))
  std::vector<PairEnvy> pairwise;       // ordered (p, q), p != q
  std::optional<bool> class_ef, cef1, mcef1, non_wasteful, per_agent_ef;
  Witness class_ef_witness;  // first envious (p, q)
  Witness cef1_witness;      // first (p, q) with no removable item
  Witness mcef1_witness;
  Witness nw_witness;            // (p, q, item): wasted item, q = -1 if unallocated
  Witness per_agent_witness;     // (agent, other agent, item)
};

bool checkClassEnvyFree(const Instance& inst, const Matching& m, AuditReport& rep,
                        Tol tol = {});
bool checkCef1(const Instance& inst, const Matching& m, double alpha,
               AuditReport& rep, Tol tol = {});
bool checkMcef1(const Instance& inst, const Matching& m, AuditReport& rep,
                Tol tol = {});
bool checkNonWasteful(const Instance& inst, const Matching& m, AuditReport& rep,
                      Tol tol = {});
/// Pre: every agent holds exactly one item, else throws MalformedMatching.
bool checkPerAgentEnvyFree(const Instance& inst, const Matching& m,
                           AuditReport& rep, Tol tol = {});

struct AuditOptions {
  double alpha = 1.0;
  Tol tol = {};
  bool class_ef = true;
  bool cef1 = true;
  bool mcef1 = true;
  bool non_wasteful = true;
  bool per_agent_ef = false;  // only meaningful for one-item-per-agent matchings
};

/// Runs the selected predicates and returns the combined report.
AuditReport audit(const Instance& inst, const Matching& m,
                  const AuditOptions& opt = {});

}  // namespace classmatch
