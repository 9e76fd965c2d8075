#include "classmatch/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "classmatch/audit.hpp"
#include "classmatch/bounds.hpp"
#include "classmatch/matching.hpp"
#include "classmatch/mechanisms.hpp"
#include "classmatch/parallel.hpp"
#include "classmatch/valuation.hpp"

namespace classmatch {

namespace {

constexpr std::uint64_t kStreamBlock = 1ull << 40;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string sizesLabel(const std::vector<int>& sizes) {
  std::string s;
  for (size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += '|';
    s += std::to_string(sizes[i]);
  }
  return s;
}

struct TrialOut {
  std::uint32_t pass_bits = 0;  // bit i: predicates[i] held
  bool all_pass = false;
  std::vector<double> xp;
  std::vector<double> xpq;
  double min_edge = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace

bool traceNestingOk(const RoundTrace& trace, int k) {
  std::vector<std::set<int>> agents(k), items(k);
  std::vector<std::set<std::pair<int, int>>> matched(k);
  for (const auto& ev : trace.events) {
    auto& st = ev.step;
    const int p = ev.class_index;
    for (auto e : st.removed)
      if (!matched[p].erase(e)) return false;
    for (auto e : st.added) matched[p].insert(e);
    std::set<int> a2, i2;
    for (auto [a, j] : matched[p]) {
      a2.insert(a);
      i2.insert(j);
    }
    for (int a : agents[p])
      if (!a2.count(a)) return false;
    for (int j : items[p])
      if (!i2.count(j)) return false;
    agents[p] = std::move(a2);
    items[p] = std::move(i2);
  }
  return true;
}

namespace {

double minEdgeOverTrace(const Instance& inst, const RoundTrace& trace, int k) {
  std::vector<std::set<std::pair<int, int>>> matched(k);
  double mn = std::numeric_limits<double>::infinity();
  for (const auto& ev : trace.events) {
    const int p = ev.class_index;
    for (auto e : ev.step.removed) matched[p].erase(e);
    for (auto e : ev.step.added) matched[p].insert(e);
    for (auto [a, j] : matched[p]) mn = std::min(mn, inst.u(a, j));
  }
  return mn;
}

double minEdgeOfMatching(const Instance& inst, const Matching& m) {
  double mn = std::numeric_limits<double>::infinity();
  for (auto [a, j] : m.pairs) mn = std::min(mn, inst.u(a, j));
  return mn;
}

}  // namespace

std::string mechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kRoundRobin: return "round-robin";
    case Mechanism::kMaxWeight: return "max-weight";
    case Mechanism::kGreedyHouse: return "greedy-house";
    case Mechanism::kEnvyGraph: return "envy-graph";
  }
  return "?";
}

std::string predicateName(Predicate p) {
  switch (p) {
    case Predicate::kClassEf: return "class_ef";
    case Predicate::kCef1: return "cef1";
    case Predicate::kMcef1: return "mcef1";
    case Predicate::kNonWasteful: return "non_wasteful";
    case Predicate::kPerAgentEf: return "per_agent_ef";
    case Predicate::kTraceNesting: return "trace_nesting";
    case Predicate::kAll: return "all";
  }
  return "?";
}

std::optional<Mechanism> mechanismFromName(const std::string& s) {
  if (s == "round-robin") return Mechanism::kRoundRobin;
  if (s == "max-weight") return Mechanism::kMaxWeight;
  if (s == "greedy-house") return Mechanism::kGreedyHouse;
  if (s == "envy-graph") return Mechanism::kEnvyGraph;
  return std::nullopt;
}

std::optional<Predicate> predicateFromName(const std::string& s) {
  if (s == "class_ef") return Predicate::kClassEf;
  if (s == "cef1") return Predicate::kCef1;
  if (s == "mcef1") return Predicate::kMcef1;
  if (s == "non_wasteful") return Predicate::kNonWasteful;
  if (s == "per_agent_ef") return Predicate::kPerAgentEf;
  if (s == "trace_nesting") return Predicate::kTraceNesting;
  if (s == "all") return Predicate::kAll;
  return std::nullopt;
}

SweepResult runSweep(const ExperimentConfig& cfg) {
  SweepResult result;
  std::ostringstream csv, metrics;
  csv << "mechanism,distribution,seed,k,class_sizes,m,predicate,trials,successes,"
         "p_hat,wilson_lo,wilson_hi,runtime_ms\n";
  metrics << "mechanism,distribution,seed,k,class_sizes,m,metric,value,se\n";

  const bool wants_expect = cfg.collect_expectations || cfg.assert_lemma6 ||
                            cfg.assert_lemma12_sign;

  for (size_t pt = 0; pt < cfg.grid.size(); ++pt) {
    const GridPoint& gp = cfg.grid[pt];
    PointResult pr;
    pr.point = gp;
    pr.trials = cfg.trials;
    const int k = static_cast<int>(gp.class_sizes.size());
    int n = 0;
    for (int s : gp.class_sizes) n += s;

    // Grid points violating mechanism preconditions are recorded, not fatal.
    if (cfg.mechanism == Mechanism::kGreedyHouse && gp.m < n) {
      pr.skipped = true;
      pr.skip_reason = "greedy-house requires m >= n";
    }
    if ((cfg.mechanism != Mechanism::kRoundRobin) &&
        std::count(cfg.predicates.begin(), cfg.predicates.end(),
                   Predicate::kTraceNesting)) {
      pr.skipped = true;
      pr.skip_reason = "trace_nesting needs the round-robin trace";
    }
    if (pr.skipped) {
      result.points.push_back(std::move(pr));
      continue;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<TrialOut> outs(cfg.trials);
    const int npairs = k * (k - 1);

    parallelFor(cfg.trials, [&](std::int64_t t) {
      TrialOut& out = outs[t];
      Seed seed{cfg.seed, pt * kStreamBlock + static_cast<std::uint64_t>(t)};
      Instance inst = sampleInstance(cfg.distribution, gp.class_sizes, gp.m, seed);

      Matching matching;
      RoundRobinResult rr;
      bool mech_ok = true;
      try {
        switch (cfg.mechanism) {
          case Mechanism::kRoundRobin:
            rr = roundRobin(inst, cfg.tol);
            matching = rr.matching;
            break;
          case Mechanism::kMaxWeight:
            matching = maxWeightMechanism(inst);
            break;
          case Mechanism::kGreedyHouse:
            matching = greedyHouseAllocation(inst, cfg.greedy_collision);
            break;
          case Mechanism::kEnvyGraph:
            matching = envyGraphMechanism(inst, cfg.tol);
            break;
        }
      } catch (const MechanismInfeasible&) {
        mech_ok = false;
      }

      AuditOptions opt;
      opt.alpha = cfg.alpha;
      opt.tol = cfg.tol;
      opt.class_ef = opt.cef1 = opt.mcef1 = opt.non_wasteful = opt.per_agent_ef =
          false;
      for (Predicate p : cfg.predicates) {
        if (p == Predicate::kClassEf) opt.class_ef = true;
        if (p == Predicate::kCef1) opt.cef1 = true;
        if (p == Predicate::kMcef1) opt.mcef1 = true;
        if (p == Predicate::kNonWasteful) opt.non_wasteful = true;
        if (p == Predicate::kPerAgentEf) opt.per_agent_ef = true;
      }
      if (wants_expect) opt.class_ef = true;  // pairwise table carries X_pq

      AuditReport rep;
      if (mech_ok) rep = audit(inst, matching, opt);

      bool all = mech_ok;
      for (size_t i = 0; i < cfg.predicates.size(); ++i) {
        bool pass = false;
        if (mech_ok) {
          switch (cfg.predicates[i]) {
            case Predicate::kClassEf: pass = rep.class_ef.value_or(false); break;
            case Predicate::kCef1: pass = rep.cef1.value_or(false); break;
            case Predicate::kMcef1: pass = rep.mcef1.value_or(false); break;
            case Predicate::kNonWasteful:
              pass = rep.non_wasteful.value_or(false);
              break;
            case Predicate::kPerAgentEf:
              pass = rep.per_agent_ef.value_or(false);
              break;
            case Predicate::kTraceNesting:
              pass = traceNestingOk(rr.trace, k);
              break;
            case Predicate::kAll:
              pass = true;  // filled below
              break;
          }
        }
        if (cfg.predicates[i] != Predicate::kAll) {
          all = all && pass;
          if (pass) out.pass_bits |= (1u << i);
        }
      }
      out.all_pass = all;
      for (size_t i = 0; i < cfg.predicates.size(); ++i)
        if (cfg.predicates[i] == Predicate::kAll && all)
          out.pass_bits |= (1u << i);

      if (wants_expect && mech_ok) {
        out.xp.resize(k);
        if (cfg.mechanism == Mechanism::kRoundRobin)
          for (int p = 0; p < k; ++p) out.xp[p] = rr.class_values[p];
        else
          for (int p = 0; p < k; ++p) out.xp[p] = rep.class_opt_utils[p];
        out.xpq.resize(npairs);
        for (int i = 0; i < npairs; ++i) out.xpq[i] = rep.pairwise[i].v_p_of_q;
      }
      if (cfg.collect_edge_stats && mech_ok) {
        out.min_edge = (cfg.mechanism == Mechanism::kRoundRobin)
                           ? minEdgeOverTrace(inst, rr.trace, k)
                           : minEdgeOfMatching(inst, matching);
      }
    });

    const auto t1 = std::chrono::steady_clock::now();
    pr.runtime_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    for (size_t i = 0; i < cfg.predicates.size(); ++i) {
      PredicateResult presult;
      presult.pred = cfg.predicates[i];
      for (const auto& o : outs)
        if (o.pass_bits & (1u << i)) ++presult.successes;
      presult.wi = stats::wilson(presult.successes, cfg.trials);
      pr.preds.push_back(presult);
    }

    if (wants_expect) {
      pr.mean_xp.resize(k);
      pr.se_xp.resize(k);
      for (int p = 0; p < k; ++p) {
        std::vector<double> xs;
        xs.reserve(cfg.trials);
        for (const auto& o : outs)
          if (!o.xp.empty()) xs.push_back(o.xp[p]);
        auto ms = stats::meanSe(xs);
        pr.mean_xp[p] = ms.mean;
        pr.se_xp[p] = ms.se;
      }
      pr.mean_xpq.resize(npairs);
      pr.se_xpq.resize(npairs);
      pr.mean_gap.resize(npairs);
      pr.se_gap.resize(npairs);
      for (int i = 0; i < npairs; ++i) {
        std::vector<double> xs, gaps;
        xs.reserve(cfg.trials);
        const int p = i / (k - 1);  // pairwise table is ordered (p, q) p != q
        for (const auto& o : outs)
          if (!o.xpq.empty()) {
            xs.push_back(o.xpq[i]);
            gaps.push_back(o.xp[p] - o.xpq[i]);
          }
        auto ms = stats::meanSe(xs);
        pr.mean_xpq[i] = ms.mean;
        pr.se_xpq[i] = ms.se;
        auto gs = stats::meanSe(gaps);
        pr.mean_gap[i] = gs.mean;
        pr.se_gap[i] = gs.se;
      }
    }
    if (cfg.collect_edge_stats) {
      std::vector<double> mins;
      mins.reserve(cfg.trials);
      for (const auto& o : outs)
        if (!std::isnan(o.min_edge)) mins.push_back(o.min_edge);
      if (!mins.empty()) {
        pr.min_edge_mean = stats::meanSe(mins).mean;
        pr.min_edge_p01 = stats::quantile(mins, 0.01);
        const int np_max =
            *std::max_element(gp.class_sizes.begin(), gp.class_sizes.end());
        const double ln = std::log(std::max(2, np_max));
        pr.c_hat = np_max * (1.0 - pr.min_edge_p01) / (ln * ln);
      }
    }

    result.points.push_back(std::move(pr));
  }

  // Assertions over the aggregated points.
  const double z95 = 1.6449;  // one-sided 95%
  std::vector<stats::WilsonInterval> first_pred;
  for (const auto& pr : result.points) {
    if (pr.skipped) continue;
    const int k = static_cast<int>(pr.point.class_sizes.size());
    if (!pr.preds.empty()) first_pred.push_back(pr.preds[0].wi);
    if (cfg.assert_thm1_bound) {
      auto b = bounds::disjointBundleLowerBound(pr.point.class_sizes, pr.point.m);
      for (const auto& p : pr.preds)
        if (p.pred == Predicate::kClassEf && p.wi.p_hat < b.product - cfg.thm1_slack) {
          result.asserts_ok = false;
          result.assert_messages.push_back(
              "class_ef p_hat " + fmt(p.wi.p_hat) + " below bound " +
              fmt(b.product) + " - slack at m=" + std::to_string(pr.point.m));
        }
    }
    if (cfg.assert_lemma6) {
      const double alpha =
          cfg.distribution.kind == DistKind::Uniform01 ? 1.0 : cfg.distribution.alpha;
      for (int p = 0; p < k; ++p) {
        const int np = pr.point.class_sizes[p];
        if (pr.point.m <= np * k) continue;
        const double bound = bounds::lemma6LowerBound(np, pr.point.m, k, alpha);
        if (pr.mean_xp[p] < bound - 3.0 * pr.se_xp[p]) {
          result.asserts_ok = false;
          result.assert_messages.push_back(
              "E[X_p] estimate " + fmt(pr.mean_xp[p]) + " under bound " +
              fmt(bound) + " for class " + std::to_string(p));
        }
      }
    }
    if (cfg.assert_lemma12_sign) {
      for (size_t i = 0; i < pr.mean_gap.size(); ++i) {
        if (pr.mean_gap[i] <= z95 * pr.se_gap[i]) {
          result.asserts_ok = false;
          result.assert_messages.push_back(
              "gap E[X_p]-E[X_pq] not positive at 95% for pair " +
              std::to_string(i));
        }
      }
    }
  }
  if (cfg.assert_trend && !stats::trendNondecreasing(first_pred)) {
    result.asserts_ok = false;
    result.assert_messages.push_back(
        "p_hat trend for " + predicateName(cfg.predicates[0]) +
        " is not nondecreasing within interval slack");
  }

  // Render CSVs in point order.
  for (const auto& pr : result.points) {
    const std::string prefix = mechanismName(cfg.mechanism) + "," +
                               cfg.distribution.name() + "," +
                               std::to_string(cfg.seed) + "," +
                               std::to_string(pr.point.class_sizes.size()) + "," +
                               sizesLabel(pr.point.class_sizes) + "," +
                               std::to_string(pr.point.m);
    if (pr.skipped) {
      csv << prefix << ",skipped:" << pr.skip_reason << ",0,0,,,," << "\n";
      continue;
    }
    // The artifact must be byte-identical across reruns of the same config,
    // so the wall-time column stays empty here; measured timings live in
    // PointResult::runtime_ms and on the CLI's stderr log.
    for (const auto& p : pr.preds) {
      csv << prefix << "," << predicateName(p.pred) << "," << pr.trials << ","
          << p.successes << "," << fmt(p.wi.p_hat) << "," << fmt(p.wi.lo) << ","
          << fmt(p.wi.hi) << ",\n";
    }
    const int k = static_cast<int>(pr.point.class_sizes.size());
    for (size_t p = 0; p < pr.mean_xp.size(); ++p)
      metrics << prefix << ",x_p_" << p << "," << fmt(pr.mean_xp[p]) << ","
              << fmt(pr.se_xp[p]) << "\n";
    for (size_t i = 0; i < pr.mean_xpq.size(); ++i) {
      const int p = static_cast<int>(i) / (k - 1);
      int q = static_cast<int>(i) % (k - 1);
      if (q >= p) ++q;
      metrics << prefix << ",x_pq_" << p << "_" << q << "," << fmt(pr.mean_xpq[i])
              << "," << fmt(pr.se_xpq[i]) << "\n";
      metrics << prefix << ",gap_" << p << "_" << q << "," << fmt(pr.mean_gap[i])
              << "," << fmt(pr.se_gap[i]) << "\n";
    }
    if (cfg.collect_edge_stats) {
      metrics << prefix << ",min_edge_mean," << fmt(pr.min_edge_mean) << ",\n";
      metrics << prefix << ",min_edge_p01," << fmt(pr.min_edge_p01) << ",\n";
      metrics << prefix << ",c_hat," << fmt(pr.c_hat) << ",\n";
    }
  }
  result.csv = csv.str();
  result.metrics_csv = metrics.str();
  return result;
}

SweepResult estimateExpectations(ExperimentConfig cfg) {
  cfg.collect_expectations = true;
  return runSweep(cfg);
}

SweepResult heavyEdgeStatistics(ExperimentConfig cfg) {
  cfg.collect_edge_stats = true;
  return runSweep(cfg);
}

Lemma3Result lemma3Probe(const Lemma3Config& cfg) {
  if (cfg.r < 1 || cfg.r > std::min(cfg.n, cfg.m))
    throw std::invalid_argument("infeasible matching size r");
  for (double l : cfg.lambdas)
    if (!(l > 0.0)) throw std::invalid_argument("lambdas must be positive");

  Lemma3Result res;
  const size_t cells = static_cast<size_t>(cfg.n) * cfg.m;

  // Direct estimate of E[X^r] - E[X^{r-1}] from the base graph, plus the
  // per-agent decomposition terms X^{r-1}_{-i} (best size-(r-1) value when
  // agent i is removed).
  std::vector<double> deltas(cfg.trials), decomp(cfg.trials);
  parallelFor(cfg.trials, [&](std::int64_t t) {
    Rng rng(cfg.seed, static_cast<std::uint64_t>(t));
    std::vector<double> w(cells);
    for (auto& v : w) v = cfg.distribution.sample(rng);
    double x_r = 0.0, gain_r = 0.0;
    {
      MaxWeightMatcher mt(cfg.n, cfg.m, w);
      for (int s = 0; s < cfg.r; ++s) gain_r = mt.augmentBest()->gain;
      x_r = mt.value();
    }
    deltas[t] = gain_r;
    double loo_sum = 0.0;
    if (cfg.r >= 2 && cfg.n >= 2) {
      for (int drop = 0; drop < cfg.n; ++drop) {
        std::vector<double> wl(static_cast<size_t>(cfg.n - 1) * cfg.m);
        size_t li = 0;
        for (int i = 0; i < cfg.n; ++i) {
          if (i == drop) continue;
          for (int j = 0; j < cfg.m; ++j) wl[li * cfg.m + j] = w[i * cfg.m + j];
          ++li;
        }
        MaxWeightMatcher ml(cfg.n - 1, cfg.m, std::move(wl));
        for (int s = 0; s < cfg.r - 1; ++s) ml.augmentBest();
        loo_sum += ml.value();
      }
    }
    decomp[t] = cfg.n * (1.0 - x_r) + loo_sum;
  });
  auto dm = stats::meanSe(deltas);
  res.delta_mean = dm.mean;
  res.delta_se = dm.se;
  res.rhs = cfg.r * (1.0 - dm.mean);
  res.rhs_se = cfg.r * dm.se;
  auto dc = stats::meanSe(decomp);
  res.decomposition_rhs = dc.mean;
  res.decomposition_rhs_se = dc.se;

  for (size_t li = 0; li < cfg.lambdas.size(); ++li) {
    const double lambda = cfg.lambdas[li];
    auto reexp = DistributionSpec::reversedExponential(lambda);
    std::vector<char> hits(cfg.trials, 0);
    parallelFor(cfg.trials, [&](std::int64_t t) {
      Rng rng(cfg.seed, (li + 1) * kStreamBlock + static_cast<std::uint64_t>(t));
      std::vector<double> w(static_cast<size_t>(cfg.n) * (cfg.m + 1));
      for (int i = 0; i < cfg.n; ++i) {
        for (int j = 0; j < cfg.m; ++j)
          w[i * (cfg.m + 1) + j] = cfg.distribution.sample(rng);
        w[i * (cfg.m + 1) + cfg.m] = reexp.sample(rng);
      }
      MaxWeightMatcher mt(cfg.n, cfg.m + 1, std::move(w));
      for (int s = 0; s < cfg.r; ++s) mt.augmentBest();
      hits[t] = mt.matchOfRight(cfg.m) != -1;
    });
    Lemma3Result::Row row;
    row.lambda = lambda;
    row.trials = cfg.trials;
    row.hits = 0;
    for (char h : hits) row.hits += h;
    row.p_hat = static_cast<double>(row.hits) / cfg.trials;
    row.p_over_lambda = row.p_hat / lambda;
    row.se = std::sqrt(row.p_hat * (1.0 - row.p_hat) / cfg.trials) / lambda;
    res.rows.push_back(row);
  }

  std::vector<double> xs, ys, ses;
  for (const auto& row : res.rows) {
    xs.push_back(row.lambda);
    ys.push_back(row.p_over_lambda);
    ses.push_back(std::max(row.se, 1e-12));
  }
  if (xs.size() >= 2) {
    auto fit = stats::weightedLinearFit(xs, ys, ses);
    res.extrapolated = fit.intercept;
    res.extrapolated_se = fit.intercept_se;
  } else {
    res.extrapolated = ys[0];
    res.extrapolated_se = ses[0];
  }
  res.gap = res.extrapolated - res.rhs;
  res.gap_se = std::sqrt(res.extrapolated_se * res.extrapolated_se +
                         res.rhs_se * res.rhs_se);
  res.within_3se = std::abs(res.gap) <= 3.0 * res.gap_se;
  res.decomposition_gap = res.extrapolated - res.decomposition_rhs;
  res.decomposition_gap_se =
      std::sqrt(res.extrapolated_se * res.extrapolated_se +
                res.decomposition_rhs_se * res.decomposition_rhs_se);
  res.decomposition_within_3se =
      std::abs(res.decomposition_gap) <= 3.0 * res.decomposition_gap_se;

  std::ostringstream csv;
  csv << "kind,lambda,trials,hits,p_hat,p_over_lambda,se\n";
  for (const auto& row : res.rows)
    csv << "sample," << fmt(row.lambda) << "," << row.trials << "," << row.hits
        << "," << fmt(row.p_hat) << "," << fmt(row.p_over_lambda) << ","
        << fmt(row.se) << "\n";
  csv << "extrapolated,0," << cfg.trials << ",,," << fmt(res.extrapolated) << ","
      << fmt(res.extrapolated_se) << "\n";
  csv << "identity_rhs,0," << cfg.trials << ",,," << fmt(res.rhs) << ","
      << fmt(res.rhs_se) << "\n";
  csv << "gap,0," << cfg.trials << ",,," << fmt(res.gap) << "," << fmt(res.gap_se)
      << "\n";
  csv << "decomposition_rhs,0," << cfg.trials << ",,,"
      << fmt(res.decomposition_rhs) << "," << fmt(res.decomposition_rhs_se)
      << "\n";
  csv << "decomposition_gap,0," << cfg.trials << ",,,"
      << fmt(res.decomposition_gap) << "," << fmt(res.decomposition_gap_se)
      << "\n";
  res.csv = csv.str();
  return res;
}

RandAssignResult randAssignEstimator(int n, int m, int r, double lambda,
                                     std::int64_t trials, std::uint64_t seed) {
  if (r < 1 || r > std::min(n, m))
    throw std::invalid_argument("infeasible matching size r");
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

  auto expdist = DistributionSpec::exponential(lambda);
  std::vector<double> costs(trials);
  parallelFor(trials, [&](std::int64_t t) {
    Rng rng(seed, static_cast<std::uint64_t>(t));
    std::vector<double> w(static_cast<size_t>(n) * m);
    for (auto& v : w) v = -expdist.sample(rng);  // maximize negated cost
    MaxWeightMatcher mt(n, m, std::move(w));
    for (int s = 0; s < r; ++s) mt.augmentBest();
    costs[t] = -mt.value();
  });

  RandAssignResult res;
  res.n = n;
  res.m = m;
  res.r = r;
  res.lambda = lambda;
  res.trials = trials;
  auto ms = stats::meanSe(costs);
  res.mean = ms.mean;
  res.se = ms.se;
  res.paper_inline = bounds::randomAssignmentExpectation(
                         n, m, r, bounds::RandAssignFormula::kPaperInline) /
                     lambda;
  res.coppersmith_sorkin =
      bounds::randomAssignmentExpectation(
          n, m, r, bounds::RandAssignFormula::kCoppersmithSorkin) /
      lambda;
  const bool near_paper = std::abs(res.mean - res.paper_inline) <= 3.0 * res.se;
  const bool near_cs = std::abs(res.mean - res.coppersmith_sorkin) <= 3.0 * res.se;
  if (near_paper && near_cs)
    res.matches = "both";
  else if (near_paper)
    res.matches = "paper_inline";
  else if (near_cs)
    res.matches = "coppersmith_sorkin";
  else
    res.matches = "neither";

  std::ostringstream csv;
  csv << "n,m,r,lambda,trials,mean,se,paper_inline,coppersmith_sorkin,matches\n";
  csv << n << "," << m << "," << r << "," << fmt(lambda) << "," << trials << ","
      << fmt(res.mean) << "," << fmt(res.se) << "," << fmt(res.paper_inline) << ","
      << fmt(res.coppersmith_sorkin) << "," << res.matches << "\n";
  res.csv = csv.str();
  return res;
}

}  // namespace classmatch
