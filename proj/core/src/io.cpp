#include "classmatch/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace classmatch {
namespace io {

using nlohmann::json;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

Instance parseInstance(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.contains("class_sizes") || !j.contains("utilities"))
    throw InvalidInstance("instance JSON needs class_sizes and utilities");
  std::vector<int> sizes = j["class_sizes"].get<std::vector<int>>();
  std::vector<std::vector<double>> rows =
      j["utilities"].get<std::vector<std::vector<double>>>();
  return Instance::fromNested(std::move(sizes), rows);
}

Instance readInstance(const std::string& path) {
  return parseInstance(readFile(path));
}

std::string instanceToJson(const Instance& inst) {
  json rows = json::array();
  for (int a = 0; a < inst.numAgents(); ++a) {
    json row = json::array();
    for (int j = 0; j < inst.numItems(); ++j) row.push_back(inst.u(a, j));
    rows.push_back(row);
  }
  json out;
  out["class_sizes"] = inst.classSizes();
  out["utilities"] = rows;
  return out.dump(2) + "\n";
}

Matching parseMatching(const std::string& json_text) {
  json j = json::parse(json_text);
  if (!j.is_array()) throw MalformedMatching("matching JSON must be an array");
  Matching m;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw MalformedMatching("matching entries must be [agent, item] pairs");
    m.pairs.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return m;
}

Matching readMatching(const std::string& path) {
  return parseMatching(readFile(path));
}

std::string matchingToJson(const Matching& m) {
  json j = json::array();
  for (auto [a, it] : m.pairs) j.push_back(json::array({a, it}));
  return j.dump() + "\n";
}

namespace {

json witnessToJson(const Witness& w) {
  if (!w.valid()) return nullptr;
  return json{{"p", w.p}, {"q", w.q}, {"item", w.item}};
}

}  // namespace

std::string auditReportToJson(const AuditReport& rep) {
  json j;
  j["tol"] = rep.tol;
  j["alpha"] = rep.alpha;
  j["class_utils"] = rep.class_utils;
  j["class_opt_utils"] = rep.class_opt_utils;
  json pw = json::array();
  for (const auto& pe : rep.pairwise)
    pw.push_back(json{{"p", pe.p},
                      {"q", pe.q},
                      {"u_p", pe.u_p},
                      {"v_p_of_q", pe.v_p_of_q},
                      {"envies", pe.envies}});
  j["pairwise"] = pw;
  auto put = [&](const char* name, const std::optional<bool>& v) {
    if (v.has_value())
      j["verdicts"][name] = *v;
    else
      j["verdicts"][name] = nullptr;
  };
  put("class_ef", rep.class_ef);
  put("cef1", rep.cef1);
  put("mcef1", rep.mcef1);
  put("non_wasteful", rep.non_wasteful);
  put("per_agent_ef", rep.per_agent_ef);
  j["witnesses"]["class_ef"] = witnessToJson(rep.class_ef_witness);
  j["witnesses"]["cef1"] = witnessToJson(rep.cef1_witness);
  j["witnesses"]["mcef1"] = witnessToJson(rep.mcef1_witness);
  j["witnesses"]["non_wasteful"] = witnessToJson(rep.nw_witness);
  j["witnesses"]["per_agent_ef"] = witnessToJson(rep.per_agent_witness);
  return j.dump(2) + "\n";
}

namespace {

json stepToJson(const AugmentStep& s) {
  json j;
  j["added"] = json::array();
  for (auto [a, it] : s.added) j["added"].push_back(json::array({a, it}));
  j["removed"] = json::array();
  for (auto [a, it] : s.removed) j["removed"].push_back(json::array({a, it}));
  j["start_agent"] = s.start_left;
  j["entered_item"] = s.entered_right;
  j["gain"] = s.gain;
  return j;
}

}  // namespace

std::string roundTraceToJson(const RoundRobinResult& rr) {
  json j;
  j["class_values"] = rr.class_values;
  json evs = json::array();
  for (const auto& ev : rr.trace.events) {
    json e;
    e["round"] = ev.round;
    e["class"] = ev.class_index;
    e["item"] = ev.item;
    e["marginal"] = ev.marginal;
    e["step"] = stepToJson(ev.step);
    evs.push_back(e);
  }
  j["events"] = evs;
  return j.dump(2) + "\n";
}

std::string envyGraphToJson(const EnvyGraphResult& res) {
  json j;
  j["bundles"] = res.bundles;
  json pairs = json::array();
  for (auto [a, it] : res.matching.pairs) pairs.push_back(json::array({a, it}));
  j["matching"] = pairs;
  return j.dump(2) + "\n";
}

ExperimentConfig parseExperimentConfig(const std::string& json_text) {
  json j = json::parse(json_text);
  ExperimentConfig cfg;

  if (j.contains("mechanism")) {
    auto m = mechanismFromName(j["mechanism"].get<std::string>());
    if (!m) throw std::invalid_argument("unknown mechanism in config");
    cfg.mechanism = *m;
  }
  if (j.contains("distribution")) {
    const json& d = j["distribution"];
    const std::string variant = d.value("variant", "uniform01");
    if (variant == "uniform01") {
      cfg.distribution = DistributionSpec::uniform01();
    } else if (variant == "exponential") {
      cfg.distribution = DistributionSpec::exponential(d.value("lambda", 1.0));
    } else if (variant == "reversed_exponential") {
      cfg.distribution =
          DistributionSpec::reversedExponential(d.value("lambda", 1.0));
    } else if (variant == "pdf_bounded") {
      if (d.contains("inverse_cdf")) {
        cfg.distribution = DistributionSpec::pdfBounded(
            d.value("alpha", 1.0), d.value("beta", 1.0),
            d["inverse_cdf"].get<std::vector<double>>());
      } else {
        // preset: truncated normal
        cfg.distribution = DistributionSpec::truncatedNormal(
            d.value("mean", 0.5), d.value("sigma", 0.25), d.value("knots", 4096));
      }
    } else {
      throw std::invalid_argument("unknown distribution variant: " + variant);
    }
  }
  if (!j.contains("grid")) throw std::invalid_argument("config needs a grid");
  for (const auto& g : j["grid"]) {
    GridPoint gp;
    if (g.contains("class_sizes")) {
      gp.class_sizes = g["class_sizes"].get<std::vector<int>>();
    } else {
      const int k = g.value("k", 2);
      const int np = g.value("n_p", 1);
      gp.class_sizes.assign(k, np);
    }
    if (g.contains("m")) {
      gp.m = g["m"].get<int>();
    } else {
      const std::string rule = g.value("m_rule", "k_np_plus_2");
      int np_max = 0;
      for (int s : gp.class_sizes) np_max = std::max(np_max, s);
      if (rule == "k_np_plus_2")
        gp.m = static_cast<int>(gp.class_sizes.size()) * (np_max + 2);
      else if (rule == "factor_np_plus_2")
        gp.m = g.value("factor", 4) * (np_max + 2);
      else
        throw std::invalid_argument("unknown m_rule: " + rule);
    }
    cfg.grid.push_back(gp);
  }
  cfg.trials = j.value("trials", std::int64_t{1000});
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  cfg.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("predicates")) {
    cfg.predicates.clear();
    for (const auto& p : j["predicates"]) {
      auto pred = predicateFromName(p.get<std::string>());
      if (!pred) throw std::invalid_argument("unknown predicate in config");
      cfg.predicates.push_back(*pred);
    }
  }
  cfg.alpha = j.value("alpha", 1.0);
  cfg.tol.tol = j.value("tol", kDefaultTol);
  cfg.collect_expectations = j.value("collect_expectations", false);
  cfg.collect_edge_stats = j.value("collect_edge_stats", false);
  cfg.assert_lemma6 = j.value("assert_lemma6", false);
  cfg.assert_lemma12_sign = j.value("assert_lemma12_sign", false);
  cfg.assert_thm1_bound = j.value("assert_thm1_bound", false);
  cfg.thm1_slack = j.value("thm1_slack", 0.02);
  cfg.assert_trend = j.value("assert_trend", false);
  if (j.contains("collision")) {
    const std::string c = j["collision"].get<std::string>();
    if (c == "repick")
      cfg.greedy_collision = CollisionPolicy::kRepick;
    else if (c == "defer")
      cfg.greedy_collision = CollisionPolicy::kDefer;
    else if (c == "reclaim")
      cfg.greedy_collision = CollisionPolicy::kReclaim;
    else
      throw std::invalid_argument("unknown collision policy: " + c);
  }
  return cfg;
}

ExperimentConfig readExperimentConfig(const std::string& path) {
  return parseExperimentConfig(readFile(path));
}

}  // namespace io
}  // namespace classmatch
