#pragma once

#include <string>

#include "classmatch/audit.hpp"
#include "classmatch/experiments.hpp"
#include "classmatch/mechanisms.hpp"
#include "classmatch/types.hpp"

namespace classmatch {
namespace io {

/// Instance file: {"class_sizes": [...], "utilities": [[...], ...]}.
Instance readInstance(const std::string& path);
Instance parseInstance(const std::string& json_text);
std::string instanceToJson(const Instance& inst);

/// Matchings are arrays of [agent, item] pairs.
Matching readMatching(const std::string& path);
Matching parseMatching(const std::string& json_text);
std::string matchingToJson(const Matching& m);

std::string auditReportToJson(const AuditReport& rep);
std::string roundTraceToJson(const RoundRobinResult& rr);
std::string envyGraphToJson(const EnvyGraphResult& res);

/// Experiment config, JSON. Grid points either give "class_sizes" and "m"
/// explicitly or "k"/"n_p" with an "m_rule".
ExperimentConfig readExperimentConfig(const std::string& path);
ExperimentConfig parseExperimentConfig(const std::string& json_text);

void writeFile(const std::string& path, const std::string& content);
std::string readFile(const std::string& path);

}  // namespace io
}  // namespace classmatch
