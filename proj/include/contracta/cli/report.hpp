#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "contracta/certificate.hpp"
#include "contracta/metric.hpp"
#include "contracta/onestep.hpp"
#include "contracta/planner.hpp"

namespace contracta::cli {

/// Everything a task produces. `result` holds the computed numbers only, so two
/// runs of the same inputs compare equal there; timing lives outside it.
struct Report {
  std::string task;
  nlohmann::json inputs = nlohmann::json::object();
  nlohmann::json result = nlohmann::json::object();
  std::vector<std::string> warnings;
  double seconds = 0.0;
  std::string csv;                   // empty when the task has no table
  std::vector<CSetPolytope> sets;    // candidates for SVG rendering, outermost first
};

nlohmann::json to_json(const Report& r);
std::string dump_report(const Report& r);

nlohmann::json polytope_json(const HPolytope& p);
HPolytope polytope_from_json(const nlohmann::json& j);
nlohmann::json certificate_json(const ContractionCertificate& c);
nlohmann::json plan_json(const IterationPlan& p);
nlohmann::json selection_json(const LambdaSelection& s);
nlohmann::json record_json(const InclusionRecord& r);
nlohmann::json approximation_json(const ApproximationResult& a);
nlohmann::json distance_json(const DistanceResult& d);

std::string records_csv(const std::vector<InclusionRecord>& records);

}  // namespace contracta::cli
