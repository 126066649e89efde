#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "contracta/onestep.hpp"
#include "contracta/planner.hpp"
#include "contracta/seeds.hpp"

namespace contracta::cli {

using Rows = std::vector<Vector>;

/// Thrown for malformed scenario text; `where` is a line:column position or a
/// JSON pointer into the document.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string where, const std::string& what)
      : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

struct PolytopeSpec {
  Rows h;
  Vector b;
  friend bool operator==(const PolytopeSpec&, const PolytopeSpec&) = default;
};

struct SystemSpec {
  Rows a;
  Rows b;
  PolytopeSpec x;
  PolytopeSpec u;
  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

struct PolytopeSeedSpec {
  PolytopeSpec set;
  double lambda = 1.0;
  friend bool operator==(const PolytopeSeedSpec&, const PolytopeSeedSpec&) = default;
};

struct EllipsoidSeedSpec {
  Rows k;
  Rows p;
  double beta = 1.0;
  double lambda = 1.0;
  friend bool operator==(const EllipsoidSeedSpec&, const EllipsoidSeedSpec&) = default;
};

using SeedSpec = std::variant<PolytopeSeedSpec, EllipsoidSeedSpec>;

struct CertifyTask {
  double lambda = 1.0;
  friend bool operator==(const CertifyTask&, const CertifyTask&) = default;
};

struct PlanEpsilonTask {
  double lambda = 1.0;
  double epsilon = 0.1;
  std::optional<Strategy> run;
  friend bool operator==(const PlanEpsilonTask&, const PlanEpsilonTask&) = default;
};

struct SelectLambdaTask {
  double mu = 0.5;
  double lambda_star = 0.5;
  std::optional<Strategy> run;
  friend bool operator==(const SelectLambdaTask&, const SelectLambdaTask&) = default;
};

enum class IterateFrom { StateSet, Seed };

struct IterateTask {
  double lambda = 1.0;
  std::size_t k = 0;
  IterateFrom from = IterateFrom::StateSet;
  friend bool operator==(const IterateTask&, const IterateTask&) = default;
};

struct DistanceTask {
  PolytopeSpec c;
  PolytopeSpec d;
  friend bool operator==(const DistanceTask&, const DistanceTask&) = default;
};

struct ReproduceTask {
  std::string name;
  friend bool operator==(const ReproduceTask&, const ReproduceTask&) = default;
};

using Task = std::variant<CertifyTask, PlanEpsilonTask, SelectLambdaTask, IterateTask, DistanceTask, ReproduceTask>;

struct OutputOptions {
  std::string report;
  bool svg = false;
  bool csv = false;
  friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

struct Scenario {
  std::optional<SystemSpec> system;
  Task task;
  std::optional<SeedSpec> seed;
  OutputOptions output;
  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Task keyword as written in scenario files ("certify", "plan-epsilon", ...).
std::string task_name(const Task& task);

Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);
nlohmann::json to_json(const Scenario& s);
std::string serialize_scenario(const Scenario& s);

nlohmann::json to_json(const PolytopeSpec& p);

/// Semantic checks beyond the document shape; throws contracta::Error.
void validate_scenario(const Scenario& s);

HPolytope build_polytope(const PolytopeSpec& p);
SystemModel build_system(const SystemSpec& s);
DenseMatrix build_matrix(const Rows& rows);

}  // namespace contracta::cli
