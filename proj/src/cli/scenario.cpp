#include "contracta/cli/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "contracta/error.hpp"

namespace contracta::cli {

using nlohmann::json;

namespace {

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ParseError(child(path, k), "unknown key");
}

const json& need(const json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(child(path, key), "missing required key");
  return *it;
}

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(path, "number is not finite");
  return v;
}

bool read_bool(const json& j, const std::string& path) {
  if (!j.is_boolean()) throw ParseError(path, "expected true or false");
  return j.get<bool>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

Vector read_vector(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array of numbers");
  Vector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], child(path, i)));
  return out;
}

Rows read_matrix(const json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of rows");
  Rows out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(read_vector(j[i], child(path, i)));
    if (out.back().empty()) throw ParseError(child(path, i), "empty matrix row");
    if (out.back().size() != out.front().size())
      throw ParseError(child(path, i), "row length " + std::to_string(out.back().size()) + " differs from " +
                                           std::to_string(out.front().size()));
  }
  return out;
}

PolytopeSpec read_polytope(const json& j, const std::string& path) {
  allow_keys(j, path, {"H", "b"});
  PolytopeSpec p{read_matrix(need(j, path, "H"), child(path, "H")), read_vector(need(j, path, "b"), child(path, "b"))};
  if (p.b.size() != p.h.size())
    throw ParseError(child(path, "b"), "offset count " + std::to_string(p.b.size()) + " differs from facet count " +
                                           std::to_string(p.h.size()));
  return p;
}

std::optional<Strategy> read_strategy(const json& j, const std::string& path) {
  const std::string s = read_string(j, path);
  if (s == "none") return std::nullopt;
  if (s == "apriori") return Strategy::AprioriBound;
  if (s == "adaptive") return Strategy::AdaptiveInclusion;
  throw ParseError(path, "strategy must be one of none, apriori, adaptive");
}

std::string strategy_name(const std::optional<Strategy>& s) {
  if (!s) return "none";
  return *s == Strategy::AprioriBound ? "apriori" : "adaptive";
}

Task read_task(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const std::string type = read_string(need(j, path, "type"), child(path, "type"));
  if (type == "certify") {
    allow_keys(j, path, {"type", "lambda"});
    return CertifyTask{read_number(need(j, path, "lambda"), child(path, "lambda"))};
  }
  if (type == "plan-epsilon") {
    allow_keys(j, path, {"type", "lambda", "epsilon", "run"});
    PlanEpsilonTask t;
    t.lambda = read_number(need(j, path, "lambda"), child(path, "lambda"));
    t.epsilon = read_number(need(j, path, "epsilon"), child(path, "epsilon"));
    if (j.contains("run")) t.run = read_strategy(j["run"], child(path, "run"));
    return t;
  }
  if (type == "select-lambda") {
    allow_keys(j, path, {"type", "mu", "lambda_star", "run"});
    SelectLambdaTask t;
    t.mu = read_number(need(j, path, "mu"), child(path, "mu"));
    t.lambda_star = read_number(need(j, path, "lambda_star"), child(path, "lambda_star"));
    t.run = Strategy::AdaptiveInclusion;
    if (j.contains("run")) t.run = read_strategy(j["run"], child(path, "run"));
    return t;
  }
  if (type == "iterate") {
    allow_keys(j, path, {"type", "lambda", "k", "from"});
    IterateTask t;
    t.lambda = read_number(need(j, path, "lambda"), child(path, "lambda"));
    const json& k = need(j, path, "k");
    if (!k.is_number_unsigned()) throw ParseError(child(path, "k"), "expected a nonnegative integer");
    t.k = k.get<std::size_t>();
    if (j.contains("from")) {
      const std::string from = read_string(j["from"], child(path, "from"));
      if (from == "X") t.from = IterateFrom::StateSet;
      else if (from == "seed") t.from = IterateFrom::Seed;
      else throw ParseError(child(path, "from"), "expected \"X\" or \"seed\"");
    }
    return t;
  }
  if (type == "distance") {
    allow_keys(j, path, {"type", "C", "D"});
    return DistanceTask{read_polytope(need(j, path, "C"), child(path, "C")),
                        read_polytope(need(j, path, "D"), child(path, "D"))};
  }
  if (type == "reproduce") {
    allow_keys(j, path, {"type", "name"});
    return ReproduceTask{read_string(need(j, path, "name"), child(path, "name"))};
  }
  throw ParseError(child(path, "type"), "unknown task type '" + type + "'");
}

SeedSpec read_seed(const json& j, const std::string& path) {
  allow_keys(j, path, {"polytope", "ellipsoid", "lambda"});
  const double lambda = read_number(need(j, path, "lambda"), child(path, "lambda"));
  const bool has_poly = j.contains("polytope");
  const bool has_ell = j.contains("ellipsoid");
  if (has_poly == has_ell) throw ParseError(path, "seed needs exactly one of 'polytope' or 'ellipsoid'");
  if (has_poly) return PolytopeSeedSpec{read_polytope(j["polytope"], child(path, "polytope")), lambda};
  const json& e = j["ellipsoid"];
  const std::string ep = child(path, "ellipsoid");
  allow_keys(e, ep, {"K", "P", "beta"});
  return EllipsoidSeedSpec{read_matrix(need(e, ep, "K"), child(ep, "K")), read_matrix(need(e, ep, "P"), child(ep, "P")),
                           read_number(need(e, ep, "beta"), child(ep, "beta")), lambda};
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json matrix_json(const Rows& rows) {
  json out = json::array();
  for (const auto& r : rows) out.push_back(r);
  return out;
}

}  // namespace

std::string task_name(const Task& task) {
  struct Visitor {
    std::string operator()(const CertifyTask&) const { return "certify"; }
    std::string operator()(const PlanEpsilonTask&) const { return "plan-epsilon"; }
    std::string operator()(const SelectLambdaTask&) const { return "select-lambda"; }
    std::string operator()(const IterateTask&) const { return "iterate"; }
    std::string operator()(const DistanceTask&) const { return "distance"; }
    std::string operator()(const ReproduceTask&) const { return "reproduce"; }
  };
  return std::visit(Visitor{}, task);
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(line_column(text, e.byte), e.what());
  }
  allow_keys(doc, "", {"system", "task", "seed", "output"});
  Scenario s;
  if (doc.contains("system")) {
    const json& sys = doc["system"];
    allow_keys(sys, "/system", {"A", "B", "X", "U"});
    s.system = SystemSpec{read_matrix(need(sys, "/system", "A"), "/system/A"),
                          read_matrix(need(sys, "/system", "B"), "/system/B"),
                          read_polytope(need(sys, "/system", "X"), "/system/X"),
                          read_polytope(need(sys, "/system", "U"), "/system/U")};
  }
  s.task = read_task(need(doc, "", "task"), "/task");
  if (doc.contains("seed")) s.seed = read_seed(doc["seed"], "/seed");
  if (doc.contains("output")) {
    const json& o = doc["output"];
    allow_keys(o, "/output", {"report", "svg", "csv"});
    if (o.contains("report")) s.output.report = read_string(o["report"], "/output/report");
    if (o.contains("svg")) s.output.svg = read_bool(o["svg"], "/output/svg");
    if (o.contains("csv")) s.output.csv = read_bool(o["csv"], "/output/csv");
  }
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

json to_json(const PolytopeSpec& p) { return json{{"H", matrix_json(p.h)}, {"b", p.b}}; }

json to_json(const Scenario& s) {
  json doc = json::object();
  if (s.system)
    doc["system"] = {{"A", matrix_json(s.system->a)},
                     {"B", matrix_json(s.system->b)},
                     {"X", to_json(s.system->x)},
                     {"U", to_json(s.system->u)}};
  struct TaskVisitor {
    json operator()(const CertifyTask& t) const { return {{"type", "certify"}, {"lambda", t.lambda}}; }
    json operator()(const PlanEpsilonTask& t) const {
      return {{"type", "plan-epsilon"}, {"lambda", t.lambda}, {"epsilon", t.epsilon}, {"run", strategy_name(t.run)}};
    }
    json operator()(const SelectLambdaTask& t) const {
      return {{"type", "select-lambda"}, {"mu", t.mu}, {"lambda_star", t.lambda_star}, {"run", strategy_name(t.run)}};
    }
    json operator()(const IterateTask& t) const {
      return {{"type", "iterate"},
              {"lambda", t.lambda},
              {"k", t.k},
              {"from", t.from == IterateFrom::StateSet ? "X" : "seed"}};
    }
    json operator()(const DistanceTask& t) const {
      return {{"type", "distance"}, {"C", to_json(t.c)}, {"D", to_json(t.d)}};
    }
    json operator()(const ReproduceTask& t) const { return {{"type", "reproduce"}, {"name", t.name}}; }
  };
  doc["task"] = std::visit(TaskVisitor{}, s.task);
  if (s.seed) {
    if (const auto* p = std::get_if<PolytopeSeedSpec>(&*s.seed)) {
      doc["seed"] = {{"polytope", to_json(p->set)}, {"lambda", p->lambda}};
    } else {
      const auto& e = std::get<EllipsoidSeedSpec>(*s.seed);
      doc["seed"] = {{"ellipsoid", {{"K", matrix_json(e.k)}, {"P", matrix_json(e.p)}, {"beta", e.beta}}},
                     {"lambda", e.lambda}};
    }
  }
  doc["output"] = {{"report", s.output.report}, {"svg", s.output.svg}, {"csv", s.output.csv}};
  return doc;
}

std::string serialize_scenario(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

DenseMatrix build_matrix(const Rows& rows) { return DenseMatrix::from_rows(rows); }

HPolytope build_polytope(const PolytopeSpec& p) { return HPolytope(build_matrix(p.h), p.b); }

SystemModel build_system(const SystemSpec& s) {
  const DenseMatrix a = build_matrix(s.a);
  const DenseMatrix b = build_matrix(s.b);
  const HPolytope x = build_polytope(s.x);
  const HPolytope u = build_polytope(s.u);
  if (x.dimension() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "X has dimension " + std::to_string(x.dimension()) + " but A has " + std::to_string(a.rows()) + " rows");
  if (u.dimension() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "U has dimension " + std::to_string(u.dimension()) + " but B has " + std::to_string(b.cols()) + " columns");
  return SystemModel(a, b, validate_cset(x), validate_cset(u));
}

void validate_scenario(const Scenario& s) {
  const bool needs_system = !std::holds_alternative<DistanceTask>(s.task) && !std::holds_alternative<ReproduceTask>(s.task);
  if (needs_system && !s.system) throw Error(ErrorCode::InvalidArgument, "task '" + task_name(s.task) + "' needs a system block");
  const bool needs_seed = std::holds_alternative<PlanEpsilonTask>(s.task) || std::holds_alternative<SelectLambdaTask>(s.task) ||
                          (std::holds_alternative<IterateTask>(s.task) && std::get<IterateTask>(s.task).from == IterateFrom::Seed);
  if (needs_seed && !s.seed) throw Error(ErrorCode::InvalidArgument, "task '" + task_name(s.task) + "' needs a seed block");
  if (s.system) {
    const SystemModel sys = build_system(*s.system);
    if (s.seed) {
      if (const auto* ps = std::get_if<PolytopeSeedSpec>(&*s.seed)) {
        if (build_polytope(ps->set).dimension() != sys.state_dim())
          throw Error(ErrorCode::DimensionMismatch, "seed polytope dimension differs from state dimension");
      } else {
        const auto& e = std::get<EllipsoidSeedSpec>(*s.seed);
        const DenseMatrix k = build_matrix(e.k);
        const DenseMatrix p = build_matrix(e.p);
        if (k.rows() != sys.input_dim() || k.cols() != sys.state_dim())
          throw Error(ErrorCode::DimensionMismatch, "seed K must be m x n");
        if (p.rows() != sys.state_dim() || p.cols() != sys.state_dim())
          throw Error(ErrorCode::DimensionMismatch, "seed P must be n x n");
      }
    }
  }
  if (const auto* d = std::get_if<DistanceTask>(&s.task)) {
    if (build_polytope(d->c).dimension() != build_polytope(d->d).dimension())
      throw Error(ErrorCode::DimensionMismatch, "distance sets have different dimensions");
  }
}

}  // namespace contracta::cli
