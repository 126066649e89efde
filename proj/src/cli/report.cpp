#include "contracta/cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace contracta::cli {

using nlohmann::json;

namespace {

std::string strategy_label(Strategy s) { return s == Strategy::AprioriBound ? "apriori" : "adaptive"; }

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json polytope_json(const HPolytope& p) {
  json h = json::array();
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    const auto row = p.facets().row(i);
    h.push_back(Vector(row.begin(), row.end()));
  }
  return {{"H", h}, {"b", p.offsets()}};
}

HPolytope polytope_from_json(const json& j) {
  std::vector<Vector> rows;
  for (const auto& row : j.at("H")) rows.push_back(row.get<Vector>());
  return HPolytope(DenseMatrix::from_rows(rows), j.at("b").get<Vector>());
}

json certificate_json(const ContractionCertificate& c) {
  return {{"lambda", c.lambda}, {"r_x_lo", c.r_x_lo},       {"r_x_hi", c.r_x_hi},       {"r_u_lo", c.r_u_lo},
          {"alpha", c.alpha},   {"sigma_min", c.sigma_min}, {"sigma_max", c.sigma_max}, {"rho_hat", c.rho_hat},
          {"eta", c.eta}};
}

json selection_json(const LambdaSelection& s) {
  return {{"mu", s.mu},
          {"lambda_star", s.lambda_star},
          {"k_at_lambda_star", s.k_at_lambda_star},
          {"branch_value", s.branch_value},
          {"lambda_updated", s.lambda_updated},
          {"eta_at_lambda_star", s.eta_at_lambda_star},
          {"conservatism", s.conservatism}};
}

json plan_json(const IterationPlan& p) {
  json out = {{"lambda", p.lambda},
              {"epsilon", p.epsilon},
              {"delta", p.delta},
              {"d_cx", p.d_cx},
              {"eta", p.eta},
              {"k", p.k},
              {"n", p.n},
              {"purpose", p.purpose == PlanPurpose::EpsilonApprox ? "epsilon" : "mu"},
              {"certificate", certificate_json(p.certificate)}};
  if (p.selection) out["selection"] = selection_json(*p.selection);
  return out;
}

json record_json(const InclusionRecord& r) {
  return {{"j", r.j},           {"facets_x", r.facets_x}, {"facets_c", r.facets_c}, {"factor", r.factor},
          {"distance", r.distance}, {"slack", r.slack},   {"holds", r.holds}};
}

json approximation_json(const ApproximationResult& a) {
  json records = json::array();
  for (const auto& r : a.records) records.push_back(record_json(r));
  return {{"strategy", strategy_label(a.strategy)},
          {"k_star", a.k_star},
          {"terminal_contractive", a.terminal_contractive},
          {"terminal", polytope_json(a.terminal.base())},
          {"outer", polytope_json(a.outer.base())},
          {"records", records}};
}

json distance_json(const DistanceResult& d) {
  return {{"distance", d.distance}, {"mu_out", d.mu_out}, {"mu_in", d.mu_in}};
}

std::string records_csv(const std::vector<InclusionRecord>& records) {
  std::ostringstream out;
  out << "j,facets_x,facets_c,factor,distance,slack,holds\n";
  for (const auto& r : records)
    out << r.j << ',' << r.facets_x << ',' << r.facets_c << ',' << num(r.factor) << ',' << num(r.distance) << ','
        << num(r.slack) << ',' << (r.holds ? "true" : "false") << '\n';
  return out.str();
}

json to_json(const Report& r) {
  return {{"task", r.task},
          {"inputs", r.inputs},
          {"result", r.result},
          {"warnings", r.warnings},
          {"timing", {{"seconds", r.seconds}}}};
}

std::string dump_report(const Report& r) { return to_json(r).dump(2) + "\n"; }

}  // namespace contracta::cli
