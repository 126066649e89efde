#include "contracta/cli/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "contracta/cli/reproduce.hpp"
#include "contracta/cli/svg.hpp"
#include "contracta/error.hpp"
#include "contracta/metric.hpp"
#include "contracta/settings.hpp"

namespace contracta::cli {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Report certify(const SystemModel& sys, const CertifyTask& t) {
  Report r;
  const ContractionCertificate c = compute_certificate(sys, t.lambda);
  const json cj = certificate_json(c);
  r.result = {{"controllable", sys.controllable()}, {"certificate", cj}};
  std::ostringstream csv;
  csv << "quantity,value\n";
  for (const auto& [k, v] : cj.items()) csv << k << ',' << num(v.get<double>()) << '\n';
  r.csv = csv.str();
  return r;
}

void attach_run(Report& r, const SystemModel& sys, const IterationPlan& plan, const CSetPolytope& c, Strategy s) {
  const ApproximationResult run = approximate_cmax1(sys, plan, c, s);
  r.result["run"] = approximation_json(run);
  r.csv = records_csv(run.records);
  r.sets = {sys.state_set(), run.outer, run.terminal, c};
}

Report plan_epsilon(const SystemModel& sys, const ResolvedSeed& seed, const PlanEpsilonTask& t) {
  Report r;
  if (t.lambda < seed.lambda)
    r.warnings.push_back("plan lambda " + num(t.lambda) + " is below the seed's certified rate " + num(seed.lambda) +
                         "; contractiveness is re-checked at the plan lambda");
  const IterationPlan plan = epsilon_plan(sys, t.lambda, seed.set, t.epsilon);
  r.result = {{"plan", plan_json(plan)}};
  if (t.run) attach_run(r, sys, plan, seed.set, *t.run);
  return r;
}

Report select(const SystemModel& sys, const ResolvedSeed& seed, const SelectLambdaTask& t) {
  Report r;
  const IterationPlan plan = select_lambda(sys, t.lambda_star, seed.set, t.mu);
  r.result = {{"plan", plan_json(plan)}};
  if (t.run) {
    attach_run(r, sys, plan, seed.set, *t.run);
    const CSetPolytope terminal = validate_cset(polytope_from_json(r.result["run"]["terminal"]));
    r.result["mu_x_inside_terminal"] = is_subset(scale(sys.state_set().base(), t.mu), terminal.base());
  }
  return r;
}

Report iterate_task(const SystemModel& sys, const std::optional<ResolvedSeed>& seed, const IterateTask& t) {
  Report r;
  SeedKind kind = SeedKind::FromX;
  CSetPolytope start = sys.state_set();
  if (t.from == IterateFrom::Seed) {
    start = seed->set;
    kind = t.lambda >= seed->lambda ? SeedKind::FromSeedC : SeedKind::General;
  }
  const SetSequence seq = iterate(sys, t.lambda, start, t.k, kind);
  json entries = json::array();
  std::ostringstream csv;
  csv << "j,facets,distance_to_start\n";
  for (std::size_t j = 0; j < seq.entries.size(); ++j) {
    const double dist = set_distance(seq.entries[j], start).distance;
    entries.push_back({{"j", j}, {"facets", seq.entries[j].num_facets()}, {"distance_to_start", dist},
                       {"set", polytope_json(seq.entries[j].base())}});
    csv << j << ',' << seq.entries[j].num_facets() << ',' << num(dist) << '\n';
  }
  r.result = {{"lambda", t.lambda}, {"k", t.k}, {"entries", entries}};
  r.csv = csv.str();
  r.sets = seq.entries;
  return r;
}

Report distance(const DistanceTask& t) {
  Report r;
  const CSetPolytope c = validate_cset(build_polytope(t.c));
  const CSetPolytope d = validate_cset(build_polytope(t.d));
  const DistanceResult res = set_distance(c, d);
  r.result = distance_json(res);
  std::ostringstream csv;
  csv << "quantity,value\ndistance," << num(res.distance) << "\nmu_out," << num(res.mu_out) << "\nmu_in,"
      << num(res.mu_in) << '\n';
  r.csv = csv.str();
  r.sets = {d, c};
  return r;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << text;
}

struct CommonOptions {
  std::string scenario;
  std::string out;
  bool svg = false;
  bool csv = false;
  double tol = 0.0;
};

void apply_environment(const CommonOptions& o) {
  if (o.tol != 0.0) {
    if (!(o.tol > 0.0 && std::isfinite(o.tol))) throw Error(ErrorCode::InvalidArgument, "--tol must be positive");
    set_tolerance(o.tol);
  }
  if (const char* cap = std::getenv("CONTRACTA_MAX_FACETS")) {
    char* end = nullptr;
    const long long v = std::strtoll(cap, &end, 10);
    if (end == cap || *end != '\0' || v <= 0)
      throw Error(ErrorCode::InvalidArgument, std::string("CONTRACTA_MAX_FACETS must be a positive integer, got '") +
                                                  cap + "'");
    Settings s = settings();
    s.max_facets = static_cast<std::size_t>(v);
    set_settings(s);
  }
}

void emit(const Report& r, const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  const std::string text = dump_report(r);
  if (opts.report.empty()) {
    out << text;
  } else {
    write_text(opts.report, text);
    err << "wrote " << opts.report << '\n';
  }
  const std::string base = opts.report.empty() ? "contracta-" + r.task : opts.report;
  if (opts.csv) {
    if (r.csv.empty()) {
      err << "warning: task '" << r.task << "' produces no table\n";
    } else {
      const std::string path = replace_extension(base, ".csv");
      write_text(path, r.csv);
      err << "wrote " << path << '\n';
    }
  }
  if (opts.svg) {
    if (r.sets.empty() || r.sets.front().dimension() != 2) {
      err << "warning: nothing to draw; SVG output needs 2-D sets\n";
    } else {
      const std::string path = replace_extension(base, ".svg");
      write_svg(r.sets, path);
      err << "wrote " << path << '\n';
    }
  }
}

}  // namespace

ResolvedSeed resolve_seed(const SystemModel& sys, const SeedSpec& seed) {
  if (const auto* p = std::get_if<PolytopeSeedSpec>(&seed))
    return {accept_user_seed(sys, p->lambda, build_polytope(p->set)), p->lambda};
  const auto& e = std::get<EllipsoidSeedSpec>(seed);
  const PolytopicSeed ps = polytopic_inner_seed(sys, {build_matrix(e.k), build_matrix(e.p), e.beta, e.lambda});
  return {ps.set, ps.lambda_eff};
}

Report run_scenario(const Scenario& s) {
  const auto start = std::chrono::steady_clock::now();
  validate_scenario(s);
  Report r;
  if (const auto* t = std::get_if<ReproduceTask>(&s.task)) {
    r = reproduce(t->name);
  } else if (const auto* t = std::get_if<DistanceTask>(&s.task)) {
    r = distance(*t);
  } else {
    const SystemModel sys = build_system(*s.system);
    std::optional<ResolvedSeed> seed;
    if (s.seed) seed = resolve_seed(sys, *s.seed);
    if (const auto* t = std::get_if<CertifyTask>(&s.task)) r = certify(sys, *t);
    else if (const auto* t = std::get_if<PlanEpsilonTask>(&s.task)) r = plan_epsilon(sys, *seed, *t);
    else if (const auto* t = std::get_if<SelectLambdaTask>(&s.task)) r = select(sys, *seed, *t);
    else r = iterate_task(sys, seed, std::get<IterateTask>(s.task));
    if (seed) r.result["seed"] = {{"lambda", seed->lambda}, {"set", polytope_json(seed->set.base())}};
  }
  r.task = task_name(s.task);
  r.inputs = to_json(s);
  r.inputs.erase("output");
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

int exit_code_for(std::exception_ptr e, std::ostream& err) {
  try {
    std::rethrow_exception(e);
  } catch (const ParseError& ex) {
    err << "parse error: " << ex.what() << '\n';
    return kExitParse;
  } catch (const Error& ex) {
    const bool validation = category(ex.code()) == ErrorCategory::Validation;
    err << (validation ? "validation error: " : "computation error: ") << ex.what() << '\n';
    return validation ? kExitValidation : kExitComputation;
  } catch (const std::exception& ex) {
    err << "computation error: " << ex.what() << '\n';
    return kExitComputation;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lambda-contractive sets for constrained linear systems"};
  app.require_subcommand(1);
  CommonOptions opts;
  std::string reproduction;

  auto add_common = [&](CLI::App* sub, bool scenario_required) {
    auto* sc = sub->add_option("--scenario", opts.scenario, "Scenario file (JSON)");
    if (scenario_required) sc->required();
    sub->add_option("--out", opts.out, "Report path (default: stdout)");
    sub->add_flag("--svg", opts.svg, "Write an SVG of the 2-D sets next to the report");
    sub->add_flag("--csv", opts.csv, "Write the result table as CSV next to the report");
    sub->add_option("--tol", opts.tol, "Feasibility/optimality tolerance (default 1e-9)");
  };
  struct Command {
    const char* name;
    const char* help;
    const char* task;  // required task keyword, nullptr accepts any
  };
  const std::vector<Command> commands = {{"certify", "Contraction certificate eta", "certify"},
                                         {"plan", "Iteration bound for an epsilon approximation", "plan-epsilon"},
                                         {"select-lambda", "A-priori lambda for a mu approximation", "select-lambda"},
                                         {"iterate", "One-step set sequence", "iterate"},
                                         {"distance", "Set distance between two polytopes", "distance"},
                                         {"run", "Run whatever task the scenario names", nullptr}};
  std::vector<std::pair<CLI::App*, const Command*>> subs;
  for (const auto& c : commands) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    add_common(sub, true);
    subs.emplace_back(sub, &c);
  }
  CLI::App* repro = app.add_subcommand("reproduce", "Reproduce a reference result");
  repro->add_option("name", reproduction, "One of: bound-grid, exact-grid, lambda-selection, rotation-distances, stabilizable")
      ->required();
  add_common(repro, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    apply_environment(opts);
    Scenario scenario;
    if (repro->parsed()) {
      if (!opts.scenario.empty()) scenario = load_scenario(opts.scenario);
      scenario.task = ReproduceTask{reproduction};
    } else {
      scenario = load_scenario(opts.scenario);
      for (const auto& [sub, cmd] : subs) {
        if (!sub->parsed() || cmd->task == nullptr) continue;
        if (task_name(scenario.task) != cmd->task)
          throw Error(ErrorCode::InvalidArgument, std::string("subcommand '") + cmd->name + "' expects task '" +
                                                      cmd->task + "' but the scenario has '" +
                                                      task_name(scenario.task) + "'");
      }
    }
    OutputOptions output = scenario.output;
    if (!opts.out.empty()) output.report = opts.out;
    output.svg = output.svg || opts.svg;
    output.csv = output.csv || opts.csv;
    const Report report = run_scenario(scenario);
    for (const auto& w : report.warnings) err << "warning: " << w << '\n';
    emit(report, output, out, err);
    return kExitOk;
  } catch (...) {
    return exit_code_for(std::current_exception(), err);
  }
}

}  // namespace contracta::cli
