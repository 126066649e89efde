#include "contracta/planner.hpp"

#include <cmath>
#include <string>

#include "contracta/error.hpp"
#include "contracta/metric.hpp"

namespace contracta {

namespace {

constexpr double kCeilNudge = 1e-12;

std::size_t nudged_ceil(double r) {
  const double c = std::ceil(r - kCeilNudge);
  return c <= 0.0 ? 0 : static_cast<std::size_t>(c);
}

void require_contractive(const SystemModel& sys, double lambda, const CSetPolytope& c) {
  const ContractivenessCheck chk = check_lambda_contractive(sys, lambda, c);
  if (chk.contractive) return;
  std::string what = "seed is not " + std::to_string(lambda) + "-contractive";
  if (!chk.inside_state_set) what += " (not contained in X)";
  throw Error(ErrorCode::SeedNotContractive, what);
}

InclusionRecord inclusion_record(std::size_t j, const CSetPolytope& qx, const CSetPolytope& qc, double epsilon) {
  InclusionRecord rec;
  rec.j = j;
  rec.facets_x = qx.num_facets();
  rec.facets_c = qc.num_facets();
  rec.factor = inclusion_factor(qc, qx);
  rec.distance = std::log(std::max(1.0, rec.factor));
  rec.slack = (1.0 + epsilon) - rec.factor;
  rec.holds = is_subset(qx.base(), scale(qc.base(), 1.0 + epsilon));
  return rec;
}

}  // namespace

std::size_t iteration_bound(double eta, double delta, double d, std::size_t n) {
  if (!(eta >= 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidArgument, "eta must lie in [0, 1)");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be positive");
  if (!(d >= 0.0)) throw Error(ErrorCode::InvalidArgument, "distance must be nonnegative");
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "state dimension must be positive");
  if (d <= delta) return 0;
  if (eta == 0.0) return n;  // one n-step application collapses the distance
  return n * nudged_ceil((std::log(delta) - std::log(d)) / std::log(eta));
}

IterationPlan epsilon_plan(const SystemModel& sys, double lambda, const CSetPolytope& c, double epsilon) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  require_contractive(sys, lambda, c);
  IterationPlan plan;
  plan.lambda = lambda;
  plan.epsilon = epsilon;
  plan.delta = std::log1p(epsilon);
  plan.n = sys.state_dim();
  plan.certificate = compute_certificate(sys, lambda);
  plan.eta = plan.certificate.eta;
  plan.d_cx = set_distance(c, sys.state_set()).distance;
  plan.k = iteration_bound(plan.eta, plan.delta, plan.d_cx, plan.n);
  plan.purpose = PlanPurpose::EpsilonApprox;
  return plan;
}

std::size_t exact_k_oracle_1d(double lambda, double epsilon) {
  if (!(lambda >= 0.6 && lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in [0.6, 1]");
  if (!(epsilon > 0.0 && epsilon <= 4.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must lie in (0, 4]");
  const double num = std::log((1.1 - lambda) * (8.0 / epsilon - 2.0) + 1.0);
  const double den = std::log(1.1) - std::log(lambda);
  return nudged_ceil(num / den);
}

IterationPlan select_lambda(const SystemModel& sys, double lambda_star, const CSetPolytope& c, double mu) {
  if (!(lambda_star > 0.0 && lambda_star < 1.0))
    throw Error(ErrorCode::InvalidArgument, "lambda_star must lie in (0, 1)");
  if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorCode::InvalidArgument, "mu must lie in (0, 1)");
  const double epsilon = (1.0 - mu) / (2.0 * mu);
  IterationPlan plan = epsilon_plan(sys, lambda_star, c, epsilon);
  plan.purpose = PlanPurpose::MuApprox;

  LambdaSelection sel;
  sel.mu = mu;
  sel.lambda_star = lambda_star;
  sel.k_at_lambda_star = plan.k;
  sel.eta_at_lambda_star = plan.eta;
  sel.branch_value = 2.0 * std::pow(lambda_star, static_cast<double>(plan.k));

  if (1.0 + mu > sel.branch_value) {
    // 2 lambda_star^0 = 2 >= 1 + mu, so this branch always has k > 0.
    if (plan.k == 0) throw Error(ErrorCode::InvariantViolation, "lambda update needs k > 0");
    const double lambda = std::exp((std::log1p(mu) - std::log(2.0)) / static_cast<double>(plan.k));
    plan.lambda = lambda;
    plan.certificate = compute_certificate(sys, lambda);
    plan.eta = plan.certificate.eta;
    const std::size_t needed = iteration_bound(plan.eta, plan.delta, plan.d_cx, plan.n);
    if (needed > plan.k)
      throw Error(ErrorCode::InvariantViolation,
                  "recomputed eta needs " + std::to_string(needed) + " > " + std::to_string(plan.k) + " iterations");
    sel.lambda_updated = true;
  }
  sel.conservatism = (plan.lambda - lambda_star) / (1.0 - lambda_star);
  plan.selection = sel;
  return plan;
}

ApproximationResult approximate_cmax1(const SystemModel& sys, const IterationPlan& plan, const CSetPolytope& c,
                                      Strategy strategy) {
  const double eps = plan.epsilon;
  CSetPolytope qx = sys.state_set();
  CSetPolytope qc = c;
  std::vector<InclusionRecord> records;
  std::size_t j = 0;

  if (strategy == Strategy::AprioriBound) {
    const SetSequence sc = iterate(sys, plan.lambda, c, plan.k, SeedKind::FromSeedC);
    const SetSequence sx = iterate(sys, plan.lambda, sys.state_set(), plan.k, SeedKind::FromX);
    qc = sc.entries.back();
    qx = sx.entries.back();
    j = plan.k;
    records.push_back(inclusion_record(j, qx, qc, eps));
  } else {
    while (true) {
      records.push_back(inclusion_record(j, qx, qc, eps));
      if (records.back().holds) break;
      if (j >= plan.k)
        throw Error(ErrorCode::BudgetExceeded,
                    "inclusion not reached within the a-priori bound k = " + std::to_string(plan.k));
      const CSetPolytope next_x = one_step_set(sys, plan.lambda, qx);
      const CSetPolytope next_c = one_step_set(sys, plan.lambda, qc);
      if (!is_subset(next_x.base(), qx.base()) || !is_subset(qc.base(), next_c.base()))
        throw Error(ErrorCode::InvariantViolation, "sequence nesting broken at step " + std::to_string(j + 1));
      qx = next_x;
      qc = next_c;
      ++j;
    }
  }

  const bool contractive = is_lambda_contractive(sys, plan.lambda, qc);
  if (!contractive)
    throw Error(ErrorCode::InvariantViolation, "terminal set failed the contractiveness check");
  return ApproximationResult{qc, qx, j, strategy, contractive, std::move(records)};
}

}  // namespace contracta
