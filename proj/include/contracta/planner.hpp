#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "contracta/certificate.hpp"
#include "contracta/onestep.hpp"

namespace contracta {

enum class PlanPurpose { EpsilonApprox, MuApprox };

/// Details of an a-priori lambda choice for mu-approximation of C_max^1.
struct LambdaSelection {
  double mu = 0.0;
  double lambda_star = 0.0;
  std::size_t k_at_lambda_star = 0;
  double branch_value = 0.0;  // 2 * lambda_star^k
  bool lambda_updated = false;  // second case: lambda raised so 2 lambda^k = 1 + mu
  double eta_at_lambda_star = 1.0;
  double conservatism = 0.0;  // (lambda - lambda_star) / (1 - lambda_star)
};

struct IterationPlan {
  double lambda = 1.0;
  double epsilon = 0.0;
  double delta = 0.0;  // ln(1 + epsilon)
  double d_cx = 0.0;   // d(C, X)
  double eta = 1.0;
  std::size_t k = 0;
  std::size_t n = 1;
  PlanPurpose purpose = PlanPurpose::EpsilonApprox;
  ContractionCertificate certificate;
  std::optional<LambdaSelection> selection;
};

/// Smallest k with k >= n * ceil((ln delta - ln d) / ln eta) when d > delta,
/// else 0. The ratio is nudged down by 1e-12 before the ceiling.
std::size_t iteration_bound(double eta, double delta, double d, std::size_t n);

/// Iteration count guaranteeing Q_k(X) in (1 + epsilon) Q_k(C) for a
/// lambda-contractive C. Throws SeedNotContractive / NotControllable.
IterationPlan epsilon_plan(const SystemModel& sys, double lambda, const CSetPolytope& c, double epsilon);

/// Closed-form smallest k for the scalar system x+ = 1.1 x + u, X = [-10, 10],
/// U = [-1, 1], C = [-2, 2]: ceil(ln((1.1 - lambda)(8 / epsilon - 2) + 1) /
/// (ln 1.1 - ln lambda)). Requires lambda in [0.6, 1] and epsilon in (0, 4].
std::size_t exact_k_oracle_1d(double lambda, double epsilon);

/// A-priori (lambda, k) with mu C_max^1 in Q_k^lambda(C), starting from a
/// lambda_star-contractive C.
IterationPlan select_lambda(const SystemModel& sys, double lambda_star, const CSetPolytope& c, double mu);

enum class Strategy { AprioriBound, AdaptiveInclusion };

struct InclusionRecord {
  std::size_t j = 0;
  std::size_t facets_x = 0;
  std::size_t facets_c = 0;
  double factor = 0.0;    // smallest mu with Q_j(X) in mu Q_j(C)
  double distance = 0.0;  // ln(factor), d(Q_j(C), Q_j(X))
  double slack = 0.0;     // (1 + epsilon) - factor
  bool holds = false;
};

struct ApproximationResult {
  CSetPolytope terminal;  // T = Q_{k*}^lambda(C)
  CSetPolytope outer;     // Q_{k*}^lambda(X)
  std::size_t k_star = 0;
  Strategy strategy = Strategy::AdaptiveInclusion;
  bool terminal_contractive = false;
  std::vector<InclusionRecord> records;
};

/// Runs either the full a-priori count or stops at the first j with
/// Q_j(X) in (1 + epsilon) Q_j(C). Throws BudgetExceeded if plan.k passes
/// without the inclusion.
ApproximationResult approximate_cmax1(const SystemModel& sys, const IterationPlan& plan, const CSetPolytope& c,
                                      Strategy strategy);

}  // namespace contracta
