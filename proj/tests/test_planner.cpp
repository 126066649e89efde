#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "contracta/cli/reproduce.hpp"
#include "contracta/error.hpp"
#include "contracta/metric.hpp"
#include "contracta/planner.hpp"
#include "test_support.hpp"

namespace contracta {
namespace {

using testing::box;
using testing::interval;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

TEST(IterationBound, Examples) {
  EXPECT_EQ(iteration_bound(10.0 / 11.0, std::log(1.01), std::log(5.0), 1), 54u);
  EXPECT_EQ(iteration_bound(0.9, 0.5, 0.5, 3), 0u);
  EXPECT_EQ(iteration_bound(0.9, 0.5, 0.1, 3), 0u);
  // ratio exactly 1: ln(0.5 * d / d) / ln 0.5
  EXPECT_EQ(iteration_bound(0.5, 0.5, 1.0, 2), 2u);
  EXPECT_EQ(code_of([] { iteration_bound(1.0, 0.1, 1.0, 1); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { iteration_bound(0.9, 0.0, 1.0, 1); }), ErrorCode::InvalidArgument);
}

TEST(EpsilonPlan, Examples) {
  const SystemModel sys2 = cli::unstable_box_system(2);
  EXPECT_EQ(epsilon_plan(sys2, 0.6, box({2, 2}), 0.01).k, 192u);
  const IterationPlan p = epsilon_plan(sys2, 0.8, box({2, 2}), 0.05);
  EXPECT_EQ(p.k, 98u);
  EXPECT_NEAR(p.d_cx, std::log(5.0), 1e-12);
  EXPECT_NEAR(p.delta, std::log(1.05), 1e-15);
  EXPECT_EQ(p.n, 2u);
  const SystemModel sys1 = cli::unstable_box_system(1);
  for (double lambda : {0.6, 0.8, 1.0}) EXPECT_EQ(epsilon_plan(sys1, lambda, interval(-2, 2), 0.1).k, 30u);
  for (std::size_t n : {1u, 2u}) {
    EXPECT_EQ(epsilon_plan(cli::unstable_box_system(n), 0.8, box(Vector(n, 2.0)), 4.0).k, 0u);
    EXPECT_EQ(epsilon_plan(cli::unstable_box_system(n), 0.8, box(Vector(n, 2.0)), 6.0).k, 0u);
  }
  EXPECT_EQ(code_of([&] { epsilon_plan(sys1, 0.5, interval(-2, 2), 0.1); }), ErrorCode::SeedNotContractive);
  EXPECT_EQ(code_of([&] { epsilon_plan(sys1, 0.8, interval(-2, 2), 0.0); }), ErrorCode::InvalidArgument);
}

TEST(EpsilonPlan, FullBoundGrid) {
  const double lambdas[] = {0.6, 0.8, 1.0};
  const double eps[] = {0.01, 0.05, 0.1};
  const std::size_t two_d[3][3] = {{192, 132, 106}, {142, 98, 80}, {112, 78, 64}};
  const std::size_t one_d[3] = {54, 37, 30};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(epsilon_plan(cli::unstable_box_system(2), lambdas[i], box({2, 2}), eps[j]).k, two_d[i][j]);
      EXPECT_EQ(epsilon_plan(cli::unstable_box_system(1), lambdas[i], interval(-2, 2), eps[j]).k, one_d[j]);
    }
}

TEST(ExactOracle, Grid) {
  EXPECT_EQ(exact_k_oracle_1d(1.0, 0.01), 47u);
  EXPECT_EQ(exact_k_oracle_1d(0.6, 0.1), 7u);
  EXPECT_EQ(exact_k_oracle_1d(0.8, 0.05), 13u);
  const double lambdas[] = {0.6, 0.8, 1.0};
  const double eps[] = {0.01, 0.05, 0.1};
  const std::size_t grid[3][3] = {{10, 8, 7}, {18, 13, 11}, {47, 30, 23}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(exact_k_oracle_1d(lambdas[i], eps[j]), grid[i][j]);
  EXPECT_THROW(exact_k_oracle_1d(0.5, 0.1), Error);
  EXPECT_THROW(exact_k_oracle_1d(0.8, 4.5), Error);
  EXPECT_THROW(exact_k_oracle_1d(0.8, 0.0), Error);
}

TEST(ExactOracle, AgreesWithAdaptiveFirstHit) {
  const SystemModel sys = cli::unstable_box_system(1);
  const CSetPolytope c = interval(-2, 2);
  for (double lambda : {0.6, 0.7, 0.8, 0.9, 1.0})
    for (double eps : {0.01, 0.05, 0.1, 0.5, 2.0}) {
      const IterationPlan plan = epsilon_plan(sys, lambda, c, eps);
      EXPECT_EQ(approximate_cmax1(sys, plan, c, Strategy::AdaptiveInclusion).k_star, exact_k_oracle_1d(lambda, eps))
          << lambda << " " << eps;
    }
}

TEST(SelectLambda, WorkedExample) {
  const SystemModel sys = cli::unstable_box_system(1);
  const IterationPlan p = select_lambda(sys, 0.98, interval(-2, 2), 5.0 / 6.0);
  ASSERT_TRUE(p.selection);
  EXPECT_EQ(p.k, 30u);
  EXPECT_TRUE(p.selection->lambda_updated);
  EXPECT_NEAR(p.selection->branch_value, 2.0 * std::pow(0.98, 30.0), 1e-15);
  EXPECT_NEAR(p.selection->branch_value, 1.0910, 1e-3);
  EXPECT_NEAR(p.lambda, 0.9971038228033785, 1e-12);
  EXPECT_NEAR(p.selection->conservatism, 0.8551911401689253, 1e-10);
  EXPECT_NEAR(p.epsilon, 0.1, 1e-15);
  EXPECT_EQ(p.purpose, PlanPurpose::MuApprox);
  EXPECT_LE(1.0 + 5.0 / 6.0, 2.0 * std::pow(p.lambda, 30.0) + 1e-12);
}

TEST(SelectLambda, BothBranches) {
  const SystemModel sys = cli::unstable_box_system(1);
  const CSetPolytope c = interval(-2, 2);
  // Frozen from a scalar re-derivation of the branch rule.
  IterationPlan p = select_lambda(sys, 0.6, c, 0.12);
  EXPECT_EQ(p.k, 1u);
  EXPECT_FALSE(p.selection->lambda_updated);
  EXPECT_EQ(p.lambda, 0.6);
  EXPECT_EQ(p.selection->conservatism, 0.0);

  p = select_lambda(sys, 0.6, c, 0.5);
  EXPECT_EQ(p.k, 15u);
  EXPECT_TRUE(p.selection->lambda_updated);
  EXPECT_NEAR(p.lambda, 0.9810039383174142, 1e-12);
  EXPECT_NEAR(p.selection->conservatism, 0.9525098457935355, 1e-10);

  p = select_lambda(sys, 0.9, c, 0.3);
  EXPECT_EQ(p.k, 8u);
  EXPECT_NEAR(p.lambda, 0.9475762555128998, 1e-12);

  for (double mu : {1.0 / 9.0, 0.05}) {
    p = select_lambda(sys, 0.6, c, mu);
    EXPECT_EQ(p.k, 0u) << mu;
    EXPECT_EQ(p.lambda, 0.6);
    EXPECT_FALSE(p.selection->lambda_updated);
  }
}

TEST(SelectLambda, Errors) {
  const SystemModel sys = cli::unstable_box_system(1);
  EXPECT_EQ(code_of([&] { select_lambda(sys, 0.5, interval(-2, 2), 0.5); }), ErrorCode::SeedNotContractive);
  EXPECT_EQ(code_of([&] { select_lambda(sys, 1.0, interval(-2, 2), 0.5); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { select_lambda(sys, 0.8, interval(-2, 2), 1.0); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { select_lambda(cli::uncontrolled_decay_system(), 0.9, interval(-1, 1), 0.5); }),
            ErrorCode::NotControllable);
}

TEST(Approximate, Strategies) {
  const SystemModel sys = cli::unstable_box_system(1);
  const CSetPolytope c = interval(-2, 2);
  const IterationPlan sel = select_lambda(sys, 0.98, c, 5.0 / 6.0);
  const ApproximationResult r = approximate_cmax1(sys, sel, c, Strategy::AdaptiveInclusion);
  EXPECT_EQ(r.k_star, 23u);
  EXPECT_TRUE(r.terminal_contractive);
  EXPECT_EQ(r.records.size(), 24u);
  EXPECT_TRUE(r.records.back().holds);
  for (std::size_t j = 0; j + 1 < r.records.size(); ++j) EXPECT_FALSE(r.records[j].holds);
  EXPECT_TRUE(is_subset(scale(sys.state_set().base(), 5.0 / 6.0), r.terminal));

  EXPECT_EQ(approximate_cmax1(sys, epsilon_plan(sys, 0.8, c, 0.05), c, Strategy::AdaptiveInclusion).k_star, 13u);

  const IterationPlan p = epsilon_plan(sys, 0.8, c, 0.1);
  const ApproximationResult full = approximate_cmax1(sys, p, c, Strategy::AprioriBound);
  const ApproximationResult early = approximate_cmax1(sys, p, c, Strategy::AdaptiveInclusion);
  EXPECT_EQ(full.k_star, 30u);
  EXPECT_EQ(early.k_star, 11u);
  EXPECT_TRUE(is_subset(early.terminal, full.terminal));
  EXPECT_TRUE(full.records.back().holds);
}

TEST(Approximate, BudgetExceededWhenPlanIsTooShort) {
  const SystemModel sys = cli::unstable_box_system(1);
  const CSetPolytope c = interval(-2, 2);
  IterationPlan p = epsilon_plan(sys, 0.8, c, 0.05);
  p.k = 5;
  EXPECT_EQ(code_of([&] { approximate_cmax1(sys, p, c, Strategy::AdaptiveInclusion); }), ErrorCode::BudgetExceeded);
}

TEST(PlannerProperty, AprioriGuaranteeHolds) {
  for (std::size_t n : {1u, 2u}) {
    const SystemModel sys = cli::unstable_box_system(n);
    const CSetPolytope c = box(Vector(n, 2.0));
    for (double lambda : {0.6, 0.8, 1.0})
      for (double eps : {0.01, 0.1, 1.0}) {
        const IterationPlan plan = epsilon_plan(sys, lambda, c, eps);
        const SetSequence qx = iterate(sys, lambda, sys.state_set(), plan.k, SeedKind::FromX);
        const SetSequence qc = iterate(sys, lambda, c, plan.k, SeedKind::FromSeedC);
        EXPECT_TRUE(is_subset(qx.entries.back(), scale(qc.entries.back().base(), 1.0 + eps)))
            << "n=" << n << " lambda=" << lambda << " eps=" << eps;
        const ApproximationResult a = approximate_cmax1(sys, plan, c, Strategy::AdaptiveInclusion);
        EXPECT_LE(a.k_star, plan.k);
      }
  }
}

TEST(PlannerProperty, SelectedLambdaGuarantees) {
  const SystemModel sys = cli::unstable_box_system(1);
  const CSetPolytope c = interval(-2, 2);
  for (double lambda_star : {0.6, 0.8, 0.95})
    for (double mu : {0.2, 0.5, 0.8, 0.9}) {
      const IterationPlan p = select_lambda(sys, lambda_star, c, mu);
      EXPECT_LE(1.0 + mu, 2.0 * std::pow(p.lambda, static_cast<double>(p.k)) + 1e-12);
      EXPECT_LE(iteration_bound(p.eta, p.delta, p.d_cx, p.n), p.k);
      const ApproximationResult a = approximate_cmax1(sys, p, c, Strategy::AdaptiveInclusion);
      EXPECT_LE(a.k_star, p.k);
      EXPECT_LE(1.0 + mu, 2.0 * std::pow(p.lambda, static_cast<double>(a.k_star)) + 1e-12);
      EXPECT_TRUE(is_subset(scale(sys.state_set().base(), mu), a.terminal)) << lambda_star << " " << mu;
    }
}

}  // namespace
}  // namespace contracta
