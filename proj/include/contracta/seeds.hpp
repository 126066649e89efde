#pragma once

#include "contracta/onestep.hpp"

namespace contracta {

/// Ellipsoid {x : x^T P x <= beta} made lambda-contractive by u = K x.
struct EllipsoidSeed {
  DenseMatrix k;  // m x n feedback
  DenseMatrix p;  // n x n, symmetric positive definite
  double beta = 1.0;
  double lambda = 1.0;
};

/// Checks, each with its own error code:
///   P > 0                                   (SeedNotPositiveDefinite)
///   (A+BK)^T P (A+BK) <= lambda^2 P         (SeedNotContracting)
///   A+BK Schur stable                       (SeedNotSchurStable)
///   ellipsoid inside {x in X : K x in U}    (SeedLevelTooLarge)
EllipsoidSeed validate_ellipsoid_seed(const SystemModel& sys, const EllipsoidSeed& seed);

/// Solves M^T P M - P = -I for M = (A + B K) / lambda. nullopt when the
/// linear system is singular.
std::optional<DenseMatrix> solve_scaled_lyapunov(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& k,
                                                 double lambda);

/// Spectral radius below one, decided by the solvability of the discrete
/// Lyapunov equation with a positive definite solution.
bool is_schur_stable(const DenseMatrix& m);

struct PolytopicSeed {
  CSetPolytope set;
  double lambda_eff;
};

/// Cross-polytope with vertices +-sqrt(beta / n) P^{-1/2} e_i. Its image
/// under A+BK lies in lambda * sqrt(n) times itself, so it is certified
/// lambda_eff = lambda sqrt(n) contractive (and re-verified).
/// Throws RateTooWeak when lambda sqrt(n) >= 1.
PolytopicSeed polytopic_inner_seed(const SystemModel& sys, const EllipsoidSeed& seed);

/// Returns C when it is a C-set and lambda-contractive; otherwise throws
/// SeedNotContractive naming the first failing vertex.
CSetPolytope accept_user_seed(const SystemModel& sys, double lambda, const HPolytope& c);

}  // namespace contracta
