#include "contracta/seeds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "contracta/error.hpp"

namespace contracta {

namespace {

constexpr double kPsdTol = 1e-10;

std::string format_point(std::span<const double> v) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ')';
  return os.str();
}

double max_abs(const DenseMatrix& m) {
  double s = 0.0;
  for (double v : m.entries()) s = std::max(s, std::abs(v));
  return s;
}

// Solves M^T P M - P = -I entrywise in row-major unknowns P(i, j).
std::optional<DenseMatrix> solve_stein(const DenseMatrix& m) {
  const std::size_t n = m.rows();
  DenseMatrix lhs(n * n, n * n);
  Vector rhs(n * n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t eq = r * n + c;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) lhs(eq, i * n + j) += m(i, r) * m(j, c);
      lhs(eq, eq) -= 1.0;
      rhs[eq] = r == c ? -1.0 : 0.0;
    }
  const auto sol = solve_linear(lhs, rhs, 1e-12);
  if (!sol) return std::nullopt;
  DenseMatrix p(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) p(r, c) = 0.5 * ((*sol)[r * n + c] + (*sol)[c * n + r]);
  return p;
}

}  // namespace

std::optional<DenseMatrix> solve_scaled_lyapunov(const DenseMatrix& a, const DenseMatrix& b, const DenseMatrix& k,
                                                 double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::InvalidArgument, "lambda must be positive");
  return solve_stein((1.0 / lambda) * (a + b * k));
}

bool is_schur_stable(const DenseMatrix& m) {
  if (!m.is_square()) throw Error(ErrorCode::DimensionMismatch, "Schur test needs a square matrix");
  const auto p = solve_stein(m);
  return p && symmetric_eigen_min(*p) > 0.0;
}

EllipsoidSeed validate_ellipsoid_seed(const SystemModel& sys, const EllipsoidSeed& seed) {
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.input_dim();
  if (seed.k.rows() != m || seed.k.cols() != n) throw Error(ErrorCode::DimensionMismatch, "K must be m x n");
  if (seed.p.rows() != n || seed.p.cols() != n) throw Error(ErrorCode::DimensionMismatch, "P must be n x n");
  if (!(seed.beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "beta must be positive");
  if (!(seed.lambda > 0.0 && seed.lambda <= 1.0)) throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 1]");

  const SymmetricEigen pe = symmetric_eigen(seed.p);
  const double pscale = std::max(1.0, max_abs(seed.p));
  if (pe.values.front() <= kPsdTol * pscale)
    throw Error(ErrorCode::SeedNotPositiveDefinite, "P is not positive definite");

  const DenseMatrix closed = sys.a() + sys.b() * seed.k;
  const DenseMatrix gap = (seed.lambda * seed.lambda) * seed.p - closed.transpose() * seed.p * closed;
  // Symmetrize away round-off before the eigen test.
  const DenseMatrix sym_gap = 0.5 * (gap + gap.transpose());
  if (symmetric_eigen_min(sym_gap) < -kPsdTol * pscale)
    throw Error(ErrorCode::SeedNotContracting, "lambda^2 P - (A+BK)^T P (A+BK) is not positive semidefinite");

  if (!is_schur_stable(closed)) throw Error(ErrorCode::SeedNotSchurStable, "A+BK is not Schur stable");

  // max of a^T x over the ellipsoid is sqrt(beta a^T P^{-1} a).
  DenseMatrix pinv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < n; ++q)
        pinv(i, j) += pe.vectors(i, q) * pe.vectors(j, q) / pe.values[q];
  auto check_row = [&](std::span<const double> a, double b, const char* what) {
    const double quad = dot(a, pinv * a);
    if (quad <= 1e-300) return;
    if (seed.beta > b * b / quad * (1.0 + 1e-12))
      throw Error(ErrorCode::SeedLevelTooLarge,
                  std::string("ellipsoid level exceeds the ") + what + " bound " + std::to_string(b * b / quad));
  };
  const HPolytope& hx = sys.state_set().base();
  for (std::size_t i = 0; i < hx.num_facets(); ++i) check_row(hx.facets().row(i), hx.offsets()[i], "state");
  const HPolytope& hu = sys.input_set().base();
  const DenseMatrix mapped = hu.facets() * seed.k;
  for (std::size_t i = 0; i < hu.num_facets(); ++i) check_row(mapped.row(i), hu.offsets()[i], "input");
  return seed;
}

PolytopicSeed polytopic_inner_seed(const SystemModel& sys, const EllipsoidSeed& seed) {
  const EllipsoidSeed s = validate_ellipsoid_seed(sys, seed);
  const std::size_t n = sys.state_dim();
  const double lambda_eff = s.lambda * std::sqrt(static_cast<double>(n));
  if (lambda_eff >= 1.0)
    throw Error(ErrorCode::RateTooWeak,
                "lambda * sqrt(n) = " + std::to_string(lambda_eff) + " leaves no contraction");

  // x = r P^{-1/2} z with r = sqrt(beta / n); cross-polytope |z|_1 <= 1 has
  // facets sigma^T z <= 1 for sign vectors sigma, i.e. sigma^T P^{1/2} x <= r.
  const SymmetricEigen pe = symmetric_eigen(s.p);
  DenseMatrix sqrt_p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t q = 0; q < n; ++q)
        sqrt_p(i, j) += pe.vectors(i, q) * pe.vectors(j, q) * std::sqrt(pe.values[q]);
  const double r = std::sqrt(s.beta / static_cast<double>(n));
  const std::size_t count = std::size_t{1} << n;
  DenseMatrix h(count, n);
  Vector b(count, r);
  for (std::size_t mask = 0; mask < count; ++mask) {
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += ((mask >> i) & 1U ? -1.0 : 1.0) * sqrt_p(i, j);
      h(mask, j) = acc;
    }
  }
  CSetPolytope c = validate_cset(HPolytope(std::move(h), std::move(b)));
  if (!is_lambda_contractive(sys, lambda_eff, c))
    throw Error(ErrorCode::InvariantViolation, "constructed cross-polytope failed its contractiveness check");
  return {std::move(c), lambda_eff};
}

CSetPolytope accept_user_seed(const SystemModel& sys, double lambda, const HPolytope& c) {
  CSetPolytope cs = validate_cset(c);
  const ContractivenessCheck chk = check_lambda_contractive(sys, lambda, cs);
  if (!chk.inside_state_set) throw Error(ErrorCode::SeedNotContractive, "seed is not contained in X");
  if (!chk.contractive)
    throw Error(ErrorCode::SeedNotContractive,
                "no admissible input keeps vertex " + format_point(*chk.failing_vertex) + " inside lambda C");
  return cs;
}

}  // namespace contracta
