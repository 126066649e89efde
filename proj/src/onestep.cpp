#include "contracta/onestep.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contracta/error.hpp"
#include "contracta/settings.hpp"

namespace contracta {

namespace {

void require_lambda(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 1], got " + std::to_string(lambda));
}

double relaxed(double b, double tol) { return b + tol * std::max(1.0, std::abs(b)); }

}  // namespace

SystemModel::SystemModel(DenseMatrix a, DenseMatrix b, CSetPolytope x, CSetPolytope u)
    : a_(std::move(a)), b_(std::move(b)), x_(std::move(x)), u_(std::move(u)) {
  if (!a_.is_square() || a_.empty()) throw Error(ErrorCode::DimensionMismatch, "A must be square and nonempty");
  if (b_.rows() != a_.rows() || b_.cols() == 0)
    throw Error(ErrorCode::DimensionMismatch, "B must have as many rows as A and at least one column");
  if (x_.dimension() != a_.rows()) throw Error(ErrorCode::DimensionMismatch, "X dimension differs from state dimension");
  if (u_.dimension() != b_.cols()) throw Error(ErrorCode::DimensionMismatch, "U dimension differs from input dimension");

  const std::size_t n = a_.rows();
  DenseMatrix block = b_;  // A^0 B
  std::vector<DenseMatrix> blocks;
  for (std::size_t j = 0; j < n; ++j) {
    blocks.push_back(block);
    block = a_ * block;
  }
  phi_ = blocks.back();
  for (std::size_t j = n - 1; j-- > 0;) phi_ = hstack(phi_, blocks[j]);
  sigma_min_ = singular_extremes(phi_).sigma_min;
  controllable_ = sigma_min_ > settings().ctrb_tol;
}

bool check_controllability(const SystemModel& sys) { return sys.controllable(); }

CSetPolytope one_step_set(const SystemModel& sys, double lambda, const CSetPolytope& d) {
  require_lambda(lambda);
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.input_dim();
  if (d.dimension() != n) throw Error(ErrorCode::DimensionMismatch, "target set dimension differs from state dimension");

  const HPolytope& hx = sys.state_set().base();
  const HPolytope& hu = sys.input_set().base();
  const HPolytope& hd = d.base();

  // Lifted constraints on (x, u):
  //   H_X x <= b_X,  H_U u <= b_U,  H_D A x + H_D B u <= lambda b_D.
  DenseMatrix lifted = vstack(hstack(hx.facets(), DenseMatrix(hx.num_facets(), m)),
                              hstack(DenseMatrix(hu.num_facets(), n), hu.facets()));
  lifted = vstack(lifted, hstack(hd.facets() * sys.a(), hd.facets() * sys.b()));
  Vector rhs = hx.offsets();
  rhs.insert(rhs.end(), hu.offsets().begin(), hu.offsets().end());
  for (double v : hd.offsets()) rhs.push_back(lambda * v);

  const HPolytope lifted_set(std::move(lifted), std::move(rhs));
  if (is_empty(lifted_set)) throw Error(ErrorCode::EmptySet, "one-step lifted system is infeasible");
  return validate_cset(project(lifted_set, n));
}

SetSequence iterate(const SystemModel& sys, double lambda, const CSetPolytope& d, std::size_t k, SeedKind seed) {
  require_lambda(lambda);
  SetSequence seq{lambda, seed, {d}};
  seq.entries.reserve(k + 1);
  for (std::size_t j = 0; j < k; ++j) {
    seq.entries.push_back(one_step_set(sys, lambda, seq.entries.back()));
    const HPolytope& prev = seq.entries[j].base();
    const HPolytope& next = seq.entries[j + 1].base();
    if (seed == SeedKind::FromX && !is_subset(next, prev))
      throw Error(ErrorCode::InvariantViolation, "sequence from X is not nested at step " + std::to_string(j + 1));
    if (seed == SeedKind::FromSeedC && !is_subset(prev, next))
      throw Error(ErrorCode::InvariantViolation,
                  "sequence from a contractive seed is not expanding at step " + std::to_string(j + 1));
  }
  return seq;
}

ContractivenessCheck check_lambda_contractive(const SystemModel& sys, double lambda, const CSetPolytope& c) {
  require_lambda(lambda);
  const std::size_t n = sys.state_dim();
  if (c.dimension() != n) throw Error(ErrorCode::DimensionMismatch, "set dimension differs from state dimension");
  ContractivenessCheck out;
  out.inside_state_set = is_subset(c.base(), sys.state_set().base());
  if (!out.inside_state_set) return out;

  const double tol = settings().feas_tol;
  const HPolytope& hc = c.base();
  const HPolytope& hu = sys.input_set().base();
  const DenseMatrix hcb = hc.facets() * sys.b();
  const DenseMatrix hca = hc.facets() * sys.a();
  for (const Vector& v : vertices(hc)) {
    // exists u: H_U u <= b_U, H_C B u <= lambda b_C - H_C A v
    LinearProgram lp;
    lp.objective.assign(sys.input_dim(), 0.0);
    lp.constraints = vstack(hu.facets(), hcb);
    lp.rhs = hu.offsets();
    const Vector hav = hca * v;
    for (std::size_t i = 0; i < hc.num_facets(); ++i)
      lp.rhs.push_back(relaxed(lambda * hc.offsets()[i] - hav[i], tol));
    if (solve_lp(lp).status == LpStatus::Infeasible) {
      out.failing_vertex = v;
      return out;
    }
  }
  out.contractive = true;
  return out;
}

bool is_lambda_contractive(const SystemModel& sys, double lambda, const CSetPolytope& c) {
  return check_lambda_contractive(sys, lambda, c).contractive;
}

std::optional<MembershipCertificate> membership_certificate(const SystemModel& sys, double lambda,
                                                            const CSetPolytope& c, std::span<const double> x,
                                                            std::size_t k) {
  require_lambda(lambda);
  const std::size_t n = sys.state_dim();
  const std::size_t m = sys.input_dim();
  if (c.dimension() != n || x.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "membership certificate dimension mismatch");
  const double tol = settings().feas_tol;
  const HPolytope& hx = sys.state_set().base();
  const HPolytope& hu = sys.input_set().base();
  const HPolytope& hc = c.base();

  // powers[j] = A^j, j = 0..k+1
  std::vector<DenseMatrix> powers{DenseMatrix::identity(n)};
  for (std::size_t j = 1; j <= k + 1; ++j) powers.push_back(sys.a() * powers.back());

  const std::size_t nvar = (k + 1) * m + n;
  const std::size_t gamma0 = (k + 1) * m;
  std::vector<Vector> rows;
  Vector rhs;

  // State constraints along the scaled trajectory, j = 0..k.
  for (std::size_t j = 0; j <= k; ++j) {
    const Vector ajx = powers[j] * x;
    // Column block for u_i, i < j: H_X A^{j-1-i} B lambda^i.
    std::vector<DenseMatrix> blocks;
    for (std::size_t i = 0; i < j; ++i)
      blocks.push_back(std::pow(lambda, static_cast<double>(i)) * (hx.facets() * (powers[j - 1 - i] * sys.b())));
    const double lj = std::pow(lambda, static_cast<double>(j));
    for (std::size_t r = 0; r < hx.num_facets(); ++r) {
      Vector row(nvar, 0.0);
      for (std::size_t i = 0; i < j; ++i)
        for (std::size_t q = 0; q < m; ++q) row[i * m + q] = blocks[i](r, q);
      rows.push_back(std::move(row));
      rhs.push_back(relaxed(lj * hx.offsets()[r] - dot(hx.facets().row(r), ajx), tol));
    }
  }
  // u_i in U
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t r = 0; r < hu.num_facets(); ++r) {
      Vector row(nvar, 0.0);
      for (std::size_t q = 0; q < m; ++q) row[i * m + q] = hu.facets()(r, q);
      rows.push_back(std::move(row));
      rhs.push_back(hu.offsets()[r]);
    }
  // gamma in C
  for (std::size_t r = 0; r < hc.num_facets(); ++r) {
    Vector row(nvar, 0.0);
    for (std::size_t q = 0; q < n; ++q) row[gamma0 + q] = hc.facets()(r, q);
    rows.push_back(std::move(row));
    rhs.push_back(hc.offsets()[r]);
  }
  // sum_i A^{k-i} B lambda^i u_i - lambda^{k+1} gamma = -A^{k+1} x, as two rows each.
  {
    DenseMatrix eq(n, nvar);
    for (std::size_t i = 0; i <= k; ++i) {
      const DenseMatrix blk = std::pow(lambda, static_cast<double>(i)) * (powers[k - i] * sys.b());
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t q = 0; q < m; ++q) eq(r, i * m + q) = blk(r, q);
    }
    const double lk1 = std::pow(lambda, static_cast<double>(k + 1));
    for (std::size_t r = 0; r < n; ++r) eq(r, gamma0 + r) = -lk1;
    const Vector target = powers[k + 1] * x;
    for (std::size_t r = 0; r < n; ++r) {
      Vector up(eq.row(r).begin(), eq.row(r).end());
      Vector down = up;
      for (double& v : down) v = -v;
      rows.push_back(std::move(up));
      rhs.push_back(relaxed(-target[r], tol));
      rows.push_back(std::move(down));
      rhs.push_back(relaxed(target[r], tol));
    }
  }

  LinearProgram lp;
  lp.objective.assign(nvar, 0.0);
  lp.constraints = DenseMatrix::from_rows(rows);
  lp.rhs = std::move(rhs);
  const LpOutcome out = solve_lp(lp);
  if (!out.optimal()) return std::nullopt;

  MembershipCertificate cert;
  const Vector& z = *out.optimizer;
  for (std::size_t i = 0; i <= k; ++i)
    cert.inputs.emplace_back(z.begin() + static_cast<std::ptrdiff_t>(i * m),
                             z.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
  cert.gamma.assign(z.begin() + static_cast<std::ptrdiff_t>(gamma0), z.end());
  return cert;
}

}  // namespace contracta
