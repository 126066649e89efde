#include "contracta/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "contracta/error.hpp"
#include "contracta/settings.hpp"

namespace contracta {

namespace {

constexpr double kZeroRow = 1e-12;
constexpr double kVertexMerge = 1e-8;
constexpr std::size_t kMaxVertexDimension = 4;

void require_same_dimension(const HPolytope& p, const HPolytope& q) {
  if (p.dimension() != q.dimension())
    throw Error(ErrorCode::DimensionMismatch,
                "polytopes of dimension " + std::to_string(p.dimension()) + " and " +
                    std::to_string(q.dimension()));
}

double slack_for(double b, double tol) { return tol * std::max(1.0, std::abs(b)); }

// Row-normalizes, drops numerically zero rows (checking their consistency)
// and merges parallel duplicates keeping the tighter offset.
HPolytope tidy(const DenseMatrix& h, const Vector& b) {
  const double tol = settings().feas_tol;
  std::vector<Vector> rows;
  Vector offsets;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const double nrm = norm2(h.row(i));
    if (nrm < kZeroRow) {
      if (b[i] < -slack_for(b[i], tol))
        throw Error(ErrorCode::EmptySet, "inconsistent constant constraint 0 <= " + std::to_string(b[i]));
      continue;
    }
    Vector r(h.row(i).begin(), h.row(i).end());
    for (double& v : r) v /= nrm;
    const double bi = b[i] / nrm;
    bool merged = false;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      double diff = 0.0;
      for (std::size_t j = 0; j < r.size(); ++j) diff = std::max(diff, std::abs(rows[k][j] - r[j]));
      if (diff < kZeroRow) {
        offsets[k] = std::min(offsets[k], bi);
        merged = true;
        break;
      }
    }
    if (!merged) {
      rows.push_back(std::move(r));
      offsets.push_back(bi);
    }
  }
  if (rows.empty()) {
    // Only trivial rows: the set is all of R^d.
    throw Error(ErrorCode::Unbounded, "constraint system has no nontrivial facet");
  }
  return HPolytope(DenseMatrix::from_rows(rows), std::move(offsets));
}

LinearProgram polytope_lp(const HPolytope& p, std::span<const double> objective) {
  LinearProgram lp;
  lp.objective.assign(objective.begin(), objective.end());
  lp.constraints = p.facets();
  lp.rhs = p.offsets();
  return lp;
}

}  // namespace

HPolytope::HPolytope(DenseMatrix facets, Vector offsets) {
  if (facets.rows() != offsets.size())
    throw Error(ErrorCode::DimensionMismatch, "facet count differs from offset count");
  if (facets.cols() == 0) throw Error(ErrorCode::DimensionMismatch, "polytope dimension must be positive");
  for (double v : offsets)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "offset is not finite");
  for (std::size_t i = 0; i < facets.rows(); ++i) {
    const double nrm = norm2(facets.row(i));
    if (nrm < kZeroRow) throw Error(ErrorCode::InvalidArgument, "all-zero facet row " + std::to_string(i));
    for (double& v : facets.row(i)) v /= nrm;
    offsets[i] /= nrm;
  }
  facets_ = std::move(facets);
  offsets_ = std::move(offsets);
}

HPolytope HPolytope::box(std::span<const double> lo, std::span<const double> hi) {
  if (lo.size() != hi.size() || lo.empty())
    throw Error(ErrorCode::DimensionMismatch, "box bounds must have equal positive length");
  const std::size_t n = lo.size();
  DenseMatrix h(2 * n, n);
  Vector b(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    h(2 * i, i) = 1.0;
    b[2 * i] = hi[i];
    h(2 * i + 1, i) = -1.0;
    b[2 * i + 1] = -lo[i];
  }
  return HPolytope(std::move(h), std::move(b));
}

HPolytope HPolytope::cube(std::size_t n, double r) {
  return box(Vector(n, -r), Vector(n, r));
}

double HPolytope::violation(std::span<const double> x) const {
  if (x.size() != dimension()) throw Error(ErrorCode::DimensionMismatch, "point dimension");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < num_facets(); ++i)
    worst = std::max(worst, dot(facets_.row(i), x) - offsets_[i]);
  return worst;
}

bool HPolytope::contains(std::span<const double> x, double tol) const {
  return violation(x) <= tol;
}

LpOutcome support_lp(const HPolytope& p, std::span<const double> a) {
  if (a.size() != p.dimension()) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
  return solve_lp(polytope_lp(p, a));
}

double support(const HPolytope& p, std::span<const double> a) {
  const LpOutcome out = support_lp(p, a);
  switch (out.status) {
    case LpStatus::Optimal: return out.value;
    case LpStatus::Unbounded: throw Error(ErrorCode::Unbounded, "support function is unbounded");
    case LpStatus::Infeasible: break;
  }
  throw Error(ErrorCode::EmptySet, "support of an empty polytope");
}

bool is_empty(const HPolytope& p) {
  return support_lp(p, Vector(p.dimension(), 0.0)).status == LpStatus::Infeasible;
}

CSetPolytope validate_cset(const HPolytope& p) {
  const double tol = settings().feas_tol;
  const std::size_t n = p.dimension();
  const auto& b = p.offsets();
  if (std::any_of(b.begin(), b.end(), [&](double v) { return v <= tol; })) {
    // Chebyshev ball: max r s.t. H_i x + r <= b_i (rows are unit length).
    LinearProgram lp;
    lp.objective.assign(n + 1, 0.0);
    lp.objective[n] = 1.0;
    lp.constraints = hstack(p.facets(), DenseMatrix(p.num_facets(), 1, 1.0));
    lp.rhs = b;
    lp.lower.assign(n + 1, -std::numeric_limits<double>::infinity());
    lp.upper.assign(n + 1, std::numeric_limits<double>::infinity());
    lp.upper[n] = 1.0;
    const LpOutcome cheb = solve_lp(lp);
    if (cheb.status == LpStatus::Infeasible || (cheb.optimal() && cheb.value <= tol))
      throw Error(ErrorCode::EmptyInterior, "polytope has empty interior");
    throw Error(ErrorCode::OriginNotInterior, "origin is not an interior point");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vector e(n, 0.0);
      e[i] = sign;
      if (support_lp(p, e).status != LpStatus::Optimal)
        throw Error(ErrorCode::Unbounded, "polytope is unbounded along axis " + std::to_string(i));
    }
  }
  return CSetPolytope(p);
}

double radial(const CSetPolytope& c, std::span<const double> xi) {
  const HPolytope& p = c.base();
  if (xi.size() != p.dimension()) throw Error(ErrorCode::DimensionMismatch, "direction dimension");
  if (std::abs(norm2(xi) - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "direction is not a unit vector");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.num_facets(); ++i) {
    const double hx = dot(p.facets().row(i), xi);
    if (hx > 0.0) best = std::min(best, p.offsets()[i] / hx);
  }
  return best;
}

HPolytope scale(const HPolytope& p, double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorCode::InvalidArgument, "scale factor must be positive");
  Vector b = p.offsets();
  for (double& v : b) v *= mu;
  return HPolytope(p.facets(), std::move(b));
}

CSetPolytope scale(const CSetPolytope& p, double mu) {
  return validate_cset(scale(p.base(), mu));
}

bool is_subset(const HPolytope& inner, const HPolytope& outer) {
  require_same_dimension(inner, outer);
  const double tol = settings().feas_tol;
  for (std::size_t i = 0; i < outer.num_facets(); ++i) {
    const LpOutcome out = support_lp(inner, outer.facets().row(i));
    if (out.status == LpStatus::Infeasible) throw Error(ErrorCode::EmptySet, "inner polytope is empty");
    if (out.status == LpStatus::Unbounded) return false;
    if (out.value > outer.offsets()[i] + slack_for(outer.offsets()[i], tol)) return false;
  }
  return true;
}

HPolytope intersect(const HPolytope& p, const HPolytope& q) {
  require_same_dimension(p, q);
  Vector b = p.offsets();
  b.insert(b.end(), q.offsets().begin(), q.offsets().end());
  return HPolytope(vstack(p.facets(), q.facets()), std::move(b));
}

HPolytope remove_redundancy(const HPolytope& p) {
  if (is_empty(p)) throw Error(ErrorCode::EmptySet, "redundancy removal on an empty polytope");
  const double tol = settings().feas_tol;
  const HPolytope t = tidy(p.facets(), p.offsets());
  const std::size_t m = t.num_facets();
  std::vector<bool> keep(m, true);
  for (std::size_t i = 0; i < m; ++i) {
    // Maximize H_i x over the other kept rows, capped at b_i + 1 so the LP
    // stays bounded when row i is essential.
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || !keep[j]) continue;
      rows.emplace_back(t.facets().row(j).begin(), t.facets().row(j).end());
      rhs.push_back(t.offsets()[j]);
    }
    rows.emplace_back(t.facets().row(i).begin(), t.facets().row(i).end());
    rhs.push_back(t.offsets()[i] + 1.0);
    LinearProgram lp;
    lp.objective = rows.back();
    lp.constraints = DenseMatrix::from_rows(rows);
    lp.rhs = std::move(rhs);
    const LpOutcome out = solve_lp(lp);
    if (out.status == LpStatus::Infeasible) throw Error(ErrorCode::EmptySet, "polytope became empty");
    if (out.optimal() && out.value <= t.offsets()[i] + slack_for(t.offsets()[i], tol)) keep[i] = false;
  }
  std::vector<Vector> rows;
  Vector b;
  for (std::size_t i = 0; i < m; ++i) {
    if (!keep[i]) continue;
    rows.emplace_back(t.facets().row(i).begin(), t.facets().row(i).end());
    b.push_back(t.offsets()[i]);
  }
  return HPolytope(DenseMatrix::from_rows(rows), std::move(b));
}

HPolytope project(const HPolytope& p, std::size_t keep) {
  if (keep == 0 || keep >= p.dimension())
    throw Error(ErrorCode::InvalidArgument, "projection must keep between 1 and dimension-1 coordinates");
  if (is_empty(p)) throw Error(ErrorCode::EmptySet, "projection of an empty polytope");
  const std::size_t cap = settings().max_facets;

  DenseMatrix h = p.facets();
  Vector b = p.offsets();
  for (std::size_t dim = p.dimension(); dim > keep; --dim) {
    const std::size_t col = dim - 1;
    std::vector<std::size_t> pos, neg, zero;
    for (std::size_t i = 0; i < h.rows(); ++i) {
      const double c = h(i, col);
      if (c > kZeroRow) pos.push_back(i);
      else if (c < -kZeroRow) neg.push_back(i);
      else zero.push_back(i);
    }
    if (zero.size() + pos.size() * neg.size() > cap)
      throw Error(ErrorCode::FacetLimitExceeded,
                  "Fourier-Motzkin step would create " + std::to_string(zero.size() + pos.size() * neg.size()) +
                      " rows (cap " + std::to_string(cap) + ")");
    std::vector<Vector> rows;
    Vector rhs;
    for (std::size_t i : zero) {
      rows.emplace_back(h.row(i).begin(), h.row(i).begin() + static_cast<std::ptrdiff_t>(col));
      rhs.push_back(b[i]);
    }
    for (std::size_t i : pos) {
      const double ci = h(i, col);
      for (std::size_t k : neg) {
        const double ck = -h(k, col);
        Vector r(col);
        for (std::size_t j = 0; j < col; ++j) r[j] = h(i, j) / ci + h(k, j) / ck;
        rows.push_back(std::move(r));
        rhs.push_back(b[i] / ci + b[k] / ck);
      }
    }
    if (rows.empty()) throw Error(ErrorCode::Unbounded, "projection is unbounded in every direction");
    const HPolytope reduced = remove_redundancy(tidy(DenseMatrix::from_rows(rows), rhs));
    h = reduced.facets();
    b = reduced.offsets();
  }
  return HPolytope(std::move(h), std::move(b));
}

std::vector<Vector> vertices(const HPolytope& p) {
  const std::size_t n = p.dimension();
  if (n > kMaxVertexDimension)
    throw Error(ErrorCode::Unsupported, "vertex enumeration supports dimension <= 4");
  if (is_empty(p)) return {};
  for (std::size_t i = 0; i < n; ++i) {
    for (double sign : {1.0, -1.0}) {
      Vector e(n, 0.0);
      e[i] = sign;
      if (support_lp(p, e).status == LpStatus::Unbounded)
        throw Error(ErrorCode::Unbounded, "vertex enumeration of an unbounded polytope");
    }
  }
  const double tol = settings().feas_tol;
  const std::size_t m = p.num_facets();
  std::vector<Vector> out;
  if (m < n) return out;

  // Walk all n-subsets of facets in lexicographic order.
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    DenseMatrix a(n, n);
    Vector rhs(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = p.facets()(idx[r], c);
      rhs[r] = p.offsets()[idx[r]];
    }
    if (auto v = solve_linear(a, rhs, 1e-10)) {
      bool feasible = true;
      for (std::size_t i = 0; i < m && feasible; ++i)
        feasible = dot(p.facets().row(i), *v) <= p.offsets()[i] + slack_for(p.offsets()[i], tol);
      if (feasible) {
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Vector& w) {
          for (std::size_t j = 0; j < n; ++j)
            if (std::abs(w[j] - (*v)[j]) > kVertexMerge) return false;
          return true;
        });
        if (!dup) out.push_back(std::move(*v));
      }
    }
    // next combination
    std::size_t k = n;
    while (k > 0 && idx[k - 1] == m - n + (k - 1)) --k;
    if (k == 0) break;
    ++idx[k - 1];
    for (std::size_t j = k; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

double inradius_origin(const CSetPolytope& p) {
  const auto& b = p.base().offsets();
  return *std::min_element(b.begin(), b.end());
}

double outer_radius(const CSetPolytope& p) {
  const std::size_t n = p.dimension();
  if (n <= kMaxVertexDimension) {
    double r = 0.0;
    for (const auto& v : vertices(p.base())) r = std::max(r, norm2(v));
    return r;
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vector e(n, 0.0);
    e[i] = 1.0;
    const double up = support(p.base(), e);
    e[i] = -1.0;
    const double down = support(p.base(), e);
    const double w = std::max(up, down);
    acc += w * w;
  }
  return std::sqrt(acc);
}

}  // namespace contracta
