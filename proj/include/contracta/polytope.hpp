#pragma once

#include <cstddef>
#include <vector>

#include "contracta/lp.hpp"
#include "contracta/numerics.hpp"

namespace contracta {

/// Polytope {x : H x <= b} in H-representation.
///
/// Facet rows are stored normalized to unit Euclidean length, so offsets are
/// signed distances of the supporting hyperplanes from the origin and every
/// tolerance below is a length. Values are immutable once constructed.
class HPolytope {
 public:
  HPolytope() = default;
  HPolytope(DenseMatrix facets, Vector offsets);

  /// Axis-aligned box [lo_1, hi_1] x ... x [lo_n, hi_n].
  static HPolytope box(std::span<const double> lo, std::span<const double> hi);
  /// The cube [-r, r]^n.
  static HPolytope cube(std::size_t n, double r);

  std::size_t dimension() const noexcept { return facets_.cols(); }
  std::size_t num_facets() const noexcept { return facets_.rows(); }
  const DenseMatrix& facets() const noexcept { return facets_; }
  const Vector& offsets() const noexcept { return offsets_; }

  /// Point membership with absolute slack `tol` on every facet.
  bool contains(std::span<const double> x, double tol) const;
  /// Largest facet violation max_i (H_i x - b_i).
  double violation(std::span<const double> x) const;

 private:
  DenseMatrix facets_;
  Vector offsets_;
};

/// A polytope certified compact with the origin strictly inside.
class CSetPolytope {
 public:
  const HPolytope& base() const noexcept { return base_; }
  operator const HPolytope&() const noexcept { return base_; }  // NOLINT
  std::size_t dimension() const noexcept { return base_.dimension(); }
  std::size_t num_facets() const noexcept { return base_.num_facets(); }

 private:
  friend CSetPolytope validate_cset(const HPolytope& p);
  explicit CSetPolytope(HPolytope p) : base_(std::move(p)) {}
  HPolytope base_;
};

/// Throws Unbounded, OriginNotInterior or EmptyInterior.
CSetPolytope validate_cset(const HPolytope& p);

/// LP for max a^T x over p without interpreting the status.
LpOutcome support_lp(const HPolytope& p, std::span<const double> a);
/// max a^T x over p. Throws Unbounded or EmptySet.
double support(const HPolytope& p, std::span<const double> a);

/// rho(xi, C) = sup{mu > 0 : mu xi in C} for a unit direction xi.
double radial(const CSetPolytope& c, std::span<const double> xi);

HPolytope scale(const HPolytope& p, double mu);
CSetPolytope scale(const CSetPolytope& p, double mu);

bool is_empty(const HPolytope& p);
bool is_subset(const HPolytope& inner, const HPolytope& outer);
HPolytope intersect(const HPolytope& p, const HPolytope& q);
HPolytope remove_redundancy(const HPolytope& p);

/// Shadow of p on its first `keep` coordinates, by Fourier-Motzkin
/// elimination of the trailing ones (redundancy removal after each step).
HPolytope project(const HPolytope& p, std::size_t keep);

/// Vertices of a bounded polytope of dimension <= 4, deduplicated at 1e-8.
std::vector<Vector> vertices(const HPolytope& p);

/// Largest origin-centred ball inside p.
double inradius_origin(const CSetPolytope& p);
/// A circumscribed radius: the exact maximum vertex norm when dimension <= 4,
/// otherwise sqrt(sum_i max(h(e_i), h(-e_i))^2), which can overestimate.
double outer_radius(const CSetPolytope& p);

}  // namespace contracta
