#include "contracta/metric.hpp"

#include <algorithm>
#include <cmath>

#include "contracta/error.hpp"

namespace contracta {

double inclusion_factor(const CSetPolytope& c, const CSetPolytope& d) {
  if (c.dimension() != d.dimension())
    throw Error(ErrorCode::DimensionMismatch, "inclusion factor of sets with different dimension");
  const HPolytope& cp = c.base();
  double mu = 0.0;
  for (std::size_t i = 0; i < cp.num_facets(); ++i)
    mu = std::max(mu, support(d.base(), cp.facets().row(i)) / cp.offsets()[i]);
  return mu;
}

DistanceResult set_distance(const CSetPolytope& c, const CSetPolytope& d) {
  DistanceResult r;
  r.mu_out = std::max(1.0, inclusion_factor(c, d));
  r.mu_in = std::max(1.0, inclusion_factor(d, c));
  // Mutual inclusion up to 1e-9 counts as equality.
  if (r.mu_out <= 1.0 + 1e-9 && r.mu_in <= 1.0 + 1e-9) return {0.0, 1.0, 1.0};
  r.distance = std::log(std::max(r.mu_out, r.mu_in));
  return r;
}

bool check_inclusion_equivalence(const CSetPolytope& c, const CSetPolytope& d, double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidArgument, "delta must be nonnegative");
  if (!is_subset(c.base(), d.base()))
    throw Error(ErrorCode::InvalidArgument, "inclusion check requires C to be a subset of D");
  return is_subset(d.base(), scale(c.base(), std::exp(delta)));
}

}  // namespace contracta
