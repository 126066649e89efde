#pragma once

#include "contracta/polytope.hpp"

namespace contracta {

/// Log-radial distance between two C-sets together with the two inclusion
/// factors that realize it. Both factors are clamped below at 1, so for
/// C subset of D the inner factor reads exactly 1.
struct DistanceResult {
  double distance = 0.0;
  double mu_out = 1.0;  // D is contained in mu_out * C
  double mu_in = 1.0;   // C is contained in mu_in * D
};

/// Smallest mu > 0 with D contained in mu * C:
/// max over facets (h_i, b_i) of C of support(D, h_i) / b_i.
double inclusion_factor(const CSetPolytope& c, const CSetPolytope& d);

/// sup over unit xi of |ln rho(xi, C) - ln rho(xi, D)|, evaluated two-sidedly
/// as ln max(inclusion_factor(C, D), inclusion_factor(D, C)).
DistanceResult set_distance(const CSetPolytope& c, const CSetPolytope& d);

/// For C subset of D: whether D is contained in exp(delta) * C.
/// Throws InvalidArgument when C is not contained in D.
bool check_inclusion_equivalence(const CSetPolytope& c, const CSetPolytope& d, double delta);

}  // namespace contracta
