#pragma once

#include "contracta/onestep.hpp"

namespace contracta {

/// The a-priori contraction factor of the n-step map Q_n^lambda and every
/// quantity it is built from.
struct ContractionCertificate {
  double lambda = 1.0;
  double r_x_lo = 0.0;  // ball inside X
  double r_x_hi = 0.0;  // ball around X
  double r_u_lo = 0.0;  // ball inside U
  double alpha = 1.0;   // max{1, ||A^j||_2 : j = 1..n}
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double rho_hat = 0.0;
  double eta = 1.0;  // 1 - rho_hat / r_x_hi, in [0.5, 1)
};

/// Radii that enclose the constraint sets; any valid (more conservative)
/// triple keeps the resulting eta a valid contraction factor.
struct ConstraintRadii {
  double r_x_lo;
  double r_x_hi;
  double r_u_lo;
};

ConstraintRadii constraint_radii(const SystemModel& sys);

/// Throws NotControllable, or InvalidArgument for lambda outside (0, 1].
ContractionCertificate compute_certificate(const SystemModel& sys, double lambda);
ContractionCertificate compute_certificate(const SystemModel& sys, double lambda, const ConstraintRadii& radii);

}  // namespace contracta
