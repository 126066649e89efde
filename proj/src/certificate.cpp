#include "contracta/certificate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "contracta/error.hpp"

namespace contracta {

ConstraintRadii constraint_radii(const SystemModel& sys) {
  return {inradius_origin(sys.state_set()), outer_radius(sys.state_set()), inradius_origin(sys.input_set())};
}

ContractionCertificate compute_certificate(const SystemModel& sys, double lambda) {
  return compute_certificate(sys, lambda, constraint_radii(sys));
}

ContractionCertificate compute_certificate(const SystemModel& sys, double lambda, const ConstraintRadii& radii) {
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "lambda must lie in (0, 1], got " + std::to_string(lambda));
  if (!sys.controllable())
    throw Error(ErrorCode::NotControllable,
                "sigma_min(Phi_n) = " + std::to_string(sys.reachability_sigma_min()) + " is below the threshold");
  if (!(radii.r_x_lo > 0.0 && radii.r_x_lo <= radii.r_x_hi && radii.r_u_lo > 0.0))
    throw Error(ErrorCode::InvalidArgument, "radii must satisfy 0 < r_x_lo <= r_x_hi and r_u_lo > 0");

  const std::size_t n = sys.state_dim();
  ContractionCertificate cert;
  cert.lambda = lambda;
  cert.r_x_lo = radii.r_x_lo;
  cert.r_x_hi = radii.r_x_hi;
  cert.r_u_lo = radii.r_u_lo;

  cert.alpha = 1.0;
  DenseMatrix power = sys.a();
  for (std::size_t j = 1; j <= n; ++j) {
    cert.alpha = std::max(cert.alpha, spectral_norm(power));
    power = power * sys.a();
  }

  const SingularExtremes sv = singular_extremes(sys.reachability());
  cert.sigma_min = sv.sigma_min;
  cert.sigma_max = sv.sigma_max;

  const double scale = std::pow(lambda, static_cast<double>(n - 1)) / cert.alpha;
  cert.rho_hat = scale * std::min(cert.r_x_lo / (1.0 + cert.sigma_max / cert.sigma_min),
                                  cert.r_u_lo * cert.sigma_min);
  cert.eta = 1.0 - cert.rho_hat / cert.r_x_hi;

  if (!(cert.rho_hat > 0.0 && cert.rho_hat <= cert.r_x_lo / 2.0 * (1.0 + 1e-12) && cert.eta >= 0.5 - 1e-12 &&
        cert.eta < 1.0))
    throw Error(ErrorCode::InvariantViolation, "contraction certificate out of its proven range");
  return cert;
}

}  // namespace contracta
