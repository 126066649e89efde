#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "contracta/numerics.hpp"
#include "contracta/polytope.hpp"

namespace contracta {

/// x+ = A x + B u with x in X and u in U.
class SystemModel {
 public:
  SystemModel(DenseMatrix a, DenseMatrix b, CSetPolytope x, CSetPolytope u);

  const DenseMatrix& a() const noexcept { return a_; }
  const DenseMatrix& b() const noexcept { return b_; }
  const CSetPolytope& state_set() const noexcept { return x_; }
  const CSetPolytope& input_set() const noexcept { return u_; }
  std::size_t state_dim() const noexcept { return a_.rows(); }
  std::size_t input_dim() const noexcept { return b_.cols(); }

  /// Phi_n = (A^{n-1} B, ..., A B, B).
  const DenseMatrix& reachability() const noexcept { return phi_; }
  double reachability_sigma_min() const noexcept { return sigma_min_; }
  /// sigma_min(Phi_n) > ctrb_tol.
  bool controllable() const noexcept { return controllable_; }

 private:
  DenseMatrix a_;
  DenseMatrix b_;
  CSetPolytope x_;
  CSetPolytope u_;
  DenseMatrix phi_;
  double sigma_min_ = 0.0;
  bool controllable_ = false;
};

bool check_controllability(const SystemModel& sys);

/// Q_1^lambda(D) = {x in X : exists u in U with A x + B u in lambda D}.
/// Throws EmptySet if the lifted (x, u) system is infeasible.
CSetPolytope one_step_set(const SystemModel& sys, double lambda, const CSetPolytope& d);

/// What the first entry of a sequence is, which fixes the expected ordering.
enum class SeedKind {
  FromX,      // entries shrink
  FromSeedC,  // lambda-contractive seed: entries grow
  General,    // no ordering asserted
};

struct SetSequence {
  double lambda = 1.0;
  SeedKind seed = SeedKind::General;
  std::vector<CSetPolytope> entries;  // entries[j] = Q_j^lambda(D)
};

/// Q_0 .. Q_k of D. For FromX / FromSeedC the nesting of consecutive
/// entries is verified and a violation throws InvariantViolation.
SetSequence iterate(const SystemModel& sys, double lambda, const CSetPolytope& d, std::size_t k,
                    SeedKind seed = SeedKind::General);

struct ContractivenessCheck {
  bool contractive = false;
  bool inside_state_set = false;
  std::optional<Vector> failing_vertex;
};

/// Vertex-wise test of: C in X and every x in C admits u in U with
/// A x + B u in lambda C. Needs dimension <= 4.
ContractivenessCheck check_lambda_contractive(const SystemModel& sys, double lambda, const CSetPolytope& c);
bool is_lambda_contractive(const SystemModel& sys, double lambda, const CSetPolytope& c);

struct MembershipCertificate {
  std::vector<Vector> inputs;  // u_0 .. u_k
  Vector gamma;                // terminal point in C
};

/// Witness that x lies in Q_{k+1}^lambda(C): inputs u_0..u_k in U and gamma in
/// C with A^j x + sum_{i<j} A^{j-1-i} B lambda^i u_i in lambda^j X for
/// j = 0..k and A^{k+1} x + sum_{i<=k} A^{k-i} B lambda^i u_i = lambda^{k+1}
/// gamma. nullopt iff no witness exists.
std::optional<MembershipCertificate> membership_certificate(const SystemModel& sys, double lambda,
                                                            const CSetPolytope& c, std::span<const double> x,
                                                            std::size_t k);

}  // namespace contracta
