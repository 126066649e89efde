#pragma once

#include <optional>

#include "contracta/numerics.hpp"

namespace contracta {

/// maximize objective^T x  subject to  constraints * x <= rhs,
///                                      lower <= x <= upper.
/// Empty bound vectors mean the variables are free; individual entries may be
/// +/-infinity. Equalities are written as two opposing rows.
struct LinearProgram {
  Vector objective;
  DenseMatrix constraints;
  Vector rhs;
  Vector lower;
  Vector upper;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::optional<Vector> optimizer;

  bool optimal() const noexcept { return status == LpStatus::Optimal; }
};

/// Dense two-phase tableau simplex with Bland's rule. Throws
/// Error(DimensionMismatch) on malformed input.
LpOutcome solve_lp(const LinearProgram& p);

/// Largest violation max_i (row_i x - rhs_i) of the inequality rows and bounds.
double feasibility_residual(const LinearProgram& p, std::span<const double> x);

}  // namespace contracta
