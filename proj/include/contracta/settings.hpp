#pragma once

#include <cstddef>

namespace contracta {

// Process-wide numerical settings. Set once at startup (the CLI does this from
// --tol and CONTRACTA_MAX_FACETS); every computation reads them.
struct Settings {
  double feas_tol = 1e-9;
  double opt_tol = 1e-9;
  double pivot_tol = 1e-11;
  double ctrb_tol = 1e-8;
  std::size_t max_facets = 10000;
};

Settings settings();
void set_settings(const Settings& s);

/// Overrides the feasibility/optimality family. The pivot threshold keeps its
/// ratio to feas_tol.
void set_tolerance(double feas_tol);

}  // namespace contracta
