#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "contracta/onestep.hpp"
#include "contracta/polytope.hpp"

namespace contracta::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Vector unit(std::size_t n) {
    Vector v(n);
    double s = 0.0;
    do {
      s = 0.0;
      for (auto& x : v) {
        x = std::normal_distribution<double>(0.0, 1.0)(engine_);
        s += x * x;
      }
    } while (s < 1e-12);
    for (auto& x : v) x /= std::sqrt(s);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

inline CSetPolytope box(const Vector& half) {
  Vector lo(half.size());
  for (std::size_t i = 0; i < half.size(); ++i) lo[i] = -half[i];
  return validate_cset(HPolytope::box(lo, half));
}

inline CSetPolytope interval(double lo, double hi) { return validate_cset(HPolytope::box(Vector{lo}, Vector{hi})); }

/// Random C-set: [-a, b] in 1-D; in 2-D a polygon whose normals are spread
/// around the circle with gaps below pi, so it is bounded.
inline CSetPolytope random_cset(Rng& rng, std::size_t n, double lo = 0.5, double hi = 2.0) {
  if (n == 1) return interval(-rng.uniform(lo, hi), rng.uniform(lo, hi));
  const int m = rng.integer(3, 7);
  const double step = 2.0 * std::numbers::pi / m;
  const double phase = rng.uniform(0.0, step);
  std::vector<Vector> rows;
  Vector b;
  for (int i = 0; i < m; ++i) {
    const double t = phase + step * i + rng.uniform(-0.25, 0.25) * step;
    rows.push_back({std::cos(t), std::sin(t)});
    b.push_back(rng.uniform(lo, hi));
  }
  return validate_cset(HPolytope(DenseMatrix::from_rows(rows), b));
}

/// Random inner set of d: d scaled down and cut by another random set.
inline CSetPolytope random_inner(Rng& rng, const CSetPolytope& d) {
  const CSetPolytope e = random_cset(rng, d.dimension(), 0.3, 1.5);
  return validate_cset(remove_redundancy(intersect(scale(d.base(), rng.uniform(0.3, 0.95)), e.base())));
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Random controllable 2-D single-input system with box constraints.
inline SystemModel random_controllable_2d(Rng& rng) {
  for (;;) {
    DenseMatrix a{{rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)}, {rng.uniform(-1.3, 1.3), rng.uniform(-1.3, 1.3)}};
    DenseMatrix b{{rng.uniform(-1.0, 1.0)}, {rng.uniform(-1.0, 1.0)}};
    SystemModel sys(a, b, box({rng.uniform(3.0, 8.0), rng.uniform(3.0, 8.0)}), box({rng.uniform(0.5, 2.0)}));
    if (sys.reachability_sigma_min() > 0.05) return sys;
  }
}

}  // namespace contracta::testing
