#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "contracta/error.hpp"
#include "contracta/polytope.hpp"
#include "contracta/settings.hpp"
#include "test_support.hpp"

namespace contracta {
namespace {

using testing::box;
using testing::interval;
using testing::Rng;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

HPolytope rows(const std::vector<Vector>& h, const Vector& b) { return HPolytope(DenseMatrix::from_rows(h), b); }

bool same_set(const HPolytope& a, const HPolytope& b) { return is_subset(a, b) && is_subset(b, a); }

// Box bounds read back with support functions.
std::vector<std::pair<double, double>> bounds_of(const HPolytope& p) {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < p.dimension(); ++i) {
    Vector e(p.dimension(), 0.0);
    e[i] = 1.0;
    const double hi = support(p, e);
    e[i] = -1.0;
    out.emplace_back(-support(p, e), hi);
  }
  return out;
}

TEST(Polytope, ConstructionNormalizesAndRejects) {
  const HPolytope p = rows({{2.0, 0.0}, {0.0, -4.0}}, {4.0, 4.0});
  EXPECT_NEAR(p.facets()(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(p.offsets()[0], 2.0, 1e-15);
  EXPECT_NEAR(p.offsets()[1], 1.0, 1e-15);
  EXPECT_EQ(code_of([] { rows({{0.0, 0.0}}, {1.0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { rows({{1.0, 0.0}}, {1.0, 2.0}); }), ErrorCode::DimensionMismatch);
}

TEST(Polytope, ValidateCset) {
  EXPECT_NO_THROW(validate_cset(HPolytope::cube(2, 10.0)));
  EXPECT_EQ(code_of([] { validate_cset(rows({{1.0, 0.0}}, {1.0})); }), ErrorCode::Unbounded);
  EXPECT_EQ(code_of([] { validate_cset(HPolytope::box(Vector{1.0, -1.0}, Vector{2.0, 1.0})); }),
            ErrorCode::OriginNotInterior);
  EXPECT_EQ(code_of([] { validate_cset(HPolytope::box(Vector{0.0}, Vector{0.0})); }), ErrorCode::EmptyInterior);
  EXPECT_EQ(code_of([] { validate_cset(HPolytope::box(Vector{1.0}, Vector{-1.0})); }), ErrorCode::EmptyInterior);
}

TEST(Polytope, SupportExamples) {
  EXPECT_NEAR(support(HPolytope::cube(2, 10.0), Vector{1.0, 0.0}), 10.0, 1e-12);
  EXPECT_NEAR(support(HPolytope::cube(1, 1.0), Vector{-1.0}), 1.0, 1e-12);
  for (std::size_t n = 1; n <= 4; ++n) {
    // Box support closed form: sum_i 2 |a_i| with a_i = 1 / sqrt(n).
    const double an = 1.0 / std::sqrt(static_cast<double>(n));
    const Vector a(n, an);
    EXPECT_NEAR(support(HPolytope::cube(n, 2.0), a), 2.0 * n * an, 1e-12);
    EXPECT_NEAR(2.0 * n * an, 2.0 * std::sqrt(static_cast<double>(n)), 1e-12);
  }
  EXPECT_EQ(code_of([] { support(rows({{1.0, 0.0}}, {1.0}), Vector{0.0, 1.0}); }), ErrorCode::Unbounded);
}

TEST(Polytope, RadialExamples) {
  const CSetPolytope x = box({10.0, 10.0});
  EXPECT_NEAR(radial(x, Vector{1.0, 0.0}), 10.0, 1e-12);
  const double r = 1.0 / std::sqrt(2.0);
  // Corner of the box along the diagonal: |(t r, t r)|_inf = 10 at t = 10 sqrt 2.
  EXPECT_NEAR(radial(x, Vector{r, r}), 10.0 * std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(radial(interval(-2.0, 2.0), Vector{-1.0}), 2.0, 1e-12);
  EXPECT_THROW(radial(x, Vector{1.0, 1.0}), Error);
}

TEST(Polytope, ScaleExamples) {
  EXPECT_TRUE(same_set(scale(HPolytope::cube(2, 1.0), 2.0), HPolytope::cube(2, 2.0)));
  EXPECT_TRUE(same_set(scale(HPolytope::cube(1, 10.0), 0.5), HPolytope::cube(1, 5.0)));
  EXPECT_TRUE(same_set(scale(HPolytope::cube(1, 2.0), 1.1), HPolytope::cube(1, 2.2)));
  EXPECT_THROW(scale(HPolytope::cube(1, 1.0), 0.0), Error);
  EXPECT_THROW(scale(HPolytope::cube(1, 1.0), -1.0), Error);
}

TEST(Polytope, SubsetExamples) {
  EXPECT_TRUE(is_subset(HPolytope::cube(2, 2.0), HPolytope::cube(2, 10.0)));
  EXPECT_FALSE(is_subset(HPolytope::cube(1, 10.0), HPolytope::cube(1, 2.0)));
  Rng rng(5);
  const HPolytope c = testing::random_cset(rng, 2).base();
  EXPECT_TRUE(is_subset(c, c));
  EXPECT_EQ(code_of([] { is_subset(HPolytope::cube(1, 1.0), HPolytope::cube(2, 1.0)); }),
            ErrorCode::DimensionMismatch);
}

TEST(Polytope, IntersectExamples) {
  const HPolytope a = remove_redundancy(intersect(HPolytope::cube(1, 10.0), HPolytope::cube(1, 5.0)));
  EXPECT_EQ(a.num_facets(), 2u);
  EXPECT_TRUE(same_set(a, HPolytope::cube(1, 5.0)));
  const HPolytope p = HPolytope::cube(2, 3.0);
  EXPECT_TRUE(same_set(remove_redundancy(intersect(p, p)), p));
  EXPECT_EQ(remove_redundancy(intersect(p, p)).num_facets(), 4u);
  const HPolytope c = remove_redundancy(intersect(HPolytope::box(Vector{0.0}, Vector{2.0}),
                                                  HPolytope::box(Vector{1.0}, Vector{3.0})));
  const auto bnd = bounds_of(c);
  EXPECT_NEAR(bnd[0].first, 1.0, 1e-12);
  EXPECT_NEAR(bnd[0].second, 2.0, 1e-12);
  EXPECT_THROW(intersect(HPolytope::cube(1, 1.0), HPolytope::cube(2, 1.0)), Error);
}

TEST(Polytope, RemoveRedundancyExamples) {
  const HPolytope r = remove_redundancy(rows({{1.0}, {1.0}, {-1.0}}, {1.0, 2.0, 1.0}));
  EXPECT_EQ(r.num_facets(), 2u);
  EXPECT_TRUE(same_set(r, HPolytope::cube(1, 1.0)));
  const HPolytope d = remove_redundancy(rows({{1, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {1, 1, 1, 1, 1}));
  EXPECT_EQ(d.num_facets(), 4u);
  EXPECT_EQ(code_of([] { remove_redundancy(HPolytope::box(Vector{1.0}, Vector{-1.0})); }), ErrorCode::EmptySet);
}

TEST(Polytope, ProjectExamples) {
  // (x, u): x - u <= 0, u <= 1, -u <= 1, -x <= 2  ->  x in [-2, 1].
  const HPolytope p = project(rows({{1, -1}, {0, 1}, {0, -1}, {-1, 0}}, {0, 1, 1, 2}), 1);
  ASSERT_EQ(p.dimension(), 1u);
  const auto b = bounds_of(p);
  EXPECT_NEAR(b[0].first, -2.0, 1e-12);
  EXPECT_NEAR(b[0].second, 1.0, 1e-12);
  EXPECT_EQ(p.num_facets(), 2u);

  const HPolytope q = project(HPolytope::cube(3, 1.0), 2);
  EXPECT_TRUE(same_set(q, HPolytope::cube(2, 1.0)));
  EXPECT_EQ(q.num_facets(), 4u);

  EXPECT_THROW(project(HPolytope::cube(2, 1.0), 2), Error);
  EXPECT_THROW(project(HPolytope::cube(2, 1.0), 0), Error);
}

TEST(Polytope, ProjectLiftedRotationSystem) {
  // Lifted (x1, x2, u) system of the rotation example with T = [-1,1]^2 and
  // lambda = 1: x in [-5,5]^2, u in [-1,1], |x2| <= 1, |-x1 + u| <= 1.
  const HPolytope lifted = rows({{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1},
                                 {0, 1, 0}, {0, -1, 0}, {-1, 0, 1}, {1, 0, -1}},
                                {5, 5, 5, 5, 1, 1, 1, 1, 1, 1});
  const HPolytope p = project(lifted, 2);
  EXPECT_EQ(p.num_facets(), 4u);
  const auto b = bounds_of(p);
  EXPECT_NEAR(b[0].first, -2.0, 1e-12);
  EXPECT_NEAR(b[0].second, 2.0, 1e-12);
  EXPECT_NEAR(b[1].first, -1.0, 1e-12);
  EXPECT_NEAR(b[1].second, 1.0, 1e-12);
}

TEST(Polytope, ProjectFacetCapIsEnforced) {
  Settings s = settings();
  const Settings saved = s;
  s.max_facets = 3;
  set_settings(s);
  EXPECT_EQ(code_of([] { project(rows({{1, 1}, {1, -1}, {-1, 1}, {-1, -1}}, {1, 1, 1, 1}), 1); }),
            ErrorCode::FacetLimitExceeded);
  set_settings(saved);
}

TEST(Polytope, VerticesExamples) {
  auto v = vertices(HPolytope::cube(2, 1.0));
  EXPECT_EQ(v.size(), 4u);
  for (const auto& p : v) {
    EXPECT_NEAR(std::abs(p[0]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(p[1]), 1.0, 1e-12);
  }
  v = vertices(HPolytope::box(Vector{-2.0, -1.0}, Vector{2.0, 1.0}));
  EXPECT_EQ(v.size(), 4u);
  for (const auto& p : v) {
    EXPECT_NEAR(std::abs(p[0]), 2.0, 1e-12);
    EXPECT_NEAR(std::abs(p[1]), 1.0, 1e-12);
  }
  v = vertices(rows({{-1, 0, 0}, {0, -1, 0}, {0, 0, -1}, {1, 1, 1}}, {0, 0, 0, 1}));
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(code_of([] { vertices(HPolytope::cube(5, 1.0)); }), ErrorCode::Unsupported);
  EXPECT_EQ(code_of([] { vertices(rows({{1.0, 0.0}, {0.0, 1.0}}, {1.0, 1.0})); }), ErrorCode::Unbounded);
}

TEST(Polytope, Radii) {
  EXPECT_NEAR(inradius_origin(box({10.0, 10.0})), 10.0, 1e-12);
  EXPECT_NEAR(inradius_origin(box({1.0})), 1.0, 1e-12);
  EXPECT_NEAR(inradius_origin(box({5.0, 5.0})), 5.0, 1e-12);
  for (std::size_t n = 1; n <= 6; ++n)  // n > 4 takes the support-function path
    EXPECT_NEAR(outer_radius(validate_cset(HPolytope::cube(n, 10.0))), 10.0 * std::sqrt(double(n)), 1e-9) << n;
  EXPECT_NEAR(outer_radius(box({5.0, 5.0})), std::sqrt(50.0), 1e-12);
  EXPECT_NEAR(outer_radius(box({1.0})), 1.0, 1e-12);
}

TEST(PolytopeProperty, RadialScales) {
  Rng rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const CSetPolytope c = testing::random_cset(rng, n);
    const double mu = rng.uniform(0.1, 5.0);
    const Vector xi = rng.unit(n);
    EXPECT_NEAR(radial(scale(c, mu), xi), mu * radial(c, xi), 1e-9 * mu * radial(c, xi));
  }
}

TEST(PolytopeProperty, SubsetOrdersRadialFunctions) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 2));
    const CSetPolytope d = testing::random_cset(rng, n);
    const CSetPolytope c = testing::random_inner(rng, d);
    ASSERT_TRUE(is_subset(c, d));
    for (int s = 0; s < 20; ++s) {
      const Vector xi = rng.unit(n);
      EXPECT_LE(radial(c, xi), radial(d, xi) + 1e-9);
    }
  }
}

TEST(PolytopeProperty, ProjectingACylinderRecoversTheBase) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const CSetPolytope p = testing::random_cset(rng, 2);
    const DenseMatrix h = p.base().facets();
    DenseMatrix lifted(h.rows() + 2, 3, 0.0);
    Vector b = p.base().offsets();
    for (std::size_t r = 0; r < h.rows(); ++r)
      for (std::size_t c = 0; c < 2; ++c) lifted(r, c) = h(r, c);
    lifted(h.rows(), 2) = 1.0;
    lifted(h.rows() + 1, 2) = -1.0;
    b.push_back(1.0);
    b.push_back(1.0);
    EXPECT_TRUE(same_set(project(HPolytope(lifted, b), 2), p.base()));
  }
}

// Shadow oracle independent of Fourier-Motzkin: x is in the projection iff the
// slice {y : (x, y) in p} is nonempty.
bool in_shadow(const HPolytope& p, const Vector& x, double slack) {
  const std::size_t k = x.size();
  const std::size_t rest = p.dimension() - k;
  DenseMatrix a(p.num_facets(), rest);
  Vector rhs(p.num_facets());
  for (std::size_t r = 0; r < p.num_facets(); ++r) {
    double s = 0.0;
    for (std::size_t c = 0; c < k; ++c) s += p.facets()(r, c) * x[c];
    for (std::size_t c = 0; c < rest; ++c) a(r, c) = p.facets()(r, k + c);
    rhs[r] = p.offsets()[r] - s + slack;
  }
  return solve_lp({Vector(rest, 0.0), a, rhs, {}, {}}).status == LpStatus::Optimal;
}

TEST(PolytopeProperty, ProjectionEqualsShadow) {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    // Random 3-D polytope around the origin, projected to 2-D and to 1-D.
    std::vector<Vector> h;
    Vector b;
    for (std::size_t i = 0; i < 3; ++i) {
      Vector e(3, 0.0);
      e[i] = 1.0;
      h.push_back(e);
      e[i] = -1.0;
      h.push_back(e);
      b.push_back(2.0);
      b.push_back(2.0);
    }
    for (int i = 0; i < 6; ++i) {
      h.push_back(rng.unit(3));
      b.push_back(rng.uniform(0.3, 1.5));
    }
    const HPolytope p(DenseMatrix::from_rows(h), b);
    for (std::size_t keep : {1u, 2u}) {
      const HPolytope q = project(p, keep);
      for (int s = 0; s < 100; ++s) {
        Vector x(keep);
        for (auto& v : x) v = rng.uniform(-2.2, 2.2);
        const double viol = q.violation(x);
        if (std::abs(viol) < 1e-7) continue;  // too close to the boundary to call
        EXPECT_EQ(viol < 0.0, in_shadow(p, x, 0.0)) << "trial " << trial << " keep " << keep;
      }
    }
  }
}

TEST(PolytopeProperty, RemoveRedundancyKeepsSetAndDropsSpareRows) {
  Rng rng(25);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    std::vector<Vector> h;
    Vector b;
    for (int i = 0; i < 12; ++i) {
      h.push_back(rng.unit(n));
      b.push_back(rng.uniform(0.5, 3.0));
    }
    for (std::size_t i = 0; i < n; ++i) {  // keep it bounded
      Vector e(n, 0.0);
      e[i] = 1.0;
      h.push_back(e);
      e[i] = -1.0;
      h.push_back(e);
      b.push_back(4.0);
      b.push_back(4.0);
    }
    const HPolytope p(DenseMatrix::from_rows(h), b);
    const HPolytope r = remove_redundancy(p);
    EXPECT_TRUE(same_set(p, r));
    EXPECT_LE(r.num_facets(), p.num_facets());
    for (std::size_t i = 0; i < r.num_facets(); ++i) {
      std::vector<Vector> others;
      Vector ob;
      for (std::size_t j = 0; j < r.num_facets(); ++j) {
        if (j == i) continue;
        const auto row = r.facets().row(j);
        others.emplace_back(row.begin(), row.end());
        ob.push_back(r.offsets()[j]);
      }
      const auto row = r.facets().row(i);
      others.emplace_back(row.begin(), row.end());
      ob.push_back(r.offsets()[i] + 1.0);
      const double best = support(HPolytope(DenseMatrix::from_rows(others), ob), row);
      EXPECT_GT(best, r.offsets()[i] - 1e-9) << "facet " << i << " is redundant";
    }
  }
}

TEST(PolytopeProperty, VerticesReproduceSupport) {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(1, 3));
    CSetPolytope p = testing::random_cset(rng, std::min<std::size_t>(n, 2));
    if (n == 3) {
      std::vector<Vector> h;
      Vector b;
      for (int i = 0; i < 10; ++i) {
        h.push_back(rng.unit(3));
        b.push_back(rng.uniform(0.5, 2.0));
      }
      for (std::size_t i = 0; i < 3; ++i) {
        Vector e(3, 0.0);
        e[i] = 1.0;
        h.push_back(e);
        e[i] = -1.0;
        h.push_back(e);
        b.push_back(3.0);
        b.push_back(3.0);
      }
      p = validate_cset(HPolytope(DenseMatrix::from_rows(h), b));
    }
    const auto vs = vertices(p.base());
    for (const auto& v : vs) EXPECT_LE(p.base().violation(v), 1e-8);
    for (int s = 0; s < 50; ++s) {
      const Vector a = rng.unit(p.dimension());
      double best = -1e300;
      for (const auto& v : vs) best = std::max(best, dot(a, v));
      EXPECT_NEAR(best, support(p.base(), a), 1e-8);
    }
  }
}

}  // namespace
}  // namespace contracta
