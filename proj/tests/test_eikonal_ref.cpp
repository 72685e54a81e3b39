#include <doctest.h>

#include <cmath>

#include "hypopinn/analytic.hpp"
#include "hypopinn/field.hpp"
#include "hypopinn/fmm.hpp"
#include "hypopinn/locator.hpp"
#include "hypopinn/rng.hpp"

using namespace hypopinn;

namespace {

double linf_error(const TraveltimeField& f, double v0, double g, Point source) {
  double linf = 0.0;
  for (int j = 0; j < f.grid.nz; ++j) {
    for (int i = 0; i < f.grid.nx; ++i) {
      const double exact = analytic_linear_gradient(v0, g, source, f.grid.node(i, j));
      linf = std::max(linf, std::abs(f.values[f.grid.flat(i, j)] - exact));
    }
  }
  return linf;
}

}  // namespace

TEST_CASE("analytic constant traveltime") {
  const Point s{1.0, 1.5};
  CHECK(analytic_constant(2.0, s, {1.0, 1.5}) == 0.0);
  CHECK(analytic_constant(2.0, s, {1.0, 0.0}) == doctest::Approx(0.75));
  CHECK(analytic_constant(2.0, s, {0.0, 1.5}) == doctest::Approx(0.5));
}

TEST_CASE("analytic linear gradient traveltime") {
  const Point s{1.0, 1.5};
  CHECK(analytic_linear_gradient(2.0, 0.5, s, s) == 0.0);

  SUBCASE("g -> 0 converges to the constant form") {
    const Point p1{0.3, 0.1};
    const Point s1{1.0, 0.05};
    const double t0 = analytic_constant(2.0, s1, p1);
    CHECK(std::abs(analytic_linear_gradient(2.0, 1e-8, s1, p1) - t0) <= 1e-9);
    // deeper points approach at the continuity rate O(g)
    const Point p2{0.3, 2.2};
    CHECK(std::abs(analytic_linear_gradient(2.0, 1e-8, s, p2) -
                   analytic_constant(2.0, s, p2)) <= 1e-7);
  }

  SUBCASE("symmetric under source <-> point exchange") {
    Rng rng(5);
    for (int k = 0; k < 20; ++k) {
      const Point a{rng.uniform(0.0, 2.0), rng.uniform(0.0, 3.0)};
      const Point b{rng.uniform(0.0, 2.0), rng.uniform(0.0, 3.0)};
      CHECK(analytic_linear_gradient(2.0, 0.5, a, b) ==
            doctest::Approx(analytic_linear_gradient(2.0, 0.5, b, a)).epsilon(1e-12));
    }
  }

  SUBCASE("cross-check against refined FMM") {
    // 20 m grid refined 4x; FMM is first order, so allow a loose band
    const Domain2D dom(0.0, 2.0, 0.0, 3.0);
    const VelocityModel model(dom, LinearGradientVelocity{2.0, 0.5});
    const Grid2D fine(dom, 401, 601);
    const TraveltimeField f = fmm_solve(model, fine, s);
    const double exact = analytic_linear_gradient(2.0, 0.5, s, {1.0, 0.0});
    CHECK(f.interp({1.0, 0.0}) == doctest::Approx(exact).epsilon(2e-3));
  }
}

TEST_CASE("fmm on constant velocity") {
  const Domain2D dom(0.0, 2.0, 0.0, 3.0);
  const VelocityModel model(dom, ConstantVelocity{2.0});
  const Point source{1.0, 1.5};  // a node on both grids below
  const Grid2D coarse(dom, 51, 76);
  const Grid2D fine(dom, 101, 151);

  const TraveltimeField fc = fmm_solve(model, coarse, source);
  const TraveltimeField ff = fmm_solve(model, fine, source);

  SUBCASE("source node is exact and non-negative everywhere") {
    CHECK(ff.values[ff.grid.flat(50, 75)] == 0.0);
    double emax_fine = 0.0, emax_coarse = 0.0;
    for (int j = 0; j < fine.nz; ++j) {
      for (int i = 0; i < fine.nx; ++i) {
        const double exact = analytic_constant(2.0, source, fine.node(i, j));
        const double err = ff.values[fine.flat(i, j)] - exact;
        CHECK(err >= -1e-12);  // upwind scheme overestimates
        emax_fine = std::max(emax_fine, std::abs(err));
      }
    }
    for (int j = 0; j < coarse.nz; ++j) {
      for (int i = 0; i < coarse.nx; ++i) {
        const double exact = analytic_constant(2.0, source, coarse.node(i, j));
        emax_coarse = std::max(emax_coarse, std::abs(fc.values[coarse.flat(i, j)] - exact));
      }
    }
    CHECK(emax_fine < emax_coarse);
  }

  SUBCASE("argmin lands on the node nearest the source") {
    const HypocenterEstimate est = locate(ff);
    CHECK(est.location.x == doctest::Approx(1.0));
    CHECK(est.location.z == doctest::Approx(1.5));
  }

  SUBCASE("source outside domain rejected") {
    CHECK_THROWS_AS(fmm_solve(model, fine, Point{5.0, 1.0}), std::domain_error);
  }
}

TEST_CASE("fmm refinement study on linear gradient") {
  const Domain2D dom(0.0, 2.0, 0.0, 3.0);
  const VelocityModel model(dom, LinearGradientVelocity{2.0, 0.5});
  const Point source{1.0, 1.5};
  const double e1 = linf_error(fmm_solve(model, Grid2D(dom, 26, 38), source), 2.0, 0.5, source);
  const double e2 = linf_error(fmm_solve(model, Grid2D(dom, 51, 75), source), 2.0, 0.5, source);
  const double e3 = linf_error(fmm_solve(model, Grid2D(dom, 101, 149), source), 2.0, 0.5, source);
  CHECK(e2 < e1);
  CHECK(e3 < e2);
}

TEST_CASE("sample_receivers") {
  const Domain2D dom(0.0, 2.0, 0.0, 3.0);
  const Grid2D grid(dom, 101, 151);
  const VelocityModel model(dom, ConstantVelocity{2.0});
  const TraveltimeField f = fmm_solve(model, grid, {1.0, 1.5});

  SUBCASE("receiver on a node gets the node value exactly") {
    ReceiverSet r;
    r.positions.push_back(grid.node(10, 0));
    const ReceiverSet out = sample_receivers(f, r);
    CHECK(out.times[0] == f.values[grid.flat(10, 0)]);
  }

  SUBCASE("11 surface receivers, all positive for a buried source") {
    const ReceiverSet r = surface_receivers(dom, 11);
    const ReceiverSet out = sample_receivers(f, r);
    REQUIRE(out.times.size() == 11);
    for (double t : out.times) CHECK(t > 0.0);
  }

  SUBCASE("receiver outside grid rejected") {
    ReceiverSet r;
    r.positions.push_back({-1.0, 0.0});
    CHECK_THROWS_AS(sample_receivers(f, r), std::domain_error);
  }
}
