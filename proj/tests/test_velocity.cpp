#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hypopinn/field.hpp"
#include "hypopinn/rng.hpp"
#include "hypopinn/velocity.hpp"

using namespace hypopinn;

TEST_CASE("domain and grid invariants") {
  CHECK_THROWS(Domain2D(1.0, 1.0, 0.0, 3.0));
  CHECK_THROWS(Domain2D(0.0, 2.0, 3.0, 0.0));
  const Domain2D dom(0.0, 2.0, 0.0, 3.0);
  CHECK_THROWS(Grid2D(dom, 1, 151));
  const Grid2D grid(dom, 101, 151);
  CHECK(grid.hx() == doctest::Approx(0.02));
  CHECK(grid.hz() == doctest::Approx(0.02));
  const Point p = grid.node(50, 75);
  CHECK(p.x == doctest::Approx(1.0));
  CHECK(p.z == doctest::Approx(1.5));
}

TEST_CASE("linear gradient velocity") {
  const Domain2D dom(0.0, 2.0, 0.0, 3.0);
  const VelocityModel m(dom, LinearGradientVelocity{2.0, 0.5});
  CHECK(m.eval({0.7, 0.0}) == doctest::Approx(2.0));
  CHECK(m.eval({1.3, 1.5}) == doctest::Approx(2.75));
  CHECK_THROWS_AS(m.eval({-0.1, 1.0}), std::domain_error);

  // affine in z, constant in x
  Rng rng(7);
  for (int k = 0; k < 50; ++k) {
    const double z = rng.uniform(0.0, 3.0);
    const double x1 = rng.uniform(0.0, 2.0);
    const double x2 = rng.uniform(0.0, 2.0);
    CHECK(m.eval({x1, z}) == doctest::Approx(m.eval({x2, z})));
    const double z2 = rng.uniform(0.0, 3.0);
    const double zm = 0.5 * (z + z2);
    CHECK(m.eval({x1, zm}) ==
          doctest::Approx(0.5 * (m.eval({x1, z}) + m.eval({x1, z2}))));
  }
}

TEST_CASE("gridded velocity bilinear interpolation") {
  const Grid2D grid(Domain2D(0.0, 1.0, 0.0, 1.0), 5, 5);
  GriddedVelocity g{grid, std::vector<double>(grid.node_count(), 3.0)};
  const VelocityModel m(std::move(g));
  CHECK(m.eval({0.37, 0.61}) == doctest::Approx(3.0));

  // node values reproduced exactly
  std::vector<double> vals(grid.node_count());
  Rng rng(11);
  for (auto& v : vals) v = rng.uniform(1.0, 5.0);
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      CHECK(bilinear(grid, vals, grid.node(i, j)) == vals[grid.flat(i, j)]);
    }
  }
}

TEST_CASE("build_layered") {
  const Grid2D grid(Domain2D(0.0, 1.0, 0.0, 1.0), 5, 11);
  SUBCASE("single layer is constant") {
    const VelocityModel m = build_layered(grid, {}, {2.0});
    for (int j = 0; j < grid.nz; ++j)
      for (int i = 0; i < grid.nx; ++i) CHECK(m.gridded().values[grid.flat(i, j)] == 2.0);
  }
  SUBCASE("two layers split at interface") {
    const VelocityModel m = build_layered(grid, {0.5}, {2.0, 3.0});
    CHECK(m.eval({0.5, 0.4}) == doctest::Approx(2.0));
    CHECK(m.eval({0.5, 0.6}) == doctest::Approx(3.0));
  }
  SUBCASE("non-monotone depths rejected") {
    CHECK_THROWS_AS(build_layered(grid, {0.5, 0.5}, {1.0, 2.0, 3.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_layered(grid, {0.7, 0.3}, {1.0, 2.0, 3.0}), std::invalid_argument);
  }
  SUBCASE("full-size stand-in grid covered") {
    const Grid2D big(Domain2D(0.0, 1.96, 0.0, 2.432), 246, 305);
    const std::vector<double> depths = {0.4, 0.9, 1.5};
    const std::vector<double> vels = {1.8, 2.2, 2.6, 3.0};
    const VelocityModel m = build_layered(big, depths, vels);
    REQUIRE(m.gridded().values.size() == 246u * 305u);
    double vmin = 1e30;
    // exhaustive node check against the piecewise definition
    for (int j = 0; j < big.nz; ++j) {
      const double z = big.node(0, j).z;
      std::size_t layer = 0;
      while (layer < depths.size() && z >= depths[layer]) ++layer;
      for (int i = 0; i < big.nx; ++i) {
        const double v = m.gridded().values[big.flat(i, j)];
        REQUIRE(v == vels[layer]);
        vmin = std::min(vmin, v);
      }
    }
    CHECK(vmin == 1.8);
  }
  SUBCASE("monotone velocities give depth-monotone model") {
    const VelocityModel m = build_layered(grid, {0.3, 0.7}, {1.0, 2.0, 2.0});
    for (int i = 0; i < grid.nx; ++i)
      for (int j = 1; j < grid.nz; ++j)
        CHECK(m.gridded().values[grid.flat(i, j)] >= m.gridded().values[grid.flat(i, j - 1)]);
  }
}

TEST_CASE("grid field round trip") {
  const Grid2D grid(Domain2D(0.0, 2.0, 0.0, 3.0), 7, 9);
  GridField f{grid, std::vector<double>(grid.node_count()), Point{1.0, 1.5}, 42};
  Rng rng(3);
  for (auto& v : f.values) v = rng.uniform(-1.0, 1.0);

  std::ostringstream buf;
  save_field(buf, f);
  std::istringstream in(buf.str());
  const GridField g = load_field(in, "<mem>");
  CHECK(g.grid.nx == 7);
  CHECK(g.grid.nz == 9);
  REQUIRE(g.values.size() == f.values.size());
  for (std::size_t k = 0; k < f.values.size(); ++k) CHECK(g.values[k] == f.values[k]);
  REQUIRE(g.source.has_value());
  CHECK(g.source->x == 1.0);
  CHECK(g.source->z == 1.5);
  REQUIRE(g.seed.has_value());
  CHECK(*g.seed == 42);
}

TEST_CASE("grid field parse errors") {
  SUBCASE("empty file") {
    std::istringstream in("");
    CHECK_THROWS_AS(load_field(in, "<mem>"), std::runtime_error);
  }
  SUBCASE("row count mismatch names the line") {
    std::istringstream in("2 3 0 1 0 1\n1 2\n3 4\n");
    try {
      load_field(in, "bad.txt");
      FAIL("expected parse error");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()).find("bad.txt:3") != std::string::npos);
    }
  }
  SUBCASE("short row rejected") {
    std::istringstream in("3 2 0 1 0 1\n1 2\n3 4 5\n");
    CHECK_THROWS_AS(load_field(in, "<mem>"), std::runtime_error);
  }
}
