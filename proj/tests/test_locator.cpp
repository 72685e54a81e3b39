#include <doctest.h>

#include <cmath>

#include "hypopinn/locator.hpp"
#include "hypopinn/rng.hpp"

using namespace hypopinn;

namespace {

TraveltimeField random_field(std::uint64_t seed) {
  const Grid2D grid(Domain2D(0.0, 2.0, 0.0, 3.0), 21, 31);
  TraveltimeField f{grid, std::vector<double>(grid.node_count()), std::nullopt};
  Rng rng(seed);
  for (auto& v : f.values) v = rng.uniform(0.0, 1.0);
  return f;
}

}  // namespace

TEST_CASE("locate") {
  SUBCASE("constant field breaks ties at flat index 0") {
    const Grid2D grid(Domain2D(0.0, 1.0, 0.0, 1.0), 4, 4);
    const TraveltimeField f{grid, std::vector<double>(16, 0.7), std::nullopt};
    const HypocenterEstimate est = locate(f);
    CHECK(est.grid_index == 0);
    CHECK(est.location.x == 0.0);
    CHECK(est.location.z == 0.0);
    CHECK_FALSE(est.negative_minimum);
  }

  SUBCASE("negative minimum sets the flag") {
    TraveltimeField f = random_field(1);
    f.values[37] = -0.25;
    const HypocenterEstimate est = locate(f);
    CHECK(est.grid_index == 37);
    CHECK(est.negative_minimum);
    CHECK(est.min_traveltime == -0.25);
  }

  SUBCASE("argmin invariant under constant shift and positive scaling") {
    const TraveltimeField f = random_field(2);
    const std::size_t base = locate(f).grid_index;
    TraveltimeField shifted = f;
    for (auto& v : shifted.values) v += 17.5;
    CHECK(locate(shifted).grid_index == base);
    TraveltimeField scaled = f;
    for (auto& v : scaled.values) v *= 3.25;
    CHECK(locate(scaled).grid_index == base);
  }
}

TEST_CASE("cloud_stats") {
  SUBCASE("identical estimates have zero spread") {
    HypocenterEstimate e{{1.0, 2.0}, 0.1, 5, false};
    const HypocenterCloud c = cloud_stats({e, e, e});
    CHECK(c.mean.x == 1.0);
    CHECK(c.mean.z == 2.0);
    CHECK(c.stddev.x == 0.0);
    CHECK(c.stddev.z == 0.0);
  }

  SUBCASE("two-point closed form") {
    HypocenterEstimate a{{0.0, 0.0}, 0.0, 0, false};
    HypocenterEstimate b{{2.0, 2.0}, 0.0, 1, false};
    const HypocenterCloud c = cloud_stats({a, b});
    CHECK(c.mean.x == doctest::Approx(1.0));
    CHECK(c.mean.z == doctest::Approx(1.0));
    CHECK(c.stddev.x == doctest::Approx(std::sqrt(2.0)));
    CHECK(c.stddev.z == doctest::Approx(std::sqrt(2.0)));
    CHECK(c.covariance[1] == doctest::Approx(2.0));
  }

  SUBCASE("mean stays inside the bounding box") {
    Rng rng(8);
    std::vector<HypocenterEstimate> es;
    double xlo = 1e30, xhi = -1e30, zlo = 1e30, zhi = -1e30;
    for (int k = 0; k < 40; ++k) {
      const Point p{rng.uniform(0.0, 2.0), rng.uniform(0.0, 3.0)};
      es.push_back({p, 0.0, 0, false});
      xlo = std::min(xlo, p.x);
      xhi = std::max(xhi, p.x);
      zlo = std::min(zlo, p.z);
      zhi = std::max(zhi, p.z);
    }
    const HypocenterCloud c = cloud_stats(std::move(es));
    CHECK(c.mean.x >= xlo);
    CHECK(c.mean.x <= xhi);
    CHECK(c.mean.z >= zlo);
    CHECK(c.mean.z <= zhi);
  }

  SUBCASE("fewer than two estimates rejected") {
    HypocenterEstimate e{{1.0, 2.0}, 0.1, 5, false};
    CHECK_THROWS_AS(cloud_stats({e}), std::invalid_argument);
  }
}

TEST_CASE("locate_error") {
  HypocenterEstimate e{{1.0, 1.5}, 0.0, 0, false};
  SUBCASE("zero at truth") {
    const LocationError err = locate_error(e, {1.0, 1.5});
    CHECK(err.dx == 0.0);
    CHECK(err.dz == 0.0);
    CHECK(err.euclidean == 0.0);
  }
  SUBCASE("componentwise distances") {
    const LocationError err = locate_error(e, {1.0, 1.4});
    CHECK(err.dx == doctest::Approx(0.0));
    CHECK(err.dz == doctest::Approx(0.1));
    CHECK(err.euclidean == doctest::Approx(0.1));
  }
  SUBCASE("euclidean symmetric in argument order") {
    HypocenterEstimate a{{0.4, 2.0}, 0.0, 0, false};
    HypocenterEstimate b{{1.3, 0.7}, 0.0, 0, false};
    CHECK(locate_error(a, b.location).euclidean ==
          doctest::Approx(locate_error(b, a.location).euclidean));
  }
}
