#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hypopinn {

/// A point in the 2-D model plane. x is lateral position, z is depth
/// (z = 0 at the surface, increasing downward). Units: km.
struct Point {
  double x = 0.0;
  double z = 0.0;
};

/// Rectangular computational domain [x_min, x_max] x [z_min, z_max] in km.
struct Domain2D {
  double x_min = 0.0;
  double x_max = 0.0;
  double z_min = 0.0;
  double z_max = 0.0;

  Domain2D() = default;
  Domain2D(double x0, double x1, double z0, double z1)
      : x_min(x0), x_max(x1), z_min(z0), z_max(z1) {
    if (!(x_max > x_min) || !(z_max > z_min)) {
      throw std::invalid_argument("Domain2D: empty or inverted extent");
    }
  }

  bool contains(Point p) const {
    return p.x >= x_min && p.x <= x_max && p.z >= z_min && p.z <= z_max;
  }
  double width() const { return x_max - x_min; }
  double depth() const { return z_max - z_min; }
};

/// Regular node-centered grid over a Domain2D. Node (i, j) sits at
/// (x_min + i*hx, z_min + j*hz). Values attached to a grid are stored
/// row-major with rows of constant z: flat index = j*nx + i.
struct Grid2D {
  Domain2D domain;
  int nx = 0;
  int nz = 0;

  Grid2D() = default;
  Grid2D(Domain2D dom, int nx_, int nz_) : domain(dom), nx(nx_), nz(nz_) {
    if (nx < 2 || nz < 2) {
      throw std::invalid_argument("Grid2D: need at least 2 nodes per axis");
    }
  }

  double hx() const { return (domain.x_max - domain.x_min) / (nx - 1); }
  double hz() const { return (domain.z_max - domain.z_min) / (nz - 1); }
  std::size_t node_count() const {
    return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz);
  }
  std::size_t flat(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  Point node(int i, int j) const {
    return {domain.x_min + i * hx(), domain.z_min + j * hz()};
  }
};

/// Surface receivers and (optionally) the traveltimes observed there.
struct ReceiverSet {
  std::vector<Point> positions;
  std::vector<double> times;  // empty until populated

  bool has_times() const { return times.size() == positions.size() && !positions.empty(); }
};

/// N receivers regularly spaced along the surface z = z_min, endpoints included.
inline ReceiverSet surface_receivers(const Domain2D& dom, int n) {
  if (n < 1) throw std::invalid_argument("surface_receivers: need n >= 1");
  ReceiverSet r;
  r.positions.reserve(n);
  if (n == 1) {
    r.positions.push_back({0.5 * (dom.x_min + dom.x_max), dom.z_min});
    return r;
  }
  const double dx = (dom.x_max - dom.x_min) / (n - 1);
  for (int k = 0; k < n; ++k) {
    r.positions.push_back({dom.x_min + k * dx, dom.z_min});
  }
  return r;
}

}  // namespace hypopinn
