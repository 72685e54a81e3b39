#include "hypopinn/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace hypopinn {

double analytic_constant(double v, Point source, Point p) {
  if (!(v > 0.0)) throw std::invalid_argument("analytic_constant: v must be positive");
  return std::hypot(p.x - source.x, p.z - source.z) / v;
}

double analytic_linear_gradient(double v0, double g, Point source, Point p) {
  if (g == 0.0) return analytic_constant(v0, source, p);
  const double vs = v0 + g * source.z;
  const double vp = v0 + g * p.z;
  if (!(vs > 0.0) || !(vp > 0.0)) {
    throw std::invalid_argument("analytic_linear_gradient: non-positive velocity");
  }
  const double dx = p.x - source.x;
  const double dz = p.z - source.z;
  const double r2 = dx * dx + dz * dz;
  const double e = g * g * r2 / (2.0 * vs * vp);
  if (e < 1e-8) {
    // acosh(1 + e) = sqrt(2e) (1 - e/12 + 3e^2/160 - ...); the direct form
    // cancels catastrophically as g -> 0
    return std::sqrt(r2 / (vs * vp)) * (1.0 - e / 12.0 + 3.0 * e * e / 160.0);
  }
  double arg = 1.0 + e;
  if (arg < 1.0) arg = 1.0;
  return std::acosh(arg) / g;
}

TraveltimeField analytic_field_constant(double v, Point source, const Grid2D& grid) {
  TraveltimeField f{grid, std::vector<double>(grid.node_count()), source};
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      f.values[grid.flat(i, j)] = analytic_constant(v, source, grid.node(i, j));
    }
  }
  return f;
}

TraveltimeField analytic_field_linear_gradient(double v0, double g, Point source,
                                               const Grid2D& grid) {
  TraveltimeField f{grid, std::vector<double>(grid.node_count()), source};
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      f.values[grid.flat(i, j)] = analytic_linear_gradient(v0, g, source, grid.node(i, j));
    }
  }
  return f;
}

}  // namespace hypopinn
