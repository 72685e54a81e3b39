#include "hypopinn/velocity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypopinn {

VelocityModel::VelocityModel(Domain2D dom, ConstantVelocity c)
    : domain_(dom), kind_(c) {
  if (c.v <= 0.0) throw std::invalid_argument("VelocityModel: velocity must be positive");
}

VelocityModel::VelocityModel(Domain2D dom, LinearGradientVelocity lg)
    : domain_(dom), kind_(lg) {
  const double v_top = lg.v0 + lg.g * dom.z_min;
  const double v_bot = lg.v0 + lg.g * dom.z_max;
  if (v_top <= 0.0 || v_bot <= 0.0) {
    throw std::invalid_argument("VelocityModel: gradient model non-positive in domain");
  }
}

VelocityModel::VelocityModel(GriddedVelocity g)
    : domain_(g.grid.domain), kind_(std::move(g)) {
  const auto& gv = std::get<GriddedVelocity>(kind_);
  if (gv.values.size() != gv.grid.node_count()) {
    throw std::invalid_argument("VelocityModel: value count != node count");
  }
  for (double v : gv.values) {
    if (!(v > 0.0)) throw std::invalid_argument("VelocityModel: non-positive node velocity");
  }
}

bool VelocityModel::is_gridded() const {
  return std::holds_alternative<GriddedVelocity>(kind_);
}

const GriddedVelocity& VelocityModel::gridded() const {
  return std::get<GriddedVelocity>(kind_);
}

double bilinear(const Grid2D& grid, const std::vector<double>& values, Point p) {
  if (!grid.domain.contains(p)) {
    throw std::domain_error("bilinear: point outside grid domain");
  }
  const double fx = (p.x - grid.domain.x_min) / grid.hx();
  const double fz = (p.z - grid.domain.z_min) / grid.hz();
  int i = std::min(static_cast<int>(fx), grid.nx - 2);
  int j = std::min(static_cast<int>(fz), grid.nz - 2);
  i = std::max(i, 0);
  j = std::max(j, 0);
  const double tx = fx - i;
  const double tz = fz - j;
  const double v00 = values[grid.flat(i, j)];
  const double v10 = values[grid.flat(i + 1, j)];
  const double v01 = values[grid.flat(i, j + 1)];
  const double v11 = values[grid.flat(i + 1, j + 1)];
  return (1.0 - tz) * ((1.0 - tx) * v00 + tx * v10) +
         tz * ((1.0 - tx) * v01 + tx * v11);
}

double VelocityModel::eval(Point p) const {
  if (!domain_.contains(p)) {
    throw std::domain_error("eval_velocity: point outside domain");
  }
  if (const auto* c = std::get_if<ConstantVelocity>(&kind_)) {
    return c->v;
  }
  if (const auto* lg = std::get_if<LinearGradientVelocity>(&kind_)) {
    return lg->v0 + lg->g * p.z;
  }
  const auto& g = std::get<GriddedVelocity>(kind_);
  return bilinear(g.grid, g.values, p);
}

VelocityModel build_layered(const Grid2D& grid,
                            const std::vector<double>& layer_depths,
                            const std::vector<double>& layer_velocities) {
  if (layer_velocities.size() != layer_depths.size() + 1) {
    throw std::invalid_argument("build_layered: need one more velocity than interface");
  }
  if (!std::is_sorted(layer_depths.begin(), layer_depths.end()) ||
      std::adjacent_find(layer_depths.begin(), layer_depths.end()) != layer_depths.end()) {
    throw std::invalid_argument("build_layered: interface depths must be strictly increasing");
  }
  for (double v : layer_velocities) {
    if (!(v > 0.0)) throw std::invalid_argument("build_layered: velocities must be positive");
  }
  GriddedVelocity g;
  g.grid = grid;
  g.values.resize(grid.node_count());
  for (int j = 0; j < grid.nz; ++j) {
    const double z = grid.domain.z_min + j * grid.hz();
    // interfaces belong to the layer below
    const std::size_t layer =
        std::upper_bound(layer_depths.begin(), layer_depths.end(), z) - layer_depths.begin();
    const double v = layer_velocities[layer];
    for (int i = 0; i < grid.nx; ++i) {
      g.values[grid.flat(i, j)] = v;
    }
  }
  return VelocityModel(std::move(g));
}

}  // namespace hypopinn
