#pragma once

#include <variant>
#include <vector>

#include "hypopinn/geometry.hpp"

namespace hypopinn {

struct ConstantVelocity {
  double v;  // km/s
};

/// v(z) = v0 + g*z, velocity increasing with depth for g > 0.
struct LinearGradientVelocity {
  double v0;  // km/s at z = 0
  double g;   // 1/s
};

struct GriddedVelocity {
  Grid2D grid;
  std::vector<double> values;  // node velocities, row-major (j*nx + i)
};

/// Wave-speed field over a Domain2D. Immutable after construction.
class VelocityModel {
 public:
  explicit VelocityModel(Domain2D dom, ConstantVelocity c);
  explicit VelocityModel(Domain2D dom, LinearGradientVelocity lg);
  explicit VelocityModel(GriddedVelocity g);

  const Domain2D& domain() const { return domain_; }
  bool is_gridded() const;
  const GriddedVelocity& gridded() const;

  /// Velocity at p in km/s. Gridded models interpolate bilinearly.
  /// Throws std::domain_error for points outside the domain.
  double eval(Point p) const;

 private:
  Domain2D domain_;
  std::variant<ConstantVelocity, LinearGradientVelocity, GriddedVelocity> kind_;
};

/// Horizontally layered gridded model. layer_depths are the interface
/// depths (strictly increasing, km); layer_velocities has one more entry
/// than layer_depths. A node at depth z gets the velocity of the layer
/// it falls in; interfaces belong to the layer below.
VelocityModel build_layered(const Grid2D& grid,
                            const std::vector<double>& layer_depths,
                            const std::vector<double>& layer_velocities);

/// Bilinear interpolation of row-major node values on a grid.
/// Exact at nodes. Throws std::domain_error outside the grid domain.
double bilinear(const Grid2D& grid, const std::vector<double>& values, Point p);

}  // namespace hypopinn
