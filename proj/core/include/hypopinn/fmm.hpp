#pragma once

#include "hypopinn/field.hpp"
#include "hypopinn/geometry.hpp"
#include "hypopinn/velocity.hpp"

namespace hypopinn {

/// First-order fast marching solve of |grad T| = 1/v on a regular grid.
/// Velocity is sampled at the grid nodes from `model`. The four corner
/// nodes of the cell containing the source are initialized with the
/// local homogeneous traveltime and frozen, then the narrow band sweeps
/// outward via the upwind Godunov update and a min-heap.
/// Accepted values are non-decreasing along the sweep; this is checked.
TraveltimeField fmm_solve(const VelocityModel& model, const Grid2D& grid, Point source);

/// Convenience overload for gridded models: solve on the model's own grid.
TraveltimeField fmm_solve(const VelocityModel& model, Point source);

}  // namespace hypopinn
