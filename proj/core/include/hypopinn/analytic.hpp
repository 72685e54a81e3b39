#pragma once

#include "hypopinn/field.hpp"
#include "hypopinn/geometry.hpp"

namespace hypopinn {

/// Traveltime in a homogeneous medium: |p - source| / v.
double analytic_constant(double v, Point source, Point p);

/// Traveltime for v(z) = v0 + g*z:
///   T = (1/g) * acosh(1 + g^2 r^2 / (2 v(z_s) v(z_p))),  r = |p - source|.
/// Falls back to the constant-velocity form as g -> 0. The acosh argument
/// is clamped to 1 against roundoff.
double analytic_linear_gradient(double v0, double g, Point source, Point p);

/// Evaluate either closed form on every node of a grid.
TraveltimeField analytic_field_constant(double v, Point source, const Grid2D& grid);
TraveltimeField analytic_field_linear_gradient(double v0, double g, Point source,
                                               const Grid2D& grid);

}  // namespace hypopinn
