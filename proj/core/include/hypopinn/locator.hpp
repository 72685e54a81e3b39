#pragma once

#include <array>
#include <vector>

#include "hypopinn/field.hpp"
#include "hypopinn/geometry.hpp"

namespace hypopinn {

struct HypocenterEstimate {
  Point location;        // a grid node of the evaluation grid
  double min_traveltime; // field value at that node
  std::size_t grid_index;
  bool negative_minimum; // set when the field minimum is < 0
};

struct HypocenterCloud {
  std::vector<HypocenterEstimate> estimates;
  Point mean;
  Point stddev;                        // unbiased sample std per axis
  std::array<double, 4> covariance;    // row-major 2x2 [xx, xz, zx, zz]
};

struct LocationError {
  double dx;
  double dz;
  double euclidean;
};

/// Node of globally minimum field value; ties broken by lowest flat index.
HypocenterEstimate locate(const TraveltimeField& field);

/// Sample mean/std/covariance over estimate locations. Needs >= 2 estimates.
HypocenterCloud cloud_stats(std::vector<HypocenterEstimate> estimates);

LocationError locate_error(const HypocenterEstimate& estimate, Point true_source);

}  // namespace hypopinn
