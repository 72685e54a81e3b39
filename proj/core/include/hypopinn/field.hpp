#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypopinn/geometry.hpp"

namespace hypopinn {

/// Traveltime values on a regular grid, row-major (j*nx + i).
/// `source` is provenance metadata for oracle-produced fields.
struct TraveltimeField {
  Grid2D grid;
  std::vector<double> values;
  std::optional<Point> source;

  double interp(Point p) const;
};

/// Grid field container shared by velocity and traveltime serialization.
struct GridField {
  Grid2D grid;
  std::vector<double> values;
  std::optional<Point> source;             // emitted as "# source x z"
  std::optional<std::uint64_t> seed;       // emitted as "# seed n"
};

/// Plain-text grid field format:
///   optional '#' comment lines
///   nx nz x_min x_max z_min z_max
///   nz rows of nx values (row = constant z, ascending), 17 significant digits
void save_field(const std::string& path, const GridField& field);
void save_field(std::ostream& os, const GridField& field);

/// Throws std::runtime_error naming the offending line on malformed input.
GridField load_field(const std::string& path);
GridField load_field(std::istream& is, const std::string& name);

/// Interpolate field values at each receiver (bilinear); order preserved.
ReceiverSet sample_receivers(const TraveltimeField& field, const ReceiverSet& receivers);

}  // namespace hypopinn
