#include "hypopinn/locator.hpp"

#include <cmath>
#include <stdexcept>

namespace hypopinn {

HypocenterEstimate locate(const TraveltimeField& field) {
  if (field.values.empty() || field.values.size() != field.grid.node_count()) {
    throw std::invalid_argument("locate: empty or inconsistent field");
  }
  std::size_t best = 0;
  for (std::size_t k = 1; k < field.values.size(); ++k) {
    if (field.values[k] < field.values[best]) best = k;
  }
  const int i = static_cast<int>(best % field.grid.nx);
  const int j = static_cast<int>(best / field.grid.nx);
  return {field.grid.node(i, j), field.values[best], best, field.values[best] < 0.0};
}

HypocenterCloud cloud_stats(std::vector<HypocenterEstimate> estimates) {
  const std::size_t n = estimates.size();
  if (n < 2) throw std::invalid_argument("cloud_stats: need at least 2 estimates");
  HypocenterCloud cloud;
  double mx = 0.0, mz = 0.0;
  for (const auto& e : estimates) {
    mx += e.location.x;
    mz += e.location.z;
  }
  mx /= n;
  mz /= n;
  double cxx = 0.0, cxz = 0.0, czz = 0.0;
  for (const auto& e : estimates) {
    const double dx = e.location.x - mx;
    const double dz = e.location.z - mz;
    cxx += dx * dx;
    cxz += dx * dz;
    czz += dz * dz;
  }
  const double denom = static_cast<double>(n - 1);
  cloud.estimates = std::move(estimates);
  cloud.mean = {mx, mz};
  cloud.covariance = {cxx / denom, cxz / denom, cxz / denom, czz / denom};
  cloud.stddev = {std::sqrt(cloud.covariance[0]), std::sqrt(cloud.covariance[3])};
  return cloud;
}

LocationError locate_error(const HypocenterEstimate& estimate, Point true_source) {
  const double dx = estimate.location.x - true_source.x;
  const double dz = estimate.location.z - true_source.z;
  return {dx, dz, std::hypot(dx, dz)};
}

}  // namespace hypopinn
