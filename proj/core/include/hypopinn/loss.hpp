#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hypopinn/geometry.hpp"
#include "hypopinn/network.hpp"
#include "hypopinn/velocity.hpp"

namespace hypopinn {

/// Interior points where the eikonal residual is penalized.
struct CollocationSet {
  std::vector<Point> points;
  std::uint64_t seed = 0;
};

/// n i.i.d. uniform points over the domain rectangle; deterministic per seed.
CollocationSet sample_collocation(const Domain2D& domain, int n, std::uint64_t seed);

struct LossBreakdown {
  double pde_loss = 0.0;
  double data_loss = 0.0;
  double prior_loss = 0.0;
  double total = 0.0;
};

/// The HypoPINN objective:
///   mean over collocation of (|grad T|^2 - 1/v^2)^2
/// + mean over receivers of (T - T_obs)^2
/// + prior_lambda * |theta|^2
/// Holds references to the training set; keep those alive while in use.
class PinnProblem {
 public:
  PinnProblem(NetworkSpec spec, const VelocityModel& model, const CollocationSet& colloc,
              const ReceiverSet& obs, double prior_lambda);

  const NetworkSpec& spec() const { return eval_.spec(); }
  double prior_lambda() const { return prior_lambda_; }

  /// Signed eikonal residual |grad T|^2 - 1/v^2 at one point.
  double pde_residual(std::span<const double> params, Point p);

  LossBreakdown loss(std::span<const double> params);

  /// Loss and its full parameter gradient in one pass.
  LossBreakdown loss_grad(std::span<const double> params, std::span<double> grad);

  /// Visit the gradient of each example's unaveraged squared-error term:
  /// one call per collocation point (residual^2) and one per receiver
  /// ((T - T_obs)^2). Used for the empirical Fisher.
  void for_each_example_grad(std::span<const double> params,
                             const std::function<void(std::span<const double>)>& visit);

  std::size_t example_count() const {
    return colloc_->points.size() + obs_->positions.size();
  }

 private:
  NetworkEval eval_;
  const VelocityModel* model_;
  const CollocationSet* colloc_;
  const ReceiverSet* obs_;
  double prior_lambda_;
};

}  // namespace hypopinn
