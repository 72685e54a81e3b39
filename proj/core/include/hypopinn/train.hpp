#pragma once

#include <cstdint>
#include <vector>

#include "hypopinn/loss.hpp"
#include "hypopinn/network.hpp"

namespace hypopinn {

struct TrainConfig {
  int epochs = 3000;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double prior_lambda = 1e-6;
  int n_collocation = 2500;
  InitScheme init = InitScheme::KaimingNormal;
  std::uint64_t init_seed = 0;
  std::uint64_t collocation_seed = 0;
  double noise_std = 0.0;  // optional observation noise, default off
  std::uint64_t noise_seed = 0;

  void validate() const;
};

struct TrainResult {
  std::vector<double> params_map;  // last epoch's weights
  std::vector<LossBreakdown> history;  // one entry per epoch
};

/// Full-batch Adam on the HypoPINN objective: one step per epoch over
/// all collocation and data points. Returns the final-epoch parameters
/// (no early stopping). Deterministic given the config seeds.
/// Throws std::runtime_error naming the epoch if the loss goes non-finite.
TrainResult train_map(const TrainConfig& config, const NetworkSpec& spec,
                      const VelocityModel& model, const ReceiverSet& obs,
                      const CollocationSet& colloc);

/// Convenience: samples collocation points from the config, then trains.
TrainResult train_map(const TrainConfig& config, const NetworkSpec& spec,
                      const VelocityModel& model, const ReceiverSet& obs);

}  // namespace hypopinn
