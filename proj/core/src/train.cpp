#include "hypopinn/train.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hypopinn/adam.hpp"

namespace hypopinn {

void TrainConfig::validate() const {
  if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs must be >= 1");
  if (!(lr > 0.0)) throw std::invalid_argument("TrainConfig: lr must be positive");
  if (prior_lambda < 0.0) throw std::invalid_argument("TrainConfig: prior_lambda < 0");
  if (n_collocation < 1) throw std::invalid_argument("TrainConfig: n_collocation < 1");
  if (noise_std < 0.0) throw std::invalid_argument("TrainConfig: noise_std < 0");
}

TrainResult train_map(const TrainConfig& config, const NetworkSpec& spec,
                      const VelocityModel& model, const ReceiverSet& obs,
                      const CollocationSet& colloc) {
  config.validate();
  PinnProblem problem(spec, model, colloc, obs, config.prior_lambda);

  TrainResult result;
  result.params_map = init_weights(spec, config.init, config.init_seed);
  result.history.reserve(config.epochs);

  AdamState adam(result.params_map.size(), config.lr, config.beta1, config.beta2, config.eps);
  std::vector<double> grad(result.params_map.size());
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    const LossBreakdown lb = problem.loss_grad(result.params_map, grad);
    if (!std::isfinite(lb.total)) {
      throw std::runtime_error("train_map: non-finite loss at epoch " + std::to_string(epoch));
    }
    adam_step(adam, result.params_map, grad);
    result.history.push_back(lb);
  }
  return result;
}

TrainResult train_map(const TrainConfig& config, const NetworkSpec& spec,
                      const VelocityModel& model, const ReceiverSet& obs) {
  config.validate();
  const CollocationSet colloc =
      sample_collocation(model.domain(), config.n_collocation, config.collocation_seed);
  return train_map(config, spec, model, obs, colloc);
}

}  // namespace hypopinn
