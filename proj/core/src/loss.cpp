#include "hypopinn/loss.hpp"

#include <stdexcept>

#include "hypopinn/rng.hpp"

namespace hypopinn {

CollocationSet sample_collocation(const Domain2D& domain, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_collocation: need n >= 1");
  CollocationSet set;
  set.seed = seed;
  set.points.reserve(n);
  Rng rng(seed);
  for (int k = 0; k < n; ++k) {
    const double x = rng.uniform(domain.x_min, domain.x_max);
    const double z = rng.uniform(domain.z_min, domain.z_max);
    set.points.push_back({x, z});
  }
  return set;
}

PinnProblem::PinnProblem(NetworkSpec spec, const VelocityModel& model,
                         const CollocationSet& colloc, const ReceiverSet& obs,
                         double prior_lambda)
    : eval_(std::move(spec)),
      model_(&model),
      colloc_(&colloc),
      obs_(&obs),
      prior_lambda_(prior_lambda) {
  if (colloc.points.empty()) throw std::invalid_argument("PinnProblem: empty collocation set");
  if (!obs.has_times()) throw std::invalid_argument("PinnProblem: observations missing times");
  if (prior_lambda < 0.0) throw std::invalid_argument("PinnProblem: negative prior_lambda");
}

double PinnProblem::pde_residual(std::span<const double> params, Point p) {
  const EvalResult r = eval_.forward_grad(params, p);
  const double v = model_->eval(p);
  return r.dt_dx * r.dt_dx + r.dt_dz * r.dt_dz - 1.0 / (v * v);
}

LossBreakdown PinnProblem::loss(std::span<const double> params) {
  LossBreakdown out;
  for (Point p : colloc_->points) {
    const double r = pde_residual(params, p);
    out.pde_loss += r * r;
  }
  out.pde_loss /= static_cast<double>(colloc_->points.size());
  for (std::size_t k = 0; k < obs_->positions.size(); ++k) {
    const double d = eval_.forward(params, obs_->positions[k]) - obs_->times[k];
    out.data_loss += d * d;
  }
  out.data_loss /= static_cast<double>(obs_->positions.size());
  double sq = 0.0;
  for (double t : params) sq += t * t;
  out.prior_loss = prior_lambda_ * sq;
  out.total = out.pde_loss + out.data_loss + out.prior_loss;
  return out;
}

LossBreakdown PinnProblem::loss_grad(std::span<const double> params, std::span<double> grad) {
  if (grad.size() != params.size()) {
    throw std::invalid_argument("loss_grad: gradient length mismatch");
  }
  std::fill(grad.begin(), grad.end(), 0.0);
  LossBreakdown out;
  const double n_i = static_cast<double>(colloc_->points.size());
  for (Point p : colloc_->points) {
    const EvalResult e = eval_.forward_grad(params, p);
    const double v = model_->eval(p);
    const double r = e.dt_dx * e.dt_dx + e.dt_dz * e.dt_dz - 1.0 / (v * v);
    out.pde_loss += r * r;
    // d/dTx of r^2/N_I = 4 r Tx / N_I
    const double c = 4.0 * r / n_i;
    eval_.backward(params, 0.0, c * e.dt_dx, c * e.dt_dz, grad);
  }
  out.pde_loss /= n_i;
  const double n_d = static_cast<double>(obs_->positions.size());
  for (std::size_t k = 0; k < obs_->positions.size(); ++k) {
    const EvalResult e = eval_.forward_grad(params, obs_->positions[k]);
    const double d = e.t - obs_->times[k];
    out.data_loss += d * d;
    eval_.backward(params, 2.0 * d / n_d, 0.0, 0.0, grad);
  }
  out.data_loss /= n_d;
  double sq = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    sq += params[i] * params[i];
    grad[i] += 2.0 * prior_lambda_ * params[i];
  }
  out.prior_loss = prior_lambda_ * sq;
  out.total = out.pde_loss + out.data_loss + out.prior_loss;
  return out;
}

void PinnProblem::for_each_example_grad(
    std::span<const double> params,
    const std::function<void(std::span<const double>)>& visit) {
  std::vector<double> grad(params.size());
  for (Point p : colloc_->points) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const EvalResult e = eval_.forward_grad(params, p);
    const double v = model_->eval(p);
    const double r = e.dt_dx * e.dt_dx + e.dt_dz * e.dt_dz - 1.0 / (v * v);
    eval_.backward(params, 0.0, 4.0 * r * e.dt_dx, 4.0 * r * e.dt_dz, grad);
    visit(grad);
  }
  for (std::size_t k = 0; k < obs_->positions.size(); ++k) {
    std::fill(grad.begin(), grad.end(), 0.0);
    const EvalResult e = eval_.forward_grad(params, obs_->positions[k]);
    eval_.backward(params, 2.0 * (e.t - obs_->times[k]), 0.0, 0.0, grad);
    visit(grad);
  }
}

}  // namespace hypopinn
