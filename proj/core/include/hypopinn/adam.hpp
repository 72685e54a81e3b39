#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace hypopinn {

/// Adam optimizer state (Kingma & Ba update with bias correction).
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step = 0;
  std::vector<double> m;
  std::vector<double> v;

  explicit AdamState(std::size_t n, double lr_ = 1e-3, double b1 = 0.9, double b2 = 0.999,
                     double eps_ = 1e-8)
      : lr(lr_), beta1(b1), beta2(b2), eps(eps_), m(n, 0.0), v(n, 0.0) {}
};

inline void adam_step(AdamState& state, std::span<double> params,
                      std::span<const double> grad) {
  if (params.size() != state.m.size() || grad.size() != state.m.size()) {
    throw std::invalid_argument("adam_step: length mismatch");
  }
  ++state.step;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    state.m[i] = state.beta1 * state.m[i] + (1.0 - state.beta1) * grad[i];
    state.v[i] = state.beta2 * state.v[i] + (1.0 - state.beta2) * grad[i] * grad[i];
    const double mhat = state.m[i] / bc1;
    const double vhat = state.v[i] / bc2;
    params[i] -= state.lr * mhat / (std::sqrt(vhat) + state.eps);
  }
}

}  // namespace hypopinn
