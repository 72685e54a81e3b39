#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypopinn/field.hpp"
#include "hypopinn/loss.hpp"
#include "hypopinn/network.hpp"

namespace hypopinn {

/// Diagonal Gaussian posterior N(theta_MAP, diag_variance) over the weights.
struct LaplacePosterior {
  NetworkSpec spec;
  std::vector<double> theta_map;
  std::vector<double> diag_variance;
  double damping = 0.0;
};

/// Empirical Fisher diagonal: mean over training examples (collocation
/// points and receivers pooled) of the element-wise squared per-example
/// gradient. All entries >= 0.
std::vector<double> diag_fisher(PinnProblem& problem, std::span<const double> theta_map);

/// diag_variance[i] = 1 / (fisher[i] + 2*prior_lambda + damping).
/// The prior contributes its exact Hessian 2*lambda*I.
LaplacePosterior build_posterior(const NetworkSpec& spec, std::span<const double> theta_map,
                                 std::span<const double> fisher_diag, double damping,
                                 double prior_lambda);

/// n draws theta_i = theta_MAP + sqrt(diag_variance) .* z_i, z_i ~ N(0, I).
std::vector<std::vector<double>> sample_params(const LaplacePosterior& posterior, int n,
                                               std::uint64_t seed);

/// One traveltime field per weight realization, network evaluated at
/// every grid node.
std::vector<TraveltimeField> ensemble_predict(const NetworkSpec& spec,
                                              const std::vector<std::vector<double>>& samples,
                                              const Grid2D& grid);

/// Single realization, streaming-friendly.
TraveltimeField predict_field(NetworkEval& eval, std::span<const double> params,
                              const Grid2D& grid);

/// Posterior checkpoint: the params format with a variance column.
void save_posterior(const std::string& path, const LaplacePosterior& posterior,
                    std::optional<std::uint64_t> seed = std::nullopt);
LaplacePosterior load_posterior(const std::string& path);

}  // namespace hypopinn
