#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hypopinn/config.hpp"
#include "hypopinn/geometry.hpp"
#include "hypopinn/network.hpp"
#include "hypopinn/train.hpp"
#include "hypopinn/velocity.hpp"

namespace hypopinn {

enum class OracleKind { Analytic, Fmm };

/// Fully resolved experiment description. Sub-seeds are derived from the
/// master seed by fixed offsets: init +1, collocation +2, posterior
/// sampling +3, observation noise +4 (shared across sources, so source
/// order never changes per-source results).
struct ExperimentConfig {
  // velocity model
  std::string model_type;                  // constant | linear_gradient | layered
  double model_v = 2.0;                    // constant
  double model_v0 = 2.0, model_gradient = 0.5;  // linear_gradient
  std::vector<double> layer_depths, layer_velocities;

  Domain2D domain;
  int nx = 0, nz = 0;
  std::vector<Point> sources;
  int receiver_count = 0;
  OracleKind oracle = OracleKind::Analytic;

  std::vector<int> widths;
  TrainConfig train;
  int n_samples = 1000;
  double damping = 1e-6;
  std::uint64_t master_seed = 0;

  static ExperimentConfig from_kv(const KeyValueConfig& kv);
  static ExperimentConfig from_file(const std::string& path);

  /// Apply a master seed (re-derives all sub-seeds).
  void set_master_seed(std::uint64_t seed);

  /// Re-parseable echo with every default resolved.
  void echo(std::ostream& os) const;

  VelocityModel make_model() const;
  Grid2D make_grid() const;
  NetworkSpec make_spec() const { return NetworkSpec(widths); }

  /// True when the configured model has a closed-form traveltime.
  bool has_analytic_truth() const;
};

/// Exit statuses shared with the CLI: 0 ok, 1 config error, 2 numerical failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNumericalFailure = 2;

/// Full pipeline per source: synthesize observations, train to the MAP,
/// locate, Laplace posterior, sample, ensemble cloud. Artifacts go to
/// out_dir/source_XXX/. Returns an exit status.
int run_experiment(const ExperimentConfig& config, const std::string& out_dir);

/// Training stage only (observations, MAP params/field/locate, history).
int run_train(const ExperimentConfig& config, const std::string& out_dir);

/// Laplace stage on top of an existing training output directory.
int run_laplace(const ExperimentConfig& config, const std::string& in_dir,
                const std::string& out_dir);

/// One training per initializer scheme with shared collocation and
/// observations; writes init_study.csv plus per-scheme fields.
int run_init_study(const ExperimentConfig& config, const std::vector<InitScheme>& schemes,
                   const std::string& out_dir);

/// Oracle-only mode: truth fields and receiver observations, no training.
/// refine > 1 additionally solves on a refine-x finer grid and, when a
/// closed form exists, reports the L-infinity error of each FMM field.
int run_forward(const ExperimentConfig& config, const std::string& out_dir, int refine = 1);

}  // namespace hypopinn
