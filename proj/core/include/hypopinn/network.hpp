#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypopinn/geometry.hpp"

namespace hypopinn {

/// Mish activation f(x) = x * tanh(softplus(x)) with first and second
/// derivatives. Softplus is computed overflow-safely.
struct MishValue {
  double f;
  double d1;
  double d2;
};
MishValue mish_full(double x);
double mish(double x);

/// MLP layer widths, input first. Input width must be 2 (x, z) and the
/// output width 1 (traveltime). Hidden layers use Mish, the output layer
/// is linear.
struct NetworkSpec {
  std::vector<int> widths;

  explicit NetworkSpec(std::vector<int> w);
  static NetworkSpec default_spec() { return NetworkSpec({2, 16, 16, 32, 16, 16, 1}); }

  int layer_count() const { return static_cast<int>(widths.size()) - 1; }
  std::size_t param_count() const;
};

enum class InitScheme { XavierNormal, XavierUniform, KaimingNormal, KaimingUniform };

InitScheme init_scheme_from_string(const std::string& s);
std::string to_string(InitScheme s);

/// Flat parameter vector, layer-major: for each layer, weights row-major
/// (out x in) followed by biases. Weights drawn per scheme, biases zero.
std::vector<double> init_weights(const NetworkSpec& spec, InitScheme scheme,
                                 std::uint64_t seed);

/// Value and input gradient of the network at one point.
struct EvalResult {
  double t;
  double dt_dx;
  double dt_dz;
};

/// Reusable evaluator holding the forward tape, so batched evaluation
/// does not allocate. Not thread-safe; use one instance per thread.
class NetworkEval {
 public:
  explicit NetworkEval(NetworkSpec spec);

  const NetworkSpec& spec() const { return spec_; }

  /// Value-only forward pass. Performs the identical primal operation
  /// sequence as forward_grad, so the T values agree bit-for-bit.
  double forward(std::span<const double> params, Point p);

  /// Forward pass carrying two tangent channels (d/dx, d/dz); leaves a
  /// tape for backward().
  EvalResult forward_grad(std::span<const double> params, Point p);

  /// Reverse pass over the tape left by the last forward_grad call.
  /// Seeds are the loss sensitivities to (T, dT/dx, dT/dz); parameter
  /// gradients are accumulated (+=) into `grad`.
  void backward(std::span<const double> params, double seed_t, double seed_dx,
                double seed_dz, std::span<double> grad);

 private:
  struct Triple {
    double v, dx, dz;
  };

  NetworkSpec spec_;
  std::vector<std::size_t> w_off_, b_off_;
  std::vector<std::vector<Triple>> act_;   // act_[l], l = 0..L
  std::vector<std::vector<Triple>> pre_;   // pre_[l], l = 1..L
  std::vector<std::vector<double>> d1_, d2_;
  std::vector<std::vector<Triple>> adj_;
  std::vector<double> scratch_;            // value-only activations
};

/// Text checkpoint: "hypopinn-params v1", widths line, one value per line.
void save_params(const std::string& path, const NetworkSpec& spec,
                 std::span<const double> params,
                 std::optional<std::uint64_t> seed = std::nullopt);
std::pair<NetworkSpec, std::vector<double>> load_params(const std::string& path);

}  // namespace hypopinn
