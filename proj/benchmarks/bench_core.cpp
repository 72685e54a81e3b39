#include <benchmark/benchmark.h>

#include "hypopinn/fmm.hpp"
#include "hypopinn/laplace.hpp"
#include "hypopinn/loss.hpp"

using namespace hypopinn;

namespace {

const Domain2D kDomain(0.0, 2.0, 0.0, 3.0);

void BM_ForwardValue(benchmark::State& state) {
  const NetworkSpec spec = NetworkSpec::default_spec();
  NetworkEval eval(spec);
  const auto params = init_weights(spec, InitScheme::KaimingNormal, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.forward(params, {0.7, 1.9}));
  }
}
BENCHMARK(BM_ForwardValue);

void BM_ForwardWithInputGrad(benchmark::State& state) {
  const NetworkSpec spec = NetworkSpec::default_spec();
  NetworkEval eval(spec);
  const auto params = init_weights(spec, InitScheme::KaimingNormal, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval.forward_grad(params, {0.7, 1.9}));
  }
}
BENCHMARK(BM_ForwardWithInputGrad);

void BM_FullLossGradient(benchmark::State& state) {
  const NetworkSpec spec = NetworkSpec::default_spec();
  const VelocityModel model(kDomain, LinearGradientVelocity{2.0, 0.5});
  const CollocationSet colloc = sample_collocation(kDomain, state.range(0), 3);
  ReceiverSet obs = surface_receivers(kDomain, 11);
  for (std::size_t k = 0; k < 11; ++k) obs.times.push_back(0.9);
  PinnProblem prob(spec, model, colloc, obs, 1e-6);
  const auto params = init_weights(spec, InitScheme::KaimingNormal, 1);
  std::vector<double> grad(params.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(prob.loss_grad(params, grad));
  }
}
BENCHMARK(BM_FullLossGradient)->Arg(250)->Arg(2500);

void BM_FmmSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const VelocityModel model(kDomain, LinearGradientVelocity{2.0, 0.5});
  const Grid2D grid(kDomain, n, 3 * n / 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fmm_solve(model, grid, {1.0, 1.5}));
  }
}
BENCHMARK(BM_FmmSolve)->Arg(101)->Arg(201);

void BM_PredictField(benchmark::State& state) {
  const NetworkSpec spec = NetworkSpec::default_spec();
  NetworkEval eval(spec);
  const auto params = init_weights(spec, InitScheme::KaimingNormal, 1);
  const Grid2D grid(kDomain, 101, 151);
  for (auto _ : state) {
    benchmark::DoNotOptimize(predict_field(eval, params, grid));
  }
}
BENCHMARK(BM_PredictField);

}  // namespace

BENCHMARK_MAIN();
