#include "hypopinn/laplace.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hypopinn/rng.hpp"

namespace hypopinn {

std::vector<double> diag_fisher(PinnProblem& problem, std::span<const double> theta_map) {
  std::vector<double> fisher(theta_map.size(), 0.0);
  problem.for_each_example_grad(theta_map, [&](std::span<const double> g) {
    for (std::size_t i = 0; i < g.size(); ++i) fisher[i] += g[i] * g[i];
  });
  const double n = static_cast<double>(problem.example_count());
  for (double& f : fisher) f /= n;
  return fisher;
}

LaplacePosterior build_posterior(const NetworkSpec& spec, std::span<const double> theta_map,
                                 std::span<const double> fisher_diag, double damping,
                                 double prior_lambda) {
  if (damping < 0.0) throw std::invalid_argument("build_posterior: damping < 0");
  if (theta_map.size() != spec.param_count() || fisher_diag.size() != theta_map.size()) {
    throw std::invalid_argument("build_posterior: length mismatch");
  }
  LaplacePosterior post{spec, {theta_map.begin(), theta_map.end()}, {}, damping};
  post.diag_variance.reserve(fisher_diag.size());
  for (double f : fisher_diag) {
    if (!std::isfinite(f)) throw std::runtime_error("build_posterior: non-finite Fisher entry");
    const double precision = f + 2.0 * prior_lambda + damping;
    if (!(precision > 0.0)) {
      throw std::runtime_error("build_posterior: zero precision; increase damping");
    }
    post.diag_variance.push_back(1.0 / precision);
  }
  return post;
}

std::vector<std::vector<double>> sample_params(const LaplacePosterior& posterior, int n,
                                               std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_params: need n >= 1");
  Rng rng(seed);
  std::vector<std::vector<double>> samples(n);
  for (auto& s : samples) {
    s.resize(posterior.theta_map.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      s[i] = posterior.theta_map[i] + std::sqrt(posterior.diag_variance[i]) * rng.normal();
    }
  }
  return samples;
}

TraveltimeField predict_field(NetworkEval& eval, std::span<const double> params,
                              const Grid2D& grid) {
  TraveltimeField f{grid, std::vector<double>(grid.node_count()), std::nullopt};
  for (int j = 0; j < grid.nz; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      f.values[grid.flat(i, j)] = eval.forward(params, grid.node(i, j));
    }
  }
  return f;
}

std::vector<TraveltimeField> ensemble_predict(const NetworkSpec& spec,
                                              const std::vector<std::vector<double>>& samples,
                                              const Grid2D& grid) {
  if (samples.empty()) throw std::invalid_argument("ensemble_predict: no samples");
  NetworkEval eval(spec);
  std::vector<TraveltimeField> fields;
  fields.reserve(samples.size());
  for (const auto& s : samples) {
    fields.push_back(predict_field(eval, s, grid));
  }
  return fields;
}

void save_posterior(const std::string& path, const LaplacePosterior& posterior,
                    std::optional<std::uint64_t> seed) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_posterior: cannot open " + path);
  os << "hypopinn-posterior v1\n";
  if (seed) os << "# seed " << *seed << "\n";
  os << "# damping " << std::setprecision(17) << posterior.damping << "\n";
  for (std::size_t k = 0; k < posterior.spec.widths.size(); ++k) {
    os << (k ? " " : "") << posterior.spec.widths[k];
  }
  os << "\n";
  for (std::size_t i = 0; i < posterior.theta_map.size(); ++i) {
    os << posterior.theta_map[i] << " " << posterior.diag_variance[i] << "\n";
  }
}

LaplacePosterior load_posterior(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_posterior: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != "hypopinn-posterior v1") {
    throw std::runtime_error("load_posterior: bad magic in " + path);
  }
  double damping = 0.0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ls(line.substr(1));
      std::string tag;
      if (ls >> tag && tag == "damping") ls >> damping;
      continue;
    }
    break;
  }
  std::istringstream ws(line);
  std::vector<int> widths;
  int w;
  while (ws >> w) widths.push_back(w);
  NetworkSpec spec(widths);
  LaplacePosterior post{spec, {}, {}, damping};
  double mean, var;
  while (is >> mean >> var) {
    post.theta_map.push_back(mean);
    post.diag_variance.push_back(var);
  }
  if (post.theta_map.size() != spec.param_count()) {
    throw std::runtime_error("load_posterior: wrong entry count in " + path);
  }
  return post;
}

}  // namespace hypopinn
