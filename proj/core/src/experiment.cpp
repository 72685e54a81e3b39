#include "hypopinn/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "hypopinn/analytic.hpp"
#include "hypopinn/field.hpp"
#include "hypopinn/fmm.hpp"
#include "hypopinn/laplace.hpp"
#include "hypopinn/locator.hpp"
#include "hypopinn/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace hypopinn {

namespace {

constexpr std::uint64_t kInitSeedOffset = 1;
constexpr std::uint64_t kCollocationSeedOffset = 2;
constexpr std::uint64_t kSampleSeedOffset = 3;
constexpr std::uint64_t kNoiseSeedOffset = 4;

std::string source_dir_name(std::size_t k) {
  std::ostringstream os;
  os << "source_" << std::setw(3) << std::setfill('0') << k;
  return os.str();
}

}  // namespace

void ExperimentConfig::set_master_seed(std::uint64_t seed) {
  master_seed = seed;
  train.init_seed = seed + kInitSeedOffset;
  train.collocation_seed = seed + kCollocationSeedOffset;
  train.noise_seed = seed + kNoiseSeedOffset;
}

ExperimentConfig ExperimentConfig::from_kv(const KeyValueConfig& kv) {
  ExperimentConfig c;
  c.model_type = kv.get_string("model.type");
  if (c.model_type == "constant") {
    c.model_v = kv.get_double("model.v");
  } else if (c.model_type == "linear_gradient") {
    c.model_v0 = kv.get_double("model.v0");
    c.model_gradient = kv.get_double("model.gradient");
  } else if (c.model_type == "layered") {
    c.layer_depths = kv.has("model.depths") ? kv.get_double_list("model.depths")
                                            : std::vector<double>{};
    c.layer_velocities = kv.get_double_list("model.velocities");
  } else {
    throw std::runtime_error("config: model.type must be constant, linear_gradient or layered");
  }
  c.domain = Domain2D(kv.get_double("domain.x_min"), kv.get_double("domain.x_max"),
                      kv.get_double("domain.z_min"), kv.get_double("domain.z_max"));
  c.nx = kv.get_int("grid.nx");
  c.nz = kv.get_int("grid.nz");
  if (c.nx < 2 || c.nz < 2) throw std::runtime_error("config: grid.nx/grid.nz must be >= 2");

  const int n_src = kv.get_int("source.count");
  if (n_src < 1) throw std::runtime_error("config: source.count must be >= 1");
  for (int k = 0; k < n_src; ++k) {
    const std::string prefix = "source." + std::to_string(k) + ".";
    Point s{kv.get_double(prefix + "x"), kv.get_double(prefix + "z")};
    if (!c.domain.contains(s)) {
      throw std::runtime_error("config: " + prefix + "x/z outside the domain");
    }
    c.sources.push_back(s);
  }
  c.receiver_count = kv.get_int("receivers.count");
  if (c.receiver_count < 1) throw std::runtime_error("config: receivers.count must be >= 1");

  const std::string oracle = kv.get_string("oracle", "analytic");
  if (oracle == "analytic") {
    c.oracle = OracleKind::Analytic;
  } else if (oracle == "fmm") {
    c.oracle = OracleKind::Fmm;
  } else {
    throw std::runtime_error("config: oracle must be analytic or fmm");
  }
  if (c.oracle == OracleKind::Analytic && c.model_type == "layered") {
    throw std::runtime_error("config: layered models have no analytic oracle; use oracle = fmm");
  }

  c.widths = kv.has("network.widths") ? kv.get_int_list("network.widths")
                                      : NetworkSpec::default_spec().widths;
  NetworkSpec(c.widths);  // validate early

  c.train.epochs = kv.get_int("train.epochs", 3000);
  c.train.lr = kv.get_double("train.lr", 1e-3);
  c.train.beta1 = kv.get_double("train.beta1", 0.9);
  c.train.beta2 = kv.get_double("train.beta2", 0.999);
  c.train.eps = kv.get_double("train.eps", 1e-8);
  c.train.prior_lambda = kv.get_double("train.prior_lambda", 1e-6);
  c.train.n_collocation = kv.get_int("train.collocation", 2500);
  c.train.init = init_scheme_from_string(kv.get_string("train.init", "kaiming_normal"));
  c.train.noise_std = kv.get_double("train.noise_std", 0.0);
  c.train.validate();

  c.n_samples = kv.get_int("laplace.samples", 1000);
  if (c.n_samples < 1) throw std::runtime_error("config: laplace.samples must be >= 1");
  c.damping = kv.get_double("laplace.damping", 1e-6);
  if (c.damping < 0.0) throw std::runtime_error("config: laplace.damping must be >= 0");

  c.set_master_seed(kv.get_u64("seed", 0));
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  return from_kv(KeyValueConfig::from_file(path));
}

void ExperimentConfig::echo(std::ostream& os) const {
  os << std::setprecision(17);
  os << "# resolved configuration, master seed " << master_seed << "\n";
  os << "model.type = " << model_type << "\n";
  if (model_type == "constant") {
    os << "model.v = " << model_v << "\n";
  } else if (model_type == "linear_gradient") {
    os << "model.v0 = " << model_v0 << "\n";
    os << "model.gradient = " << model_gradient << "\n";
  } else {
    os << "model.depths =";
    for (double d : layer_depths) os << " " << d;
    os << "\n";
    os << "model.velocities =";
    for (double v : layer_velocities) os << " " << v;
    os << "\n";
  }
  os << "domain.x_min = " << domain.x_min << "\n";
  os << "domain.x_max = " << domain.x_max << "\n";
  os << "domain.z_min = " << domain.z_min << "\n";
  os << "domain.z_max = " << domain.z_max << "\n";
  os << "grid.nx = " << nx << "\n";
  os << "grid.nz = " << nz << "\n";
  os << "source.count = " << sources.size() << "\n";
  for (std::size_t k = 0; k < sources.size(); ++k) {
    os << "source." << k << ".x = " << sources[k].x << "\n";
    os << "source." << k << ".z = " << sources[k].z << "\n";
  }
  os << "receivers.count = " << receiver_count << "\n";
  os << "oracle = " << (oracle == OracleKind::Analytic ? "analytic" : "fmm") << "\n";
  os << "network.widths =";
  for (int w : widths) os << " " << w;
  os << "\n";
  os << "train.epochs = " << train.epochs << "\n";
  os << "train.lr = " << train.lr << "\n";
  os << "train.beta1 = " << train.beta1 << "\n";
  os << "train.beta2 = " << train.beta2 << "\n";
  os << "train.eps = " << train.eps << "\n";
  os << "train.prior_lambda = " << train.prior_lambda << "\n";
  os << "train.collocation = " << train.n_collocation << "\n";
  os << "train.init = " << to_string(train.init) << "\n";
  os << "train.noise_std = " << train.noise_std << "\n";
  os << "laplace.samples = " << n_samples << "\n";
  os << "laplace.damping = " << damping << "\n";
  os << "seed = " << master_seed << "\n";
}

VelocityModel ExperimentConfig::make_model() const {
  if (model_type == "constant") {
    return VelocityModel(domain, ConstantVelocity{model_v});
  }
  if (model_type == "linear_gradient") {
    return VelocityModel(domain, LinearGradientVelocity{model_v0, model_gradient});
  }
  return build_layered(make_grid(), layer_depths, layer_velocities);
}

Grid2D ExperimentConfig::make_grid() const { return Grid2D(domain, nx, nz); }

bool ExperimentConfig::has_analytic_truth() const {
  return model_type == "constant" || model_type == "linear_gradient";
}

namespace {

/// Everything one source's pipeline needs, built once.
struct SourceContext {
  Point source;
  Grid2D grid;
  NetworkSpec spec;
  TraveltimeField truth;
  ReceiverSet obs;
  CollocationSet colloc;
};

TraveltimeField oracle_field(const ExperimentConfig& cfg, const VelocityModel& model,
                             const Grid2D& grid, Point source) {
  if (cfg.oracle == OracleKind::Fmm) {
    return fmm_solve(model, grid, source);
  }
  if (cfg.model_type == "constant") {
    return analytic_field_constant(cfg.model_v, source, grid);
  }
  return analytic_field_linear_gradient(cfg.model_v0, cfg.model_gradient, source, grid);
}

SourceContext build_source_context(const ExperimentConfig& cfg, const VelocityModel& model,
                                   Point source) {
  SourceContext ctx{source, cfg.make_grid(), cfg.make_spec(), {}, {}, {}};
  ctx.truth = oracle_field(cfg, model, ctx.grid, source);
  const ReceiverSet receivers = surface_receivers(cfg.domain, cfg.receiver_count);
  ctx.obs = sample_receivers(ctx.truth, receivers);
  if (cfg.train.noise_std > 0.0) {
    Rng rng(cfg.train.noise_seed);
    for (double& t : ctx.obs.times) t += cfg.train.noise_std * rng.normal();
  }
  ctx.colloc = sample_collocation(cfg.domain, cfg.train.n_collocation,
                                  cfg.train.collocation_seed);
  return ctx;
}

void write_observations(const std::string& path, const ReceiverSet& obs, std::uint64_t seed) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "# seed " << seed << "\n";
  os << "x_km,z_km,t_s\n" << std::setprecision(17);
  for (std::size_t k = 0; k < obs.positions.size(); ++k) {
    os << obs.positions[k].x << "," << obs.positions[k].z << "," << obs.times[k] << "\n";
  }
}

void write_loss_history(const std::string& path, const std::vector<LossBreakdown>& history,
                        std::uint64_t seed) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "# seed " << seed << "\n";
  os << "epoch,pde_loss,data_loss,prior_loss,total\n" << std::setprecision(17);
  for (std::size_t e = 0; e < history.size(); ++e) {
    const auto& h = history[e];
    os << (e + 1) << "," << h.pde_loss << "," << h.data_loss << "," << h.prior_loss << ","
       << h.total << "\n";
  }
}

void write_cloud_csv(const std::string& path, const std::vector<HypocenterEstimate>& estimates,
                     std::uint64_t seed) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "# seed " << seed << "\n";
  os << "realization,x_km,z_km,t_min_s,negative_min_flag\n" << std::setprecision(17);
  for (std::size_t k = 0; k < estimates.size(); ++k) {
    const auto& e = estimates[k];
    os << k << "," << e.location.x << "," << e.location.z << "," << e.min_traveltime << ","
       << (e.negative_minimum ? 1 : 0) << "\n";
  }
}

json summary_read_or_empty(const std::string& path) {
  std::ifstream is(path);
  if (!is) return json::object();
  json j;
  is >> j;
  return j;
}

void summary_write(const std::string& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << j.dump(2) << "\n";
}

void write_map_summary(const std::string& path, const ExperimentConfig& cfg,
                       const SourceContext& ctx, const HypocenterEstimate& est,
                       const LossBreakdown& final_loss) {
  json j = summary_read_or_empty(path);
  const LocationError err = locate_error(est, ctx.source);
  j["seed"] = cfg.master_seed;
  j["true_source"] = {ctx.source.x, ctx.source.z};
  j["map_location"] = {est.location.x, est.location.z};
  j["map_negative_min"] = est.negative_minimum;
  j["location_error_km"] = {{"dx", err.dx}, {"dz", err.dz}, {"euclidean", err.euclidean}};
  j["final_loss"] = {{"pde_loss", final_loss.pde_loss},
                     {"data_loss", final_loss.data_loss},
                     {"prior_loss", final_loss.prior_loss},
                     {"total", final_loss.total}};
  j["grid_spacing_km"] = {ctx.grid.hx(), ctx.grid.hz()};
  summary_write(path, j);
}

void write_cloud_summary(const std::string& path, const ExperimentConfig& cfg,
                         const HypocenterCloud& cloud) {
  json j = summary_read_or_empty(path);
  std::size_t negatives = 0;
  for (const auto& e : cloud.estimates) negatives += e.negative_minimum ? 1 : 0;
  j["seed"] = cfg.master_seed;
  j["cloud_mean"] = {cloud.mean.x, cloud.mean.z};
  j["cloud_std"] = {cloud.stddev.x, cloud.stddev.z};
  j["cloud_covariance"] = {{cloud.covariance[0], cloud.covariance[1]},
                           {cloud.covariance[2], cloud.covariance[3]}};
  j["negative_min_fraction"] =
      static_cast<double>(negatives) / static_cast<double>(cloud.estimates.size());
  summary_write(path, j);
}

void write_echo(const ExperimentConfig& cfg, const std::string& out_dir) {
  std::ofstream os(out_dir + "/config_echo.cfg");
  if (!os) throw std::runtime_error("cannot open " + out_dir + "/config_echo.cfg");
  cfg.echo(os);
}

/// Train one source and write its training-stage artifacts.
/// Returns the MAP parameters through `params_out`.
int train_source(const ExperimentConfig& cfg, const VelocityModel& model,
                 const SourceContext& ctx, const std::string& dir,
                 std::vector<double>& params_out) {
  write_observations(dir + "/observations.csv", ctx.obs, cfg.master_seed);
  save_field(dir + "/truth_field.txt",
             GridField{ctx.truth.grid, ctx.truth.values, ctx.source, cfg.master_seed});
  TrainResult result;
  try {
    result = train_map(cfg.train, ctx.spec, model, ctx.obs, ctx.colloc);
  } catch (const std::runtime_error& e) {
    std::cerr << "training failed: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  write_loss_history(dir + "/loss_history.csv", result.history, cfg.master_seed);
  save_params(dir + "/map_params.txt", ctx.spec, result.params_map, cfg.master_seed);

  NetworkEval eval(ctx.spec);
  TraveltimeField map_field = predict_field(eval, result.params_map, ctx.grid);
  map_field.source = ctx.source;
  save_field(dir + "/map_field.txt",
             GridField{map_field.grid, map_field.values, ctx.source, cfg.master_seed});
  const HypocenterEstimate est = locate(map_field);
  write_map_summary(dir + "/summary.json", cfg, ctx, est, result.history.back());
  params_out = std::move(result.params_map);
  return kExitOk;
}

/// Laplace stage for one source given its MAP parameters.
int laplace_source(const ExperimentConfig& cfg, const VelocityModel& model,
                   const SourceContext& ctx, std::span<const double> theta_map,
                   const std::string& dir) {
  PinnProblem problem(ctx.spec, model, ctx.colloc, ctx.obs, cfg.train.prior_lambda);
  const std::vector<double> fisher = diag_fisher(problem, theta_map);
  LaplacePosterior posterior{ctx.spec, {}, {}, cfg.damping};
  try {
    posterior =
        build_posterior(ctx.spec, theta_map, fisher, cfg.damping, cfg.train.prior_lambda);
  } catch (const std::runtime_error& e) {
    std::cerr << "laplace failed: " << e.what() << "\n";
    return kExitNumericalFailure;
  }
  save_posterior(dir + "/posterior.txt", posterior, cfg.master_seed);

  const std::uint64_t sample_seed = cfg.master_seed + kSampleSeedOffset;
  const auto samples = sample_params(posterior, cfg.n_samples, sample_seed);
  NetworkEval eval(ctx.spec);
  std::vector<HypocenterEstimate> estimates;
  estimates.reserve(samples.size());
  for (const auto& s : samples) {
    estimates.push_back(locate(predict_field(eval, s, ctx.grid)));
  }
  write_cloud_csv(dir + "/cloud.csv", estimates, cfg.master_seed);
  if (estimates.size() >= 2) {
    write_cloud_summary(dir + "/summary.json", cfg, cloud_stats(std::move(estimates)));
  }
  return kExitOk;
}

}  // namespace

int run_experiment(const ExperimentConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_echo(cfg, out_dir);
  const VelocityModel model = cfg.make_model();
  int status = kExitOk;
  for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
    const std::string dir = out_dir + "/" + source_dir_name(k);
    fs::create_directories(dir);
    const SourceContext ctx = build_source_context(cfg, model, cfg.sources[k]);
    std::vector<double> theta_map;
    int rc = train_source(cfg, model, ctx, dir, theta_map);
    if (rc != kExitOk) {
      status = rc;
      continue;
    }
    rc = laplace_source(cfg, model, ctx, theta_map, dir);
    if (rc != kExitOk) status = rc;
  }
  return status;
}

int run_train(const ExperimentConfig& cfg, const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_echo(cfg, out_dir);
  const VelocityModel model = cfg.make_model();
  int status = kExitOk;
  for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
    const std::string dir = out_dir + "/" + source_dir_name(k);
    fs::create_directories(dir);
    const SourceContext ctx = build_source_context(cfg, model, cfg.sources[k]);
    std::vector<double> theta_map;
    const int rc = train_source(cfg, model, ctx, dir, theta_map);
    if (rc != kExitOk) status = rc;
  }
  return status;
}

int run_laplace(const ExperimentConfig& cfg, const std::string& in_dir,
                const std::string& out_dir) {
  fs::create_directories(out_dir);
  write_echo(cfg, out_dir);
  const VelocityModel model = cfg.make_model();
  int status = kExitOk;
  for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
    const std::string src_name = source_dir_name(k);
    const std::string dir = out_dir + "/" + src_name;
    fs::create_directories(dir);
    auto [spec, theta_map] = load_params(in_dir + "/" + src_name + "/map_params.txt");
    if (spec.widths != cfg.widths) {
      std::cerr << "laplace: checkpoint widths disagree with config\n";
      return kExitConfigError;
    }
    const SourceContext ctx = build_source_context(cfg, model, cfg.sources[k]);
    const int rc = laplace_source(cfg, model, ctx, theta_map, dir);
    if (rc != kExitOk) status = rc;
  }
  return status;
}

int run_init_study(const ExperimentConfig& cfg, const std::vector<InitScheme>& schemes,
                   const std::string& out_dir) {
  if (schemes.empty()) throw std::invalid_argument("run_init_study: need >= 1 scheme");
  fs::create_directories(out_dir);
  write_echo(cfg, out_dir);
  const VelocityModel model = cfg.make_model();
  // The study compares initializers on the first source, with shared
  // collocation points and observations.
  const SourceContext ctx = build_source_context(cfg, model, cfg.sources[0]);
  write_observations(out_dir + "/observations.csv", ctx.obs, cfg.master_seed);

  std::ofstream report(out_dir + "/init_study.csv");
  if (!report) throw std::runtime_error("cannot open " + out_dir + "/init_study.csv");
  report << "# seed " << cfg.master_seed << "\n";
  report << "scheme,pde_loss,data_loss,prior_loss,total,x_km,z_km,t_min_s,"
            "err_x_km,err_z_km,err_euclid_km\n"
         << std::setprecision(17);

  int status = kExitOk;
  for (const InitScheme scheme : schemes) {
    ExperimentConfig scheme_cfg = cfg;
    scheme_cfg.train.init = scheme;
    TrainResult result;
    try {
      result = train_map(scheme_cfg.train, ctx.spec, model, ctx.obs, ctx.colloc);
    } catch (const std::runtime_error& e) {
      std::cerr << "init study (" << to_string(scheme) << "): " << e.what() << "\n";
      status = kExitNumericalFailure;
      continue;
    }
    NetworkEval eval(ctx.spec);
    TraveltimeField field = predict_field(eval, result.params_map, ctx.grid);
    field.source = ctx.source;
    save_field(out_dir + "/field_" + to_string(scheme) + ".txt",
               GridField{field.grid, field.values, ctx.source, cfg.master_seed});
    const HypocenterEstimate est = locate(field);
    const LocationError err = locate_error(est, ctx.source);
    const LossBreakdown& h = result.history.back();
    report << to_string(scheme) << "," << h.pde_loss << "," << h.data_loss << ","
           << h.prior_loss << "," << h.total << "," << est.location.x << "," << est.location.z
           << "," << est.min_traveltime << "," << err.dx << "," << err.dz << ","
           << err.euclidean << "\n";
  }
  return status;
}

int run_forward(const ExperimentConfig& cfg, const std::string& out_dir, int refine) {
  if (refine < 1) throw std::invalid_argument("run_forward: refine must be >= 1");
  fs::create_directories(out_dir);
  write_echo(cfg, out_dir);
  const VelocityModel model = cfg.make_model();
  for (std::size_t k = 0; k < cfg.sources.size(); ++k) {
    const std::string dir = out_dir + "/" + source_dir_name(k);
    fs::create_directories(dir);
    const Point source = cfg.sources[k];
    const Grid2D grid = cfg.make_grid();
    const TraveltimeField truth = oracle_field(cfg, model, grid, source);
    save_field(dir + "/truth_field.txt",
               GridField{truth.grid, truth.values, source, cfg.master_seed});
    const ReceiverSet receivers = surface_receivers(cfg.domain, cfg.receiver_count);
    write_observations(dir + "/observations.csv", sample_receivers(truth, receivers),
                       cfg.master_seed);

    auto linf_vs_analytic = [&](const TraveltimeField& f) {
      double linf = 0.0;
      for (int j = 0; j < f.grid.nz; ++j) {
        for (int i = 0; i < f.grid.nx; ++i) {
          const Point p = f.grid.node(i, j);
          const double exact = cfg.model_type == "constant"
                                   ? analytic_constant(cfg.model_v, source, p)
                                   : analytic_linear_gradient(cfg.model_v0, cfg.model_gradient,
                                                              source, p);
          linf = std::max(linf, std::abs(f.values[f.grid.flat(i, j)] - exact));
        }
      }
      return linf;
    };

    if (cfg.oracle == OracleKind::Fmm && cfg.has_analytic_truth()) {
      std::cout << source_dir_name(k) << " Linf(fmm - analytic) = " << linf_vs_analytic(truth)
                << " s at h = (" << grid.hx() << ", " << grid.hz() << ") km\n";
    }
    if (refine > 1) {
      const Grid2D fine(cfg.domain, (cfg.nx - 1) * refine + 1, (cfg.nz - 1) * refine + 1);
      const TraveltimeField fine_field = oracle_field(cfg, model, fine, source);
      save_field(dir + "/truth_field_refined.txt",
                 GridField{fine_field.grid, fine_field.values, source, cfg.master_seed});
      if (cfg.oracle == OracleKind::Fmm && cfg.has_analytic_truth()) {
        std::cout << source_dir_name(k)
                  << " Linf(fmm - analytic) = " << linf_vs_analytic(fine_field) << " s at h = ("
                  << fine.hx() << ", " << fine.hz() << ") km\n";
      }
    }
  }
  return kExitOk;
}

}  // namespace hypopinn
