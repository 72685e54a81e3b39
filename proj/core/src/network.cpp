#include "hypopinn/network.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "hypopinn/rng.hpp"

namespace hypopinn {

namespace {

// tanh(softplus(x)) and sigmoid(x) from a single exp. With u = e^x,
// tanh(log(1+u)) = ((1+u)^2 - 1)/((1+u)^2 + 1) = u(2+u)/(2 + u(2+u)),
// written so nothing cancels as u -> 0. Beyond |x| = 40 both branches of
// the quotient saturate past double precision.
struct TanhSpSig {
  double t;    // tanh(softplus(x))
  double sig;  // sigmoid(x)
};

TanhSpSig tanh_sp_sig(double x) {
  if (x > 40.0) return {1.0, 1.0};
  if (x < -40.0) return {0.0, 0.0};
  const double u = std::exp(x);
  const double n = u * (2.0 + u);
  return {n / (2.0 + n), u / (1.0 + u)};
}

}  // namespace

double mish(double x) { return x * tanh_sp_sig(x).t; }

MishValue mish_full(double x) {
  const auto [t, sig] = tanh_sp_sig(x);
  const double w = 1.0 - t * t;
  MishValue m;
  m.f = x * t;
  m.d1 = t + x * w * sig;
  m.d2 = 2.0 * w * sig + x * w * sig * ((1.0 - sig) - 2.0 * t * sig);
  return m;
}

NetworkSpec::NetworkSpec(std::vector<int> w) : widths(std::move(w)) {
  if (widths.size() < 2) throw std::invalid_argument("NetworkSpec: need >= 2 layers");
  if (widths.front() != 2) throw std::invalid_argument("NetworkSpec: input width must be 2");
  if (widths.back() != 1) throw std::invalid_argument("NetworkSpec: output width must be 1");
  for (int wi : widths) {
    if (wi < 1) throw std::invalid_argument("NetworkSpec: widths must be >= 1");
  }
}

std::size_t NetworkSpec::param_count() const {
  std::size_t n = 0;
  for (std::size_t l = 1; l < widths.size(); ++l) {
    n += static_cast<std::size_t>(widths[l - 1]) * widths[l] + widths[l];
  }
  return n;
}

InitScheme init_scheme_from_string(const std::string& s) {
  if (s == "xavier_normal") return InitScheme::XavierNormal;
  if (s == "xavier_uniform") return InitScheme::XavierUniform;
  if (s == "kaiming_normal") return InitScheme::KaimingNormal;
  if (s == "kaiming_uniform") return InitScheme::KaimingUniform;
  throw std::invalid_argument("unknown init scheme: " + s);
}

std::string to_string(InitScheme s) {
  switch (s) {
    case InitScheme::XavierNormal: return "xavier_normal";
    case InitScheme::XavierUniform: return "xavier_uniform";
    case InitScheme::KaimingNormal: return "kaiming_normal";
    case InitScheme::KaimingUniform: return "kaiming_uniform";
  }
  return "?";
}

std::vector<double> init_weights(const NetworkSpec& spec, InitScheme scheme,
                                 std::uint64_t seed) {
  std::vector<double> params(spec.param_count(), 0.0);
  Rng rng(seed);
  std::size_t off = 0;
  for (int l = 1; l <= spec.layer_count(); ++l) {
    const int fan_in = spec.widths[l - 1];
    const int fan_out = spec.widths[l];
    double scale = 0.0;
    bool uniform = false;
    switch (scheme) {
      case InitScheme::XavierNormal:
        scale = std::sqrt(2.0 / (fan_in + fan_out));
        break;
      case InitScheme::XavierUniform:
        scale = std::sqrt(6.0 / (fan_in + fan_out));
        uniform = true;
        break;
      case InitScheme::KaimingNormal:
        scale = std::sqrt(2.0 / fan_in);
        break;
      case InitScheme::KaimingUniform:
        scale = std::sqrt(6.0 / fan_in);
        uniform = true;
        break;
    }
    const std::size_t nw = static_cast<std::size_t>(fan_in) * fan_out;
    for (std::size_t k = 0; k < nw; ++k) {
      params[off + k] = uniform ? rng.uniform(-scale, scale) : scale * rng.normal();
    }
    off += nw + fan_out;  // biases stay zero
  }
  return params;
}

NetworkEval::NetworkEval(NetworkSpec spec) : spec_(std::move(spec)) {
  const int L = spec_.layer_count();
  w_off_.resize(L + 1);
  b_off_.resize(L + 1);
  std::size_t off = 0;
  act_.resize(L + 1);
  pre_.resize(L + 1);
  d1_.resize(L + 1);
  d2_.resize(L + 1);
  adj_.resize(L + 1);
  act_[0].resize(spec_.widths[0]);
  adj_[0].resize(spec_.widths[0]);
  int max_width = 0;
  for (int l = 1; l <= L; ++l) {
    const int fan_in = spec_.widths[l - 1];
    const int fan_out = spec_.widths[l];
    w_off_[l] = off;
    b_off_[l] = off + static_cast<std::size_t>(fan_in) * fan_out;
    off = b_off_[l] + fan_out;
    act_[l].resize(fan_out);
    pre_[l].resize(fan_out);
    d1_[l].resize(fan_out);
    d2_[l].resize(fan_out);
    adj_[l].resize(fan_out);
    max_width = std::max(max_width, fan_out);
  }
  scratch_.resize(2 * std::max(max_width, 2));
}

double NetworkEval::forward(std::span<const double> params, Point p) {
  const int L = spec_.layer_count();
  double* a = scratch_.data();
  double* u = scratch_.data() + scratch_.size() / 2;
  a[0] = p.x;
  a[1] = p.z;
  for (int l = 1; l <= L; ++l) {
    const int fan_in = spec_.widths[l - 1];
    const int fan_out = spec_.widths[l];
    const double* w = params.data() + w_off_[l];
    const double* b = params.data() + b_off_[l];
    for (int i = 0; i < fan_out; ++i) {
      double acc = b[i];
      const double* wi = w + static_cast<std::size_t>(i) * fan_in;
      for (int j = 0; j < fan_in; ++j) acc += wi[j] * a[j];
      u[i] = (l < L) ? mish(acc) : acc;
    }
    std::swap(a, u);
  }
  return a[0];
}

EvalResult NetworkEval::forward_grad(std::span<const double> params, Point p) {
  const int L = spec_.layer_count();
  act_[0][0] = {p.x, 1.0, 0.0};
  act_[0][1] = {p.z, 0.0, 1.0};
  for (int l = 1; l <= L; ++l) {
    const int fan_in = spec_.widths[l - 1];
    const int fan_out = spec_.widths[l];
    const double* w = params.data() + w_off_[l];
    const double* b = params.data() + b_off_[l];
    const Triple* ain = act_[l - 1].data();
    for (int i = 0; i < fan_out; ++i) {
      double acc = b[i];
      double adx = 0.0, adz = 0.0;
      const double* wi = w + static_cast<std::size_t>(i) * fan_in;
      for (int j = 0; j < fan_in; ++j) {
        acc += wi[j] * ain[j].v;
        adx += wi[j] * ain[j].dx;
        adz += wi[j] * ain[j].dz;
      }
      pre_[l][i] = {acc, adx, adz};
      if (l < L) {
        const MishValue m = mish_full(acc);
        d1_[l][i] = m.d1;
        d2_[l][i] = m.d2;
        act_[l][i] = {m.f, m.d1 * adx, m.d1 * adz};
      } else {
        act_[l][i] = pre_[l][i];
      }
    }
  }
  const Triple& out = act_[L][0];
  return {out.v, out.dx, out.dz};
}

void NetworkEval::backward(std::span<const double> params, double seed_t, double seed_dx,
                           double seed_dz, std::span<double> grad) {
  const int L = spec_.layer_count();
  adj_[L][0] = {seed_t, seed_dx, seed_dz};
  for (int l = L; l >= 1; --l) {
    const int fan_in = spec_.widths[l - 1];
    const int fan_out = spec_.widths[l];
    const double* w = params.data() + w_off_[l];
    double* gw = grad.data() + w_off_[l];
    double* gb = grad.data() + b_off_[l];
    const Triple* ain = act_[l - 1].data();
    Triple* aprev = adj_[l - 1].data();
    for (int j = 0; j < fan_in; ++j) aprev[j] = {0.0, 0.0, 0.0};
    for (int i = 0; i < fan_out; ++i) {
      Triple ub = adj_[l][i];
      if (l < L) {
        // through the activation: a.v = f(u.v), a.dx = f'(u.v) u.dx, ...
        const double d1 = d1_[l][i];
        const double d2 = d2_[l][i];
        const Triple u = pre_[l][i];
        const Triple ab = ub;
        ub.v = ab.v * d1 + d2 * (ab.dx * u.dx + ab.dz * u.dz);
        ub.dx = ab.dx * d1;
        ub.dz = ab.dz * d1;
      }
      const double* wi = w + static_cast<std::size_t>(i) * fan_in;
      double* gwi = gw + static_cast<std::size_t>(i) * fan_in;
      for (int j = 0; j < fan_in; ++j) {
        gwi[j] += ub.v * ain[j].v + ub.dx * ain[j].dx + ub.dz * ain[j].dz;
        aprev[j].v += wi[j] * ub.v;
        aprev[j].dx += wi[j] * ub.dx;
        aprev[j].dz += wi[j] * ub.dz;
      }
      gb[i] += ub.v;
    }
  }
}

void save_params(const std::string& path, const NetworkSpec& spec,
                 std::span<const double> params, std::optional<std::uint64_t> seed) {
  if (params.size() != spec.param_count()) {
    throw std::invalid_argument("save_params: length mismatch");
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("save_params: cannot open " + path);
  os << "hypopinn-params v1\n";
  if (seed) os << "# seed " << *seed << "\n";
  for (std::size_t k = 0; k < spec.widths.size(); ++k) {
    os << (k ? " " : "") << spec.widths[k];
  }
  os << "\n" << std::setprecision(17);
  for (double v : params) os << v << "\n";
}

std::pair<NetworkSpec, std::vector<double>> load_params(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("load_params: cannot open " + path);
  std::string line;
  if (!std::getline(is, line) || line != "hypopinn-params v1") {
    throw std::runtime_error("load_params: bad magic in " + path);
  }
  while (std::getline(is, line) && (line.empty() || line[0] == '#')) {
  }
  std::istringstream ws(line);
  std::vector<int> widths;
  int w;
  while (ws >> w) widths.push_back(w);
  NetworkSpec spec(widths);
  std::vector<double> params;
  params.reserve(spec.param_count());
  double v;
  while (is >> v) params.push_back(v);
  if (params.size() != spec.param_count()) {
    throw std::runtime_error("load_params: expected " + std::to_string(spec.param_count()) +
                             " values, got " + std::to_string(params.size()));
  }
  return {spec, std::move(params)};
}

}  // namespace hypopinn
