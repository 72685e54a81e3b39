#include "hypopinn/fmm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "hypopinn/analytic.hpp"

namespace hypopinn {

namespace {

enum class State : unsigned char { Far, Trial, Accepted };

struct HeapEntry {
  double t;
  std::size_t idx;
  bool operator>(const HeapEntry& o) const { return t > o.t; }
};

}  // namespace

TraveltimeField fmm_solve(const VelocityModel& model, const Grid2D& grid, Point source) {
  if (!grid.domain.contains(source)) {
    throw std::domain_error("fmm_solve: source outside domain");
  }
  const int nx = grid.nx;
  const int nz = grid.nz;
  const double hx = grid.hx();
  const double hz = grid.hz();
  const std::size_t n = grid.node_count();
  const double inf = std::numeric_limits<double>::infinity();

  std::vector<double> slowness(n);
  for (int j = 0; j < nz; ++j) {
    for (int i = 0; i < nx; ++i) {
      slowness[grid.flat(i, j)] = 1.0 / model.eval(grid.node(i, j));
    }
  }

  std::vector<double> t(n, inf);
  std::vector<State> state(n, State::Far);
  std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;

  // Seed the four corners of the source cell with local homogeneous times.
  int ci = std::min(static_cast<int>((source.x - grid.domain.x_min) / hx), nx - 2);
  int cj = std::min(static_cast<int>((source.z - grid.domain.z_min) / hz), nz - 2);
  ci = std::max(ci, 0);
  cj = std::max(cj, 0);
  for (int dj = 0; dj <= 1; ++dj) {
    for (int di = 0; di <= 1; ++di) {
      const int i = ci + di;
      const int j = cj + dj;
      const std::size_t idx = grid.flat(i, j);
      t[idx] = analytic_constant(1.0 / slowness[idx], source, grid.node(i, j));
      state[idx] = State::Accepted;
    }
  }

  // Upwind Godunov update from accepted neighbors only.
  auto update = [&](int i, int j) {
    const std::size_t idx = grid.flat(i, j);
    const double s = slowness[idx];
    double a = inf;  // best accepted x-neighbor
    double b = inf;  // best accepted z-neighbor
    if (i > 0 && state[grid.flat(i - 1, j)] == State::Accepted) a = t[grid.flat(i - 1, j)];
    if (i < nx - 1 && state[grid.flat(i + 1, j)] == State::Accepted)
      a = std::min(a, t[grid.flat(i + 1, j)]);
    if (j > 0 && state[grid.flat(i, j - 1)] == State::Accepted) b = t[grid.flat(i, j - 1)];
    if (j < nz - 1 && state[grid.flat(i, j + 1)] == State::Accepted)
      b = std::min(b, t[grid.flat(i, j + 1)]);

    double cand = inf;
    if (std::isfinite(a) && std::isfinite(b)) {
      // (T-a)^2/hx^2 + (T-b)^2/hz^2 = s^2, larger root
      const double ihx2 = 1.0 / (hx * hx);
      const double ihz2 = 1.0 / (hz * hz);
      const double A = ihx2 + ihz2;
      const double B = -2.0 * (a * ihx2 + b * ihz2);
      const double C = a * a * ihx2 + b * b * ihz2 - s * s;
      const double disc = B * B - 4.0 * A * C;
      if (disc >= 0.0) {
        const double root = (-B + std::sqrt(disc)) / (2.0 * A);
        if (root >= std::max(a, b)) cand = root;
      }
    }
    if (!std::isfinite(cand)) {
      if (std::isfinite(a)) cand = a + s * hx;
      if (std::isfinite(b)) cand = std::min(cand, b + s * hz);
    }
    if (cand < t[idx]) {
      t[idx] = cand;
      state[idx] = State::Trial;
      heap.push({cand, idx});
    }
  };

  auto update_neighbors = [&](int i, int j) {
    if (i > 0 && state[grid.flat(i - 1, j)] != State::Accepted) update(i - 1, j);
    if (i < nx - 1 && state[grid.flat(i + 1, j)] != State::Accepted) update(i + 1, j);
    if (j > 0 && state[grid.flat(i, j - 1)] != State::Accepted) update(i, j - 1);
    if (j < nz - 1 && state[grid.flat(i, j + 1)] != State::Accepted) update(i, j + 1);
  };

  for (int dj = 0; dj <= 1; ++dj) {
    for (int di = 0; di <= 1; ++di) update_neighbors(ci + di, cj + dj);
  }

  double last_accepted = 0.0;
  while (!heap.empty()) {
    const HeapEntry top = heap.top();
    heap.pop();
    if (state[top.idx] == State::Accepted || top.t != t[top.idx]) continue;  // stale
    state[top.idx] = State::Accepted;
    if (top.t < last_accepted - 1e-12) {
      throw std::logic_error("fmm_solve: acceptance order not monotone");
    }
    last_accepted = std::max(last_accepted, top.t);
    const int i = static_cast<int>(top.idx % nx);
    const int j = static_cast<int>(top.idx / nx);
    update_neighbors(i, j);
  }

  return TraveltimeField{grid, std::move(t), source};
}

TraveltimeField fmm_solve(const VelocityModel& model, Point source) {
  if (!model.is_gridded()) {
    throw std::invalid_argument("fmm_solve: model has no grid; pass one explicitly");
  }
  return fmm_solve(model, model.gridded().grid, source);
}

}  // namespace hypopinn
