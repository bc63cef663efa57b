#include "dseries/bohrlift.hpp"
#include "dseries/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dseries {

namespace {

constexpr int kMaxGridDimension = 8;

struct GridBest
{
  double value = -1;
  std::vector<int> index;
};

// Max of |P| over g_0 in [begin, end) of the uniform grid, visiting points in
// lexicographic order so that the first maximum seen is the smallest index.
GridBest scan_grid_block(CompiledPoly const &poly, int resolution, std::size_t begin, std::size_t end)
{
  int const d = poly.dimension();
  std::size_t const T = poly.num_terms();
  std::vector<cd> roots(static_cast<std::size_t>(resolution));
  for (int j = 0; j < resolution; ++j) { roots[static_cast<std::size_t>(j)] = std::polar(1.0, 2.0 * std::numbers::pi * j / resolution); }

  // level[k][t] = c_t * prod_{j<k} omega^{nu_tj g_j}
  std::vector<std::vector<cd>> level(static_cast<std::size_t>(d) + 1, std::vector<cd>(T));
  for (std::size_t t = 0; t < T; ++t) { level[0][t] = poly.coefficient(t); }

  GridBest best;
  std::vector<int> g(static_cast<std::size_t>(d), 0);
  auto apply = [&](int k) {
    auto &src = level[static_cast<std::size_t>(k)];
    auto &dst = level[static_cast<std::size_t>(k) + 1];
    for (std::size_t t = 0; t < T; ++t) {
      auto const e = static_cast<std::size_t>(poly.exponent(t, k));
      dst[t] = src[t] * roots[(e * static_cast<std::size_t>(g[static_cast<std::size_t>(k)])) % static_cast<std::size_t>(resolution)];
    }
  };

  for (std::size_t g0 = begin; g0 < end; ++g0) {
    g.assign(static_cast<std::size_t>(d), 0);
    g[0] = static_cast<int>(g0);
    for (int k = 0; k < d; ++k) { apply(k); }
    while (true) {
      cd sum = 0;
      for (auto const &v : level[static_cast<std::size_t>(d)]) { sum += v; }
      double const m = std::abs(sum);
      if (m > best.value) {
        best.value = m;
        best.index = g;
      }
      // odometer over coordinates 1..d-1
      int k = d - 1;
      while (k >= 1 && ++g[static_cast<std::size_t>(k)] == resolution) {
        g[static_cast<std::size_t>(k)] = 0;
        --k;
      }
      if (k < 1) { break; }
      for (int j = k; j < d; ++j) { apply(j); }
    }
  }
  return best;
}

double torus_value(CompiledPoly const &poly, std::vector<double> const &theta, std::vector<double> *grad)
{
  int const d = poly.dimension();
  cd P = 0;
  std::vector<cd> dP(static_cast<std::size_t>(d), cd(0));
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    double phase = 0;
    for (int k = 0; k < d; ++k) { phase += poly.exponent(t, k) * theta[static_cast<std::size_t>(k)]; }
    cd const v = poly.coefficient(t) * std::polar(1.0, phase);
    P += v;
    if (grad) {
      for (int k = 0; k < d; ++k) { dP[static_cast<std::size_t>(k)] += cd(0, poly.exponent(t, k)) * v; }
    }
  }
  if (grad) {
    grad->resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) { (*grad)[static_cast<std::size_t>(k)] = 2.0 * (std::conj(P) * dP[static_cast<std::size_t>(k)]).real(); }
  }
  return std::norm(P);
}

// Gradient ascent on |P|^2 with Armijo backtracking; returns the final |P|.
double local_ascent(CompiledPoly const &poly, std::vector<double> &theta)
{
  std::vector<double> grad, trial(theta.size()), trial_grad;
  double f = torus_value(poly, theta, &grad);
  double step = 1.0;
  for (int iter = 0; iter < 5000; ++iter) {
    double g2 = 0;
    for (double g : grad) { g2 += g * g; }
    if (g2 <= 1e-30 * std::max(f, 1e-300)) { break; }
    bool moved = false;
    while (step > 1e-16) {
      for (std::size_t k = 0; k < theta.size(); ++k) { trial[k] = theta[k] + step * grad[k]; }
      double const ft = torus_value(poly, trial, &trial_grad);
      if (ft >= f + 1e-4 * step * g2) {
        theta.swap(trial);
        grad.swap(trial_grad);
        double const gain = ft - f;
        f = ft;
        step *= 2.0;
        moved = gain > 1e-16 * f;
        break;
      }
      step *= 0.5;
    }
    if (!moved) { break; }
  }
  return std::sqrt(f);
}

} // namespace

SupNormResult sup_norm_polytorus(MultiIndexPoly const &P, SupNormOptions const &options)
{
  CompiledPoly const poly(P);
  int const d = poly.dimension();
  SupNormResult out;
  out.dimension = d;

  if (d == 0) {
    double const c = poly.num_terms() ? std::abs(poly.coefficient(0)) : 0.0;
    out.lower = out.estimate = c;
    out.mode = "exact";
    return out;
  }

  SupNormMode mode = options.mode;
  if (mode == SupNormMode::Auto) { mode = d <= kMaxGridDimension ? SupNormMode::Grid : SupNormMode::MultiStart; }

  if (mode == SupNormMode::Grid) {
    if (d > kMaxGridDimension) {
      throw std::invalid_argument("sup_norm_polytorus: grid mode supports at most 8 support primes (got " +
                                  std::to_string(d) + "); use multi-start mode");
    }
    if (options.resolution < 2) { throw std::invalid_argument("sup_norm_polytorus: resolution must be >= 2"); }
    int resolution = options.resolution;
    auto const points = [&](int r) { return std::pow(static_cast<double>(r), d); };
    while (resolution > 2 && points(resolution) > static_cast<double>(options.max_grid_points)) { --resolution; }
    out.resolution = resolution;
    out.mode = "grid";

    std::size_t const blocks = static_cast<std::size_t>(resolution);
    int const workers = std::max(1, options.threads);
    std::vector<GridBest> per_block(blocks);
    parallel_for(blocks, workers, [&](std::size_t begin, std::size_t end) {
      for (std::size_t b = begin; b < end; ++b) { per_block[b] = scan_grid_block(poly, resolution, b, b + 1); }
    });
    GridBest best;
    for (auto const &b : per_block) {
      if (b.value > best.value) { best = b; }
    }
    out.lower = best.value;
    out.argmax.resize(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      out.argmax[static_cast<std::size_t>(k)] = 2.0 * std::numbers::pi * best.index[static_cast<std::size_t>(k)] / resolution;
    }
    std::vector<double> theta = out.argmax;
    double const refined = local_ascent(poly, theta);
    if (refined > out.lower) {
      out.estimate = refined;
      out.argmax = theta;
    } else {
      out.estimate = out.lower;
    }
    return out;
  }

  out.mode = "multi-start";
  if (options.restarts < 1) { throw std::invalid_argument("sup_norm_polytorus: restarts must be >= 1"); }
  std::vector<std::vector<double>> starts(static_cast<std::size_t>(options.restarts), std::vector<double>(static_cast<std::size_t>(d)));
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (auto &s : starts) {
    for (auto &a : s) { a = angle(rng); }
  }
  std::vector<double> values(starts.size());
  parallel_for(starts.size(), options.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) { values[i] = local_ascent(poly, starts[i]); }
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) { best = i; }
  }
  // ascent endpoints are attained values, so they are lower bounds too
  out.lower = values[best];
  out.estimate = values[best];
  out.argmax = starts[best];
  return out;
}

} // namespace dseries
