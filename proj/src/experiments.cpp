#include "dseries/experiments.hpp"
#include "dseries/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dseries {

std::vector<double> GrowthExperimentReport::exponents() const
{
  std::vector<double> out;
  out.reserve(rows.size());
  for (auto const &r : rows) { out.push_back(r.exponent); }
  return out;
}

double GrowthExperimentReport::median_exponent() const
{
  auto e = exponents();
  if (e.empty()) { return 0; }
  std::sort(e.begin(), e.end());
  std::size_t const m = e.size() / 2;
  return e.size() % 2 ? e[m] : 0.5 * (e[m - 1] + e[m]);
}

namespace {

std::vector<u64> conjecture_scales(u64 n_max)
{
  std::vector<u64> s;
  for (u64 d : {8u, 4u, 2u, 1u}) {
    if (n_max / d >= 1) { s.push_back(n_max / d); }
  }
  return s;
}

CharacterRow run_character(DirichletPoly<double> const &f, ExperimentConfig const &config, FactorTable const &table,
                           std::uint64_t index, std::vector<u64> const &scales, bool centered)
{
  CharacterRow row;
  row.index = index;
  row.seed = character_seed(config.master_seed, index);
  auto const chi = Character::sample(row.seed).values_up_to(config.n_max, table);
  auto const points = dyadic_points(static_cast<Index>(config.n_max));
  std::vector<double> mags;
  mags.reserve(points.size());
  std::complex<double> S = 0;
  std::size_t next_point = 0, next_scale = 0;
  double sup = 0;
  std::complex<double> const shift = centered ? f[1] : std::complex<double>(0);
  for (u64 n = 1; n <= config.n_max; ++n) {
    S += f[static_cast<Index>(n)] * chi[n];
    sup = std::max(sup, std::abs(S - shift));
    if (next_point < points.size() && static_cast<Index>(n) == points[next_point]) {
      mags.push_back(std::abs(S));
      ++next_point;
    }
    if (next_scale < scales.size() && n == scales[next_scale]) {
      row.sup_by_scale.push_back(sup);
      ++next_scale;
    }
  }
  auto const fit = fit_growth_exponent(points, mags);
  row.exponent = fit.estimate;
  row.residual = fit.residual;
  row.sup = sup;
  double const N = static_cast<double>(config.n_max);
  row.sup_normalized = N > 1 ? sup / (std::sqrt(N) * std::log(N)) : sup;
  return row;
}

GrowthExperimentReport run_experiment(DirichletPoly<double> const &f, ExperimentConfig const &config,
                                      FactorTable const &table, bool centered)
{
  if (config.num_characters < 1) { throw std::invalid_argument("experiment: num_characters must be >= 1"); }
  if (config.n_max < 1 || static_cast<u64>(f.size()) < config.n_max) {
    throw std::invalid_argument("experiment: series length must be >= N_max");
  }
  if (config.n_max > table.limit()) { throw std::invalid_argument("experiment: N_max exceeds factor table"); }
  GrowthExperimentReport report;
  report.config = config;
  if (config.conjecture_mode) { report.scales = conjecture_scales(config.n_max); }
  report.rows.resize(static_cast<std::size_t>(config.num_characters));
  parallel_for(report.rows.size(), config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) { report.rows[i] = run_character(f, config, table, i, report.scales, centered); }
  });
  return report;
}

} // namespace

GrowthExperimentReport growth_experiment(DirichletPoly<double> const &f, ExperimentConfig const &config,
                                         FactorTable const &table)
{
  return run_experiment(f, config, table, false);
}

GrowthExperimentReport prime_supported_experiment(DirichletPoly<double> const &f, ExperimentConfig const &config,
                                                  FactorTable const &table)
{
  if (static_cast<u64>(f.size()) > table.limit()) { throw std::invalid_argument("experiment: factor table too small"); }
  double variance = 0;
  for (Index n = 2; n <= f.size(); ++n) {
    if (f[n] == std::complex<double>(0)) { continue; }
    if (!table.is_prime(static_cast<u64>(n))) {
      throw std::invalid_argument("prime_supported_experiment: nonzero coefficient at composite index " + std::to_string(n));
    }
    if (static_cast<u64>(n) <= config.n_max) { variance += std::norm(f[n]); }
  }
  auto report = run_experiment(f, config, table, true);
  double const count = static_cast<double>(report.rows.size());
  for (double M : {1.0, 2.0, 4.0, 8.0}) {
    KolmogorovCheck check;
    check.level = M;
    // sup was taken over |S_N - a_1|, the sum of the independent prime terms
    check.empirical = static_cast<double>(std::count_if(report.rows.begin(), report.rows.end(),
                                                        [M](CharacterRow const &r) { return r.sup >= M; })) /
                      count;
    check.bound = variance / (M * M);
    double const p = std::min(check.bound, 1.0);
    check.standard_error = std::sqrt(p * (1.0 - p) / count);
    check.within = check.empirical <= check.bound + 3.0 * check.standard_error;
    report.kolmogorov_bound_checks.push_back(check);
  }
  return report;
}

std::vector<std::complex<double>> GridSpec::points() const
{
  if (n_sigma < 1 || n_t < 1) { throw std::invalid_argument("grid: sizes must be >= 1"); }
  std::vector<std::complex<double>> pts;
  pts.reserve(static_cast<std::size_t>(n_sigma) * static_cast<std::size_t>(n_t));
  for (int i = 0; i < n_sigma; ++i) {
    double const s = n_sigma == 1 ? sigma_lo : sigma_lo + (sigma_hi - sigma_lo) * i / (n_sigma - 1);
    for (int j = 0; j < n_t; ++j) {
      double const t = n_t == 1 ? t_lo : t_lo + (t_hi - t_lo) * j / (n_t - 1);
      pts.emplace_back(s, t);
    }
  }
  return pts;
}

ZetaChiReport zeta_chi_explore(Character const &chi, double sigma_min, GridSpec const &grid, u64 p_max,
                               FactorTable const &table)
{
  if (!(sigma_min > 0.5)) { throw std::invalid_argument("zeta_chi_explore: sigma_min must exceed 1/2"); }
  if (grid.sigma_lo < sigma_min || grid.sigma_hi < grid.sigma_lo) {
    throw std::invalid_argument("zeta_chi_explore: grid must lie in Re s >= sigma_min > 1/2");
  }
  if (p_max > table.limit()) { throw std::invalid_argument("zeta_chi_explore: P_max exceeds factor table"); }

  auto const pts = grid.points();
  ZetaChiReport report;
  for (u64 d : {8u, 4u, 2u, 1u}) {
    if (p_max / d >= 2) { report.trace_cutoffs.push_back(p_max / d); }
  }
  report.trace_max_change.assign(report.trace_cutoffs.size(), 0.0);
  auto const chi_n = p_max >= 1 ? chi.values_up_to(p_max, table) : std::vector<std::complex<double>>{};

  report.min_modulus = std::numeric_limits<double>::infinity();
  for (auto const s : pts) {
    // log of prod (1 - chi(p) p^{-s})^{-1}, recorded at each cutoff
    std::complex<double> log_prod = 0;
    std::vector<std::complex<double>> at_cutoff;
    std::size_t c = 0;
    for (u64 p : table.primes()) {
      if (p > p_max) { break; }
      while (c < report.trace_cutoffs.size() && p > report.trace_cutoffs[c]) {
        at_cutoff.push_back(std::exp(log_prod));
        ++c;
      }
      log_prod -= std::log(1.0 - chi_n[p] * std::exp(-s * std::log(static_cast<double>(p))));
    }
    std::complex<double> const prod = std::exp(log_prod);
    while (c < report.trace_cutoffs.size()) {
      at_cutoff.push_back(prod);
      ++c;
    }
    for (std::size_t k = 1; k < at_cutoff.size(); ++k) {
      report.trace_max_change[k] = std::max(report.trace_max_change[k], std::abs(at_cutoff[k] - at_cutoff[k - 1]));
    }

    double const m = std::abs(prod);
    if (m < report.min_modulus) {
      report.min_modulus = m;
      report.argmin = s;
    }

    if (p_max >= 1) {
      std::complex<double> inv = 0;
      for (u64 n = 1; n <= p_max; ++n) {
        int const mu = table.mobius(n);
        if (mu == 0) { continue; }
        inv += static_cast<double>(mu) * chi_n[n] * std::exp(-s * std::log(static_cast<double>(n)));
      }
      report.inverse_consistency = std::max(report.inverse_consistency, std::abs(prod * inv - 1.0));
    }
  }
  return report;
}

GrowthBoundReport growth_bound_diagnostic(DirichletPoly<double> const &f, Character const &chi, GridSpec const &grid,
                                          FactorTable const &table)
{
  if (!(grid.sigma_lo > 0)) { throw std::invalid_argument("growth_bound_diagnostic: grid must lie in Re s > 0"); }
  auto const g = twist(f, chi, table);
  Index const N = g.size();
  GrowthBoundReport report;
  auto const pts = grid.points();
  std::vector<double> logs(static_cast<std::size_t>(N) + 1, 0.0);
  for (Index n = 1; n <= N; ++n) { logs[static_cast<std::size_t>(n)] = std::log(static_cast<double>(n)); }

  auto smoothed = [&](std::complex<double> s, double M) {
    std::complex<double> v = 0;
    for (Index n = 2; n <= N; ++n) {
      if (g[n] == std::complex<double>(0)) { continue; }
      double const damp = M > 0 ? std::exp(-static_cast<double>(n) / M) : 1.0;
      v += g[n] * damp * std::exp(-s * logs[static_cast<std::size_t>(n)]);
    }
    return v;  // f_chi(s) - a_1
  };

  for (auto const s : pts) {
    std::complex<double> v;
    if (s.real() > 0.5) {
      v = smoothed(s, 0.0);
    } else {
      report.heuristic = true;
      double const M = std::max(1.0, static_cast<double>(N) / 8.0);
      v = smoothed(s, 2.0 * M);
      report.abel_change = std::max(report.abel_change, std::abs(v - smoothed(s, M)));
    }
    double const ratio = std::abs(v) * std::sqrt(s.real()) / (1.0 + std::sqrt(std::abs(s.imag())));
    if (ratio > report.constant) {
      report.constant = ratio;
      report.argmax = s;
    }
  }
  return report;
}

} // namespace dseries
