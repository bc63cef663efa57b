#pragma once

#include "dseries/characters.hpp"
#include "dseries/dirichlet_poly.hpp"

#include <complex>
#include <cstdint>
#include <vector>

namespace dseries {

struct ExperimentConfig
{
  std::uint64_t master_seed = 0;
  int num_characters = 100;
  u64 n_max = 1u << 16;
  int threads = 1;
  /// Also record sup |S_N| at N_max/8, N_max/4, N_max/2, N_max.
  bool conjecture_mode = false;
};

struct CharacterRow
{
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  double exponent = 0;
  double residual = 0;
  double sup = 0;             ///< max_{N <= N_max} |S_N(chi)|
  double sup_normalized = 0;  ///< sup / (sqrt(N_max) log N_max)
  std::vector<double> sup_by_scale;  ///< conjecture mode only
};

struct KolmogorovCheck
{
  double level = 0;            ///< M
  double empirical = 0;        ///< fraction of characters with sup |S_N - a_1| >= M
  double bound = 0;            ///< M^{-2} sum |a_p|^2
  double standard_error = 0;   ///< binomial, evaluated at min(bound, 1)
  bool within = false;         ///< empirical <= bound + 3 standard errors
};

struct GrowthExperimentReport
{
  ExperimentConfig config;
  std::vector<CharacterRow> rows;
  std::vector<KolmogorovCheck> kolmogorov_bound_checks;  ///< prime-supported experiment only
  std::vector<u64> scales;                               ///< conjecture mode only

  std::vector<double> exponents() const;
  double median_exponent() const;
};

/// Partial sums of a_n chi(n) for independently sampled characters.
GrowthExperimentReport growth_experiment(DirichletPoly<double> const &f, ExperimentConfig const &config,
                                         FactorTable const &table);

/// Same for series supported on 1 and the primes, plus tail frequencies of
/// sup |S_N| against the maximal-inequality bound M^{-2} sum |a_p|^2 for
/// M in {1, 2, 4, 8}. Throws std::invalid_argument if a composite index
/// carries a nonzero coefficient.
GrowthExperimentReport prime_supported_experiment(DirichletPoly<double> const &f, ExperimentConfig const &config,
                                                  FactorTable const &table);

/// Rectangle sigma in [sigma_lo, sigma_hi], t in [t_lo, t_hi] sampled on an
/// n_sigma x n_t grid (endpoints included).
struct GridSpec
{
  double sigma_lo = 0.8;
  double sigma_hi = 2.0;
  double t_lo = -10;
  double t_hi = 10;
  int n_sigma = 13;
  int n_t = 41;

  std::vector<std::complex<double>> points() const;
};

struct ZetaChiReport
{
  double min_modulus = 1;                  ///< min over the grid of |prod_{p<=P}(1-chi(p)p^{-s})^{-1}|
  std::complex<double> argmin = 0;
  std::vector<u64> trace_cutoffs;          ///< P_max/8, P_max/4, P_max/2, P_max
  std::vector<double> trace_max_change;    ///< max over grid of |prod_P - prod_{P/2}|
  double inverse_consistency = 0;          ///< max |prod * sum_{n<=P} mu(n)chi(n)n^{-s} - 1|
};

/// Exploratory partial Euler products of zeta_chi on a grid in Re s > 1/2.
/// Nothing here certifies zero-freeness.
ZetaChiReport zeta_chi_explore(Character const &chi, double sigma_min, GridSpec const &grid, u64 p_max,
                               FactorTable const &table);

struct GrowthBoundReport
{
  double constant = 0;     ///< max of |f_chi(s) - a_1| sigma^{1/2} / (1 + |t|^{1/2})
  std::complex<double> argmax = 0;
  bool heuristic = false;  ///< grid reaches Re s <= 1/2, evaluated by Abel smoothing
  double abel_change = 0;  ///< max change between smoothing scales M and 2M (heuristic region only)
};

/// Grid points must satisfy Re s > 0.
GrowthBoundReport growth_bound_diagnostic(DirichletPoly<double> const &f, Character const &chi, GridSpec const &grid,
                                          FactorTable const &table);

} // namespace dseries
