#pragma once

#include "dseries/dirichlet_poly.hpp"
#include "dseries/numtheory.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace dseries {

using cd = std::complex<double>;

/// Power series in one variable per prime: the term for the multi-index of n
/// carries a_n, with z_p standing for p^{-s}.
struct MultiIndexPoly
{
  std::map<MultiIndex, cd> terms;
  std::vector<u64> prime_support;  ///< ascending

  /// Rebuild prime_support from the nonzero terms.
  void refresh_support();
  bool operator==(MultiIndexPoly const &) const = default;
};

MultiIndexPoly lift(DirichletPoly<double> const &f, FactorTable const &table);

/// Inverse of lift. `N` defaults to the largest index present.
DirichletPoly<double> unlift(MultiIndexPoly const &P, Index N);
DirichletPoly<double> unlift(MultiIndexPoly const &P);

/// Product of lifts keeping only monomials whose index is <= max_index.
MultiIndexPoly multiply(MultiIndexPoly const &P, MultiIndexPoly const &Q, u64 max_index);

/// Finitely supported point of the infinite polydisk: z_p = values[p], and
/// z_p = 0 for primes not listed.
struct QuasiCharacterPoint
{
  std::map<u64, cd> values;

  bool in_polydisk() const;
  /// phi_s(p) = p^{-s} for every prime p <= p_max.
  static QuasiCharacterPoint from_s(cd s, FactorTable const &table, u64 p_max);
};

cd eval_quasi(MultiIndexPoly const &P, QuasiCharacterPoint const &phi);

/// C(z) = prod (1 - |z_p|^2)^{-1/2}, so |Qf(z)| <= C(z) ||f||_H.
struct PointEvalBound
{
  double value = 1;
  bool in_domain = true;  ///< false when some |z_p| >= 1; value is then +inf
};

PointEvalBound point_eval_bound(QuasiCharacterPoint const &phi);

/// Dense exponent table for fast evaluation of a MultiIndexPoly at arbitrary
/// points of C^d, d = |prime_support|.
class CompiledPoly
{
public:
  explicit CompiledPoly(MultiIndexPoly const &P);

  int dimension() const { return static_cast<int>(primes_.size()); }
  std::vector<u64> const &primes() const { return primes_; }
  std::size_t num_terms() const { return coeffs_.size(); }
  cd coefficient(std::size_t t) const { return coeffs_[t]; }
  unsigned exponent(std::size_t t, int k) const { return exps_[t * primes_.size() + static_cast<std::size_t>(k)]; }
  unsigned max_exponent(int k) const;

  cd value(std::span<cd const> z) const;
  /// Value and partial derivatives d/dz_k.
  cd value_and_gradient(std::span<cd const> z, std::span<cd> grad) const;
  cd value_on_torus(std::span<double const> angles) const;

private:
  std::vector<u64> primes_;
  std::vector<cd> coeffs_;
  std::vector<unsigned> exps_;  // num_terms x dimension, row-major
};

enum class SupNormMode
{
  Auto,       ///< grid when dimension <= 8, multi-start otherwise
  Grid,
  MultiStart,
};

struct SupNormOptions
{
  SupNormMode mode = SupNormMode::Auto;
  int resolution = 64;                      ///< grid points per torus dimension
  std::uint64_t max_grid_points = 1ull << 26;
  int restarts = 64;                        ///< multi-start mode
  std::uint64_t seed = 0;
  int threads = 1;
};

/// Sup of |P| over the polytorus. `lower` is a value actually attained (a
/// lower bound for the sup norm of the Dirichlet series on Re s > 0);
/// `estimate` adds local ascent from the best sample and is heuristic.
struct SupNormResult
{
  double lower = 0;
  double estimate = 0;
  std::vector<double> argmax;  ///< angles per support prime
  int dimension = 0;
  int resolution = 0;          ///< grid resolution used (0 in multi-start mode)
  std::string mode;
};

SupNormResult sup_norm_polytorus(MultiIndexPoly const &P, SupNormOptions const &options = {});

/// ||1 + sum a_p p^{-s}||_inf = 1 + sum |a_p|.
double prime_linear_sup_norm(PrimeValues const &prime_coeffs);

/// Multiplier norms of the Euler product prod (1 - a_p p^{-s})^{-1} and of its
/// reciprocal: prod (1-|a_p|)^{-1} and prod (1+|a_p|).
struct MultiplierNorms
{
  double forward = 1;
  double reciprocal = 1;
  bool forward_finite = true;
};

MultiplierNorms euler_multiplier_norm(PrimeValues const &prime_values);

} // namespace dseries
