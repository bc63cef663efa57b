#pragma once

#include "dseries/dilation.hpp"
#include "dseries/numtheory.hpp"

#include <utility>
#include <vector>

namespace dseries {

/// Closed interval of doubles; sums round outward.
struct Interval
{
  double lo = 0;
  double hi = 0;

  static Interval point(double v) { return {v, v}; }
  /// [v (1 - rel), v (1 + rel)] widened by one ulp on each side.
  static Interval around(double v, double rel);

  Interval operator+(Interval const &o) const;
  Interval operator-(Interval const &o) const;
  Interval operator-() const { return {-hi, -lo}; }
  Interval &operator+=(Interval const &o) { return *this = *this + o; }
  /// Upper bound for |x| over the interval.
  double mag() const;
  bool positive() const { return lo > 0; }
};

/// One block of the alternating construction, certified at sigma:
/// |head| + tail < middle, so sign f(sigma) = (-1)^k.
struct AlternationStep
{
  int k = 0;
  u64 block_begin = 0;  ///< n_k
  u64 block_end = 0;    ///< n_{k+1} (exclusive)
  double sigma = 0;
  Interval middle;      ///< sum_{n_k <= n < n_{k+1}} n^{-sigma} b_n
  Interval head;        ///< signed contribution of n < n_k
  Interval tail;        ///< bound for sum_{n >= n_{k+1}} n^{-sigma} b_n
  int sign = 0;
  bool certified = false;
};

struct AlternatingZerosResult
{
  std::vector<u64> breakpoints;  ///< n_0 < n_1 < ... ; block k is [n_k, n_{k+1})
  std::vector<AlternationStep> steps;
  int requested = 0;
  int achieved = 0;              ///< certified sign alternations
  bool complete = false;
  /// (sigma_{k+1}, sigma_k): f has a zero in each interval.
  std::vector<std::pair<double, double>> zero_brackets;

  /// a_n = (-1)^k b_n for n in block k; the last block extends to infinity.
  double coefficient(u64 n) const;
  /// a_1..a_N.
  DirichletPoly<double> coefficients(u64 N) const;
};

/// b_n = n^{-1/2} / log n for n >= 2, b_1 = 0.
double alternating_base(u64 n);

/// Greedy block selection: sigma_0 = 2, then for each k the gap sigma - 1/2
/// is halved until a block end n_{k+1} <= tail_cap certifies the sign. The
/// tail beyond n_{k+1} is bounded by the integral
/// int_{n_{k+1}-1}^inf x^{-sigma-1/2} / log x dx = E1((sigma - 1/2) log(n_{k+1} - 1)).
/// Stops early, with complete = false, if tail_cap is reached.
AlternatingZerosResult construct_alternating_zeros(int K, u64 tail_cap = 10'000'000);

struct VanishingInfimumResult
{
  PrimeValues b;                  ///< b_p for 5 <= p <= P_max
  SineSystemSpec phi_spec;        ///< S(phi) = 1/Phi
  SineSystemSpec big_phi_spec;    ///< Phi = sum b_n n^{-s}, totally multiplicative
  std::vector<std::pair<u64, double>> sum_sq_partial;  ///< (P, sum_{p<=P} b_p^2)
  double last_increment = 0;                           ///< b_p^2 at the largest prime
  std::vector<std::pair<double, double>> phi_on_axis;  ///< (sigma, Phi(sigma)), sigma decreasing
};

/// b_p = p^{-1/2} (log log p)^{-2/3} for primes 5 <= p <= P_max, b_2 = b_3 = 0,
/// extended multiplicatively. Phi(sigma) is the Euler product over p <= P_max.
VanishingInfimumResult construct_vanishing_infimum(u64 P_max, FactorTable const &table, u64 coefficient_length = 0);

} // namespace dseries
