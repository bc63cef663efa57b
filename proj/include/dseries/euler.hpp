#pragma once

#include "dseries/numtheory.hpp"

namespace dseries {

/// Closed-form H and H_d norms (squared) of a totally multiplicative series and
/// of its reciprocal sum mu(n) a_n n^{-s}, from the Euler products
///   prod (1-|a_p|^2)^{-1}, prod (1-|a_p|^2)^{-2}, prod (1+|a_p|^2), prod (1+2|a_p|^2).
/// Primes outside the map contribute a factor 1.
struct EulerNorms
{
  double norm_h_sq = 1;
  double norm_hd_sq = 1;
  double reciprocal_norm_h_sq = 1;
  double reciprocal_norm_hd_sq = 1;
  bool in_h = true;  ///< every |a_p| < 1 (finite support makes sum |a_p|^2 finite)
};

EulerNorms euler_norms(PrimeValues const &prime_values);

} // namespace dseries
