#pragma once

#include "dseries/dirichlet_poly.hpp"
#include "dseries/numtheory.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace dseries {

/// Completely multiplicative unimodular function on the positive integers.
///
/// The angle at each prime is derived from (seed, p) by a counter-based hash,
/// so values do not depend on query order or thread count. Angles are
/// independent and uniform across primes, i.e. a Haar-random point of the
/// infinite torus. A flow time t shifts every angle by -t log p.
class Character
{
public:
  static Character sample(std::uint64_t seed);
  /// chi(n) = 1 for every n.
  static Character unit();

  std::optional<std::uint64_t> seed() const { return seed_; }
  double flow_time() const { return flow_time_; }

  /// Angle at prime p, reduced to [0, 2 pi).
  double angle(u64 p) const;
  std::complex<double> at_prime(u64 p) const;
  std::complex<double> value(u64 n, FactorTable const &table) const;
  /// chi(1..N) with slot 0 unused.
  std::vector<std::complex<double>> values_up_to(u64 N, FactorTable const &table) const;

  /// (T_t chi)(n) = n^{-it} chi(n).
  Character flowed(double t) const;

private:
  Character(std::optional<std::uint64_t> seed, double flow_time)
    : seed_(seed)
    , flow_time_(flow_time)
  {}

  double raw_angle(u64 p) const;

  std::optional<std::uint64_t> seed_;
  double flow_time_ = 0;
};

Character sample_character(std::uint64_t seed);
std::complex<double> char_value(Character const &chi, u64 n, FactorTable const &table);
Character kronecker_flow(Character const &chi, double t);

/// Seed of the i-th character of an experiment with the given master seed.
std::uint64_t character_seed(std::uint64_t master_seed, std::uint64_t index);

/// Coefficients a_n chi(n).
DirichletPoly<double> twist(DirichletPoly<double> const &f, Character const &chi, FactorTable const &table);

} // namespace dseries
