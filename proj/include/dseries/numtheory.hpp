#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dseries {

using u64 = std::uint64_t;

/// Prime factorization n = prod p^nu as (p, nu) pairs sorted by p.
/// The empty index is n = 1.
struct MultiIndex
{
  std::vector<std::pair<u64, unsigned>> exponents;

  bool empty() const { return exponents.empty(); }
  auto operator<=>(MultiIndex const &) const = default;
};

/// Smallest-prime-factor sieve with Mobius and divisor-count tables up to a
/// fixed limit. Immutable after construction; safe to share between threads.
class FactorTable
{
public:
  explicit FactorTable(u64 limit);

  u64 limit() const { return limit_; }
  u64 smallest_prime_factor(u64 n) const;
  int mobius(u64 n) const;
  std::uint32_t divisor_count(u64 n) const;
  bool is_prime(u64 n) const;
  std::vector<u64> const &primes() const { return primes_; }

  MultiIndex factorize(u64 n) const;

private:
  void check(u64 n) const;

  u64 limit_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::int8_t> mobius_;
  std::vector<std::uint32_t> divisors_;
  std::vector<u64> primes_;
};

FactorTable build_factor_table(u64 limit);

MultiIndex to_multi_index(u64 n, FactorTable const &table);

/// Throws std::overflow_error if the product leaves the 64-bit range.
u64 from_multi_index(MultiIndex const &index);

using PrimeValues = std::map<u64, std::complex<double>>;

/// Totally multiplicative sequence a_1..a_N (slot 0 unused, zero) with
/// a_p = prime_values[p]; unlisted primes map to 0.
std::vector<std::complex<double>> extend_multiplicatively(PrimeValues const &prime_values, u64 N,
                                                          FactorTable const &table);
std::vector<std::complex<double>> extend_multiplicatively(PrimeValues const &prime_values, u64 N);

} // namespace dseries
