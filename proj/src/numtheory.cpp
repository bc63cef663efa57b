#include "dseries/numtheory.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace dseries {

FactorTable::FactorTable(u64 limit)
  : limit_(limit)
{
  if (limit == 0) { throw std::invalid_argument("factor table limit must be >= 1"); }
  if (limit > std::numeric_limits<std::uint32_t>::max()) {
    throw std::invalid_argument("factor table limit exceeds 32-bit sieve range");
  }
  spf_.assign(limit + 1, 0);
  mobius_.assign(limit + 1, 0);
  divisors_.assign(limit + 1, 0);
  // exponent of the smallest prime in n, needed for the divisor recurrence
  std::vector<std::uint8_t> spf_exp(limit + 1, 0);
  mobius_[1] = 1;
  divisors_[1] = 1;

  // Linear sieve: every composite is crossed out exactly once by its spf.
  for (u64 i = 2; i <= limit; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(i);
      mobius_[i] = -1;
      divisors_[i] = 2;
      spf_exp[i] = 1;
    }
    for (u64 p : primes_) {
      if (p > spf_[i] || p * i > limit) { break; }
      u64 const m = p * i;
      spf_[m] = static_cast<std::uint32_t>(p);
      if (p == spf_[i]) {
        mobius_[m] = 0;
        spf_exp[m] = static_cast<std::uint8_t>(spf_exp[i] + 1);
        // d(m) = d(i) * (e+2)/(e+1) where e is the exponent of p in i
        divisors_[m] = divisors_[i] / (spf_exp[i] + 1u) * (spf_exp[i] + 2u);
      } else {
        mobius_[m] = static_cast<std::int8_t>(-mobius_[i]);
        spf_exp[m] = 1;
        divisors_[m] = divisors_[i] * 2u;
      }
    }
  }
}

void FactorTable::check(u64 n) const
{
  if (n == 0 || n > limit_) {
    throw std::invalid_argument("index " + std::to_string(n) + " outside factor table [1, " +
                                std::to_string(limit_) + "]");
  }
}

u64 FactorTable::smallest_prime_factor(u64 n) const
{
  check(n);
  return spf_[n];
}

int FactorTable::mobius(u64 n) const
{
  check(n);
  return mobius_[n];
}

std::uint32_t FactorTable::divisor_count(u64 n) const
{
  check(n);
  return divisors_[n];
}

bool FactorTable::is_prime(u64 n) const
{
  check(n);
  return n > 1 && spf_[n] == n;
}

MultiIndex FactorTable::factorize(u64 n) const
{
  check(n);
  MultiIndex out;
  while (n > 1) {
    u64 const p = spf_[n];
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.exponents.emplace_back(p, e);
  }
  return out;
}

FactorTable build_factor_table(u64 limit) { return FactorTable(limit); }

MultiIndex to_multi_index(u64 n, FactorTable const &table) { return table.factorize(n); }

u64 from_multi_index(MultiIndex const &index)
{
  u64 n = 1;
  for (auto const &[p, e] : index.exponents) {
    for (unsigned k = 0; k < e; ++k) {
      if (n > std::numeric_limits<u64>::max() / p) { throw std::overflow_error("multi-index overflows u64"); }
      n *= p;
    }
  }
  return n;
}

std::vector<std::complex<double>> extend_multiplicatively(PrimeValues const &prime_values, u64 N,
                                                          FactorTable const &table)
{
  if (N == 0) { throw std::invalid_argument("extend_multiplicatively: N must be >= 1"); }
  if (N > table.limit()) { throw std::invalid_argument("extend_multiplicatively: N exceeds factor table"); }
  for (auto const &[p, v] : prime_values) {
    if (p > N || !table.is_prime(p)) {
      throw std::invalid_argument("extend_multiplicatively: key " + std::to_string(p) + " is not a prime <= N");
    }
  }
  std::vector<std::complex<double>> a(N + 1, 0.0);
  a[1] = 1.0;
  for (u64 n = 2; n <= N; ++n) {
    u64 const p = table.smallest_prime_factor(n);
    auto const it = prime_values.find(p);
    a[n] = it == prime_values.end() ? std::complex<double>{} : it->second * a[n / p];
  }
  return a;
}

std::vector<std::complex<double>> extend_multiplicatively(PrimeValues const &prime_values, u64 N)
{
  return extend_multiplicatively(prime_values, N, FactorTable(N));
}

} // namespace dseries
