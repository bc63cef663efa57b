#include "dseries/numtheory.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dseries;

TEST_CASE("sieve of size one")
{
  FactorTable t(1);
  CHECK(t.primes().empty());
  CHECK(t.mobius(1) == 1);
  CHECK(t.divisor_count(1) == 1);
  CHECK_THROWS_AS(FactorTable(0), std::invalid_argument);
}

TEST_CASE("small table values")
{
  auto t = build_factor_table(10);
  CHECK(t.mobius(6) == 1);
  CHECK(t.mobius(4) == 0);
  CHECK(t.divisor_count(6) == 4);
  CHECK(t.primes() == std::vector<u64>{2, 3, 5, 7});
  CHECK_THROWS_AS(t.mobius(11), std::invalid_argument);
  CHECK_THROWS_AS(t.mobius(0), std::invalid_argument);
}

TEST_CASE("mobius, divisor count and primality against trial division")
{
  FactorTable t(1'000'000);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<u64> pick(1, 1'000'000);
  for (int i = 0; i < 1000; ++i) {
    u64 const n = pick(rng);
    CHECK(t.mobius(n) == oracle::mobius_trial(n));
    CHECK(t.divisor_count(n) == oracle::divisors_trial(n));
    CHECK(t.is_prime(n) == oracle::is_prime_trial(n));
  }
  // Mertens function against the cumulative trial-division sum
  long long mertens = 0, oracle_mertens = 0;
  bool agree = true;
  for (u64 n = 1; n <= 1'000'000; ++n) {
    mertens += t.mobius(n);
    oracle_mertens += oracle::mobius_trial(n);
    agree = agree && mertens == oracle_mertens;
  }
  CHECK(agree);
  CHECK(mertens == 212);
  CHECK(t.primes().size() == 78498);
}

TEST_CASE("mobius inversion and divisor multiplicativity")
{
  FactorTable t(5000);
  for (u64 n = 1; n <= 5000; ++n) {
    int s = 0;
    for (u64 d = 1; d <= n; ++d) {
      if (n % d == 0) { s += t.mobius(d); }
    }
    CHECK(s == (n == 1 ? 1 : 0));
  }
  for (u64 m = 1; m <= 70; ++m) {
    for (u64 n = 1; m * n <= 5000; ++n) {
      CHECK(t.divisor_count(m * n) <= t.divisor_count(m) * t.divisor_count(n));
      if (std::gcd(m, n) == 1) { CHECK(t.divisor_count(m * n) == t.divisor_count(m) * t.divisor_count(n)); }
    }
  }
}

TEST_CASE("multi-index roundtrip")
{
  FactorTable t(1'000'000);
  CHECK(to_multi_index(1, t).empty());
  auto const twelve = to_multi_index(12, t);
  REQUIRE(twelve.exponents.size() == 2);
  CHECK(twelve.exponents[0] == std::pair<u64, unsigned>{2, 2});
  CHECK(twelve.exponents[1] == std::pair<u64, unsigned>{3, 1});
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<u64> pick(1, 1'000'000);
  for (int i = 0; i < 2000; ++i) {
    u64 const n = pick(rng);
    auto const mi = to_multi_index(n, t);
    CHECK(from_multi_index(mi) == n);
    for (auto const &[p, nu] : mi.exponents) { CHECK(oracle::is_prime_trial(p)); }
  }
  CHECK_THROWS_AS(to_multi_index(1'000'001, t), std::invalid_argument);
  MultiIndex huge{{{2, 64}}};
  CHECK_THROWS_AS(from_multi_index(huge), std::overflow_error);
}

TEST_CASE("multiplicative extension")
{
  auto a = extend_multiplicatively({{2, 0.5}}, 8);
  std::vector<std::complex<double>> expect{0, 1, 0.5, 0, 0.25, 0, 0, 0, 0.125};
  CHECK(a == expect);
  auto unit = extend_multiplicatively({}, 4);
  CHECK(unit == std::vector<std::complex<double>>{0, 1, 0, 0, 0});

  FactorTable t(20);
  PrimeValues pv;
  for (u64 p : t.primes()) { pv[p] = std::pow(static_cast<double>(p), -2.0); }
  auto z = extend_multiplicatively(pv, 20, t);
  for (u64 n = 1; n <= 20; ++n) { CHECK(z[n].real() == doctest::Approx(1.0 / static_cast<double>(n * n)).epsilon(1e-14)); }

  CHECK_THROWS_AS(extend_multiplicatively({{23, 0.5}}, 20, t), std::invalid_argument);
}

TEST_CASE("multiplicative extension is totally multiplicative")
{
  FactorTable t(2000);
  PrimeValues pv{{2, {0.3, 0.1}}, {3, {-0.2, 0.4}}, {5, 0.7}, {7, {0, -0.5}}, {13, 0.9}};
  auto a = extend_multiplicatively(pv, 2000, t);
  for (u64 m = 1; m <= 2000; ++m) {
    for (u64 n = 1; m * n <= 2000; ++n) { CHECK(std::abs(a[m * n] - a[m] * a[n]) <= 1e-15); }
  }
}
