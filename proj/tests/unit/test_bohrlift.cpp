#include "dseries/bohrlift.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace dseries;
using Poly = DirichletPoly<double>;

namespace {

// sum a_n prod phi(p)^nu over the trial-division factorization of n
cd eval_by_index(std::vector<cd> const &a, std::map<u64, cd> const &phi)
{
  cd total = 0;
  for (u64 n = 1; n < a.size(); ++n) {
    cd term = a[n];
    u64 m = n;
    for (u64 p = 2; p <= m && term != cd(0); ++p) {
      while (m % p == 0) {
        m /= p;
        auto const it = phi.find(p);
        term *= it == phi.end() ? cd(0) : it->second;
      }
    }
    total += term;
  }
  return total;
}

u64 largest_prime_factor(u64 n)
{
  u64 best = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      best = p;
      n /= p;
    }
  }
  return n > 1 ? n : best;
}

} // namespace

TEST_CASE("lift examples")
{
  FactorTable t(100);
  auto const unit = lift(Poly::unit(10), t);
  REQUIRE(unit.terms.size() == 1);
  CHECK(unit.terms.begin()->first.empty());
  CHECK(unit.terms.begin()->second == cd(1));
  CHECK(unit.prime_support.empty());

  auto const P = lift(Poly::from_list({1.0, 0.0, 0.0, 0.25}), t);
  CHECK(P.terms.size() == 2);
  CHECK(P.terms.at(MultiIndex{{{2, 2}}}) == cd(0.25));
  CHECK(P.prime_support == std::vector<u64>{2});

  FactorTable small(5);
  CHECK_THROWS_AS(lift(Poly(6), small), std::invalid_argument);
}

TEST_CASE("lift roundtrip")
{
  FactorTable t(10000);
  std::mt19937_64 rng(41);
  Poly f(oracle::random_coeffs(rng, 10000));
  CHECK(unlift(lift(f, t), 10000) == f);
  f[10000] = 0.0;
  CHECK(unlift(lift(f, t)).size() == 9999);
}

TEST_CASE("lift is a ring homomorphism on truncations")
{
  FactorTable t(30);
  std::mt19937_64 rng(42);
  for (Index N = 1; N <= 30; ++N) {
    Poly f(oracle::random_coeffs(rng, static_cast<std::size_t>(N)));
    Poly g(oracle::random_coeffs(rng, static_cast<std::size_t>(N)));
    auto const prod = unlift(multiply(lift(f, t), lift(g, t), static_cast<u64>(N)), N);
    auto const conv = convolve(f, g);
    for (Index n = 1; n <= N; ++n) { CHECK(std::abs(prod[n] - conv[n]) < 1e-12); }
  }
}

TEST_CASE("quasi-character evaluation")
{
  FactorTable t(5000);
  std::mt19937_64 rng(43);
  auto a = oracle::random_coeffs(rng, 5000);

  SUBCASE("zero point gives the constant term")
  {
    CHECK(eval_quasi(lift(Poly(a), t), QuasiCharacterPoint{}) == a[1]);
  }
  SUBCASE("special quasi-characters reproduce evaluation on smooth truncations")
  {
    u64 const p_max = 7;
    auto smooth = a;
    for (u64 n = 1; n < smooth.size(); ++n) {
      if (largest_prime_factor(n) > p_max) { smooth[n] = 0.0; }
    }
    cd const s(0.7, 3.1);
    auto const phi = QuasiCharacterPoint::from_s(s, t, p_max);
    CHECK(phi.values.size() == 4);
    auto const via_lift = eval_quasi(lift(Poly(a), t), phi);
    auto const direct = evaluate(Poly(smooth), s);
    CHECK(std::abs(via_lift - direct) < 1e-10 * std::max(1.0, std::abs(direct)));
  }
  SUBCASE("random points on three primes against per-index evaluation")
  {
    std::uniform_real_distribution<double> r(0.0, 0.95), ang(0.0, 2 * std::numbers::pi);
    auto const P = lift(Poly(a), t);
    for (int trial = 0; trial < 20; ++trial) {
      QuasiCharacterPoint phi;
      for (u64 p : {2, 5, 11}) { phi.values[p] = std::polar(r(rng), ang(rng)); }
      auto const v = eval_quasi(P, phi);
      auto const ref = eval_by_index(a, phi.values);
      CHECK(std::abs(v - ref) < 1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("point evaluation bound")
{
  CHECK(point_eval_bound(QuasiCharacterPoint{}).value == 1.0);
  QuasiCharacterPoint half{{{2, 0.5}}};
  CHECK(point_eval_bound(half).value == doctest::Approx(2.0 / std::sqrt(3.0)));
  QuasiCharacterPoint outside{{{2, 0.5}, {3, cd(0, 1)}}};
  CHECK_FALSE(outside.in_polydisk());
  CHECK_FALSE(point_eval_bound(outside).in_domain);
  CHECK(std::isinf(point_eval_bound(outside).value));

  FactorTable t(10000);
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> r(0.0, 0.99), ang(0.0, 2 * std::numbers::pi);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Poly f(oracle::random_coeffs(rng, 10000));
    QuasiCharacterPoint phi;
    for (u64 p : {2, 3, 5, 7}) { phi.values[p] = std::polar(r(rng), ang(rng)); }
    double const lhs = std::abs(eval_quasi(lift(f, t), phi));
    if (lhs > point_eval_bound(phi).value * norm_h(f) * (1 + 1e-12)) { ++violations; }
  }
  CHECK(violations == 0);
}

TEST_CASE("sup norm on the polytorus")
{
  FactorTable t(100);
  auto const kron = sup_norm_polytorus(lift(Poly::from_list({1.0, 0.3, 0.2}), t));
  CHECK(std::abs(kron.estimate - 1.5) < 1e-3);
  CHECK(kron.lower <= 1.5 + 1e-12);
  CHECK(kron.dimension == 2);

  auto const unit = sup_norm_polytorus(lift(Poly::unit(3), t));
  CHECK(unit.estimate == 1.0);
  CHECK(unit.lower == 1.0);

  auto const minus = sup_norm_polytorus(lift(Poly::from_list({1.0, -1.0}), t));
  CHECK(std::abs(minus.estimate - 2.0) < 1e-3);
}

TEST_CASE("prime-linear closed form")
{
  CHECK(prime_linear_sup_norm({}) == 1.0);
  CHECK(prime_linear_sup_norm({{2, 0.3}, {3, 0.2}}) == doctest::Approx(1.5));

  FactorTable t(100);
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> mag(0.0, 0.5), ang(0.0, 2 * std::numbers::pi);
  auto const &primes = t.primes();
  PrimeValues all;
  for (int i = 0; i < 10; ++i) { all[primes[static_cast<std::size_t>(i)]] = std::polar(mag(rng), ang(rng)); }
  // five of the ten, so the grid stays small
  PrimeValues sampled;
  for (auto it = all.begin(); sampled.size() < 5; std::advance(it, 2)) { sampled.insert(*it); }
  Poly f(30);
  f[1] = 1.0;
  for (auto const &[p, v] : sampled) { f[static_cast<Index>(p)] = v; }
  SupNormOptions opts;
  opts.resolution = 16;
  auto const r = sup_norm_polytorus(lift(f, t), opts);
  CHECK(std::abs(r.estimate - prime_linear_sup_norm(sampled)) < 1e-2);
}

TEST_CASE("grid lower bound is monotone on nested grids and respects triangle bounds")
{
  FactorTable t(100);
  auto const f = Poly::from_list({1.0, cd(0.2, 0.1), cd(-0.3, 0.05), 0.0, cd(0, 0.25)});
  auto const P = lift(f, t);
  double const closed = prime_linear_sup_norm({{2, cd(0.2, 0.1)}, {3, cd(-0.3, 0.05)}, {5, cd(0, 0.25)}});
  double prev = 0;
  for (int res : {16, 32, 64}) {
    SupNormOptions opts;
    opts.resolution = res;
    auto const r = sup_norm_polytorus(P, opts);
    CHECK(r.lower >= prev);
    CHECK(r.lower <= closed + 1e-12);
    prev = r.lower;
  }
  CHECK(closed - prev < 5e-3);

  std::mt19937_64 rng(46);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = oracle::random_coeffs(rng, 12);
    double l1 = 0;
    for (std::size_t n = 2; n < a.size(); ++n) { l1 += std::abs(a[n]); }
    SupNormOptions opts;
    opts.resolution = 24;
    auto const r = sup_norm_polytorus(lift(Poly(a), t), opts);
    CHECK(r.lower <= std::abs(a[1]) + l1 + 1e-12);
    CHECK(r.lower >= std::abs(a[1]) - l1 - 1e-12);
    CHECK(r.estimate >= r.lower);
  }
}

TEST_CASE("sup norm modes")
{
  FactorTable t(100);
  Poly f(29);
  f[1] = 1.0;
  PrimeValues pv;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
    f[static_cast<Index>(p)] = 0.05;
    pv[p] = 0.05;
  }
  auto const P = lift(f, t);
  SupNormOptions grid;
  grid.mode = SupNormMode::Grid;
  CHECK_THROWS_AS(sup_norm_polytorus(P, grid), std::invalid_argument);

  SupNormOptions multi;
  multi.mode = SupNormMode::MultiStart;
  multi.restarts = 16;
  multi.seed = 5;
  auto const r1 = sup_norm_polytorus(P, multi);
  CHECK(r1.mode == "multi-start");
  CHECK(std::abs(r1.estimate - prime_linear_sup_norm(pv)) < 1e-6);
  multi.threads = 4;
  auto const r4 = sup_norm_polytorus(P, multi);
  CHECK(r4.estimate == r1.estimate);
  CHECK(r4.argmax == r1.argmax);

  SupNormOptions threaded;
  threaded.threads = 3;
  auto const small = lift(Poly::from_list({1.0, 0.4, cd(0, 0.3), 0.1}), t);
  auto const g1 = sup_norm_polytorus(small);
  auto const g3 = sup_norm_polytorus(small, threaded);
  CHECK(g1.lower == g3.lower);
  CHECK(g1.argmax == g3.argmax);
}

TEST_CASE("Euler multiplier norms")
{
  auto const half = euler_multiplier_norm({{2, 0.5}});
  CHECK(half.forward == doctest::Approx(2.0));
  CHECK(half.reciprocal == doctest::Approx(1.5));
  auto const empty = euler_multiplier_norm({});
  CHECK(empty.forward == 1.0);
  CHECK(empty.reciprocal == 1.0);
  auto const big = euler_multiplier_norm({{3, 1.0}});
  CHECK_FALSE(big.forward_finite);
  CHECK(std::isinf(big.forward));

  // 3-prime sub-products of p^{-2} against the grid sup of the truncated lifted product
  u64 const N = 1 << 16;
  FactorTable t(N);
  PrimeValues sub;
  for (u64 p : {2, 3, 5}) { sub[p] = 1.0 / static_cast<double>(p * p); }
  auto const norms = euler_multiplier_norm(sub);
  Poly forward(extend_multiplicatively(sub, N, t));
  CHECK(std::abs(sup_norm_polytorus(lift(forward, t)).estimate - norms.forward) < 1e-2);
  Poly recip(N);
  for (Index n = 1; n <= static_cast<Index>(N); ++n) { recip[n] = forward[n] * static_cast<double>(oracle::mobius_trial(static_cast<u64>(n))); }
  CHECK(std::abs(sup_norm_polytorus(lift(recip, t)).estimate - norms.reciprocal) < 1e-2);

  PrimeValues all;
  for (u64 p : FactorTable(100).primes()) { all[p] = 1.0 / static_cast<double>(p * p); }
  double expect = 1;
  for (auto const &[p, v] : all) { expect /= 1.0 - v.real(); }
  CHECK(euler_multiplier_norm(all).forward == doctest::Approx(expect).epsilon(1e-12));
}
