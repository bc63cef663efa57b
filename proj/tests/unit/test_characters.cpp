#include "dseries/carlson.hpp"
#include "dseries/characters.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <random>

using namespace dseries;
using Poly = DirichletPoly<double>;
using cd = std::complex<double>;

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

double angle_distance(double a, double b)
{
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

} // namespace

TEST_CASE("character axioms")
{
  FactorTable t(100);
  for (std::uint64_t seed : {0ull, 1ull, 99ull, 0xFFFFFFFFFFFFFFFFull}) {
    auto const chi = sample_character(seed);
    CHECK(char_value(chi, 1, t) == cd(1));
    CHECK(std::abs(char_value(chi, 12, t) - chi.at_prime(2) * chi.at_prime(2) * chi.at_prime(3)) < 1e-14);
    for (u64 n = 1; n <= 100; ++n) { CHECK(std::abs(std::abs(char_value(chi, n, t)) - 1.0) < 1e-15); }
  }
  CHECK_THROWS_AS(char_value(sample_character(1), 101, t), std::invalid_argument);
  CHECK(Character::unit().value(97, t) == cd(1));
}

TEST_CASE("character values are completely multiplicative")
{
  u64 const N = 10000;
  FactorTable t(N);
  for (std::uint64_t seed = 100; seed < 110; ++seed) {
    auto const v = sample_character(seed).values_up_to(N, t);
    double worst = 0;
    for (u64 m = 1; m <= N; ++m) {
      for (u64 n = 1; m * n <= N; ++n) { worst = std::max(worst, std::abs(v[m * n] - v[m] * v[n])); }
    }
    CHECK(worst < 1e-12);
  }
}

TEST_CASE("values do not depend on query order")
{
  FactorTable t(1000);
  auto const chi = sample_character(2024);
  auto const bulk = chi.values_up_to(1000, t);
  for (u64 n = 1000; n >= 1; --n) { CHECK(std::abs(chi.value(n, t) - bulk[n]) < 1e-13); }
  CHECK(sample_character(2024).angle(997) == chi.angle(997));
  CHECK(sample_character(2025).angle(997) != chi.angle(997));
}

TEST_CASE("angles at a fixed prime are uniform across seeds (Kolmogorov-Smirnov at 1%)")
{
  std::vector<double> u;
  for (std::uint64_t i = 0; i < 10000; ++i) { u.push_back(sample_character(character_seed(77, i)).angle(2) / kTwoPi); }
  std::sort(u.begin(), u.end());
  double D = 0;
  double const n = static_cast<double>(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    D = std::max({D, (i + 1) / n - u[i], u[i] - i / n});
  }
  CHECK(D * std::sqrt(n) < 1.628);
  CHECK(u.front() >= 0.0);
  CHECK(u.back() < 1.0);
}

TEST_CASE("Haar averages")
{
  FactorTable t(50);
  std::vector<cd> mean(51, 0.0);
  std::vector<double> modsq(51, 0.0);
  int const M = 10000;
  for (int i = 0; i < M; ++i) {
    auto const v = sample_character(character_seed(3, static_cast<std::uint64_t>(i))).values_up_to(50, t);
    for (u64 n = 1; n <= 50; ++n) {
      mean[n] += v[n] / static_cast<double>(M);
      modsq[n] += std::norm(v[n]) / M;
    }
  }
  CHECK(std::abs(mean[1] - 1.0) < 1e-12);
  for (u64 n = 2; n <= 50; ++n) {
    CHECK(std::abs(mean[n]) < 3e-2);
    CHECK(modsq[n] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("twist")
{
  FactorTable t(2000);
  std::mt19937_64 rng(51);
  Poly f(oracle::random_coeffs(rng, 2000));

  CHECK(twist(f, Character::unit(), t) == f);

  // chi(n) = n^{-i t0}: the twist is the vertical translate f(s + i t0)
  double const t0 = 2.75;
  auto const shifted = twist(f, Character::unit().flowed(t0), t);
  for (Index n = 1; n <= 2000; n += 37) {
    cd const expect = f[n] * std::polar(1.0, -t0 * std::log(static_cast<double>(n)));
    CHECK(std::abs(shifted[n] - expect) < 1e-12);
  }
  cd const s(1.3, -0.4);
  CHECK(std::abs(evaluate(shifted, s) - evaluate(f, s + cd(0, t0))) < 1e-10);

  for (int trial = 0; trial < 100; ++trial) {
    Poly g(oracle::random_coeffs(rng, 1 + rng() % 300));
    auto const chi = sample_character(rng());
    CHECK(norm_h(twist(g, chi, t)) == doctest::Approx(norm_h(g)).epsilon(1e-13));
  }
}

TEST_CASE("twist commutes with convolution")
{
  FactorTable t(50);
  std::mt19937_64 rng(52);
  for (Index N = 1; N <= 50; ++N) {
    Poly f(oracle::random_coeffs(rng, static_cast<std::size_t>(N)));
    Poly g(oracle::random_coeffs(rng, static_cast<std::size_t>(N)));
    auto const chi = sample_character(static_cast<std::uint64_t>(N));
    auto const lhs = twist(convolve(f, g), chi, t);
    auto const rhs = convolve(twist(f, chi, t), twist(g, chi, t));
    for (Index n = 1; n <= N; ++n) { CHECK(std::abs(lhs[n] - rhs[n]) < 1e-12); }
  }
}

TEST_CASE("Kronecker flow")
{
  FactorTable t(100);
  auto const chi = sample_character(8);
  auto const same = kronecker_flow(chi, 0.0);
  for (u64 n = 1; n <= 100; ++n) { CHECK(same.value(n, t) == chi.value(n, t)); }

  double const tt = 1.7;
  auto const moved = kronecker_flow(chi, tt);
  CHECK(std::abs(moved.value(4, t) - std::polar(1.0, -tt * std::log(4.0)) * chi.value(4, t)) < 1e-13);

  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> time(-50.0, 50.0);
  for (int trial = 0; trial < 50; ++trial) {
    double const a = time(rng), b = time(rng);
    auto const composed = kronecker_flow(kronecker_flow(chi, a), b);
    auto const direct = kronecker_flow(chi, a + b);
    for (u64 p : t.primes()) { CHECK(angle_distance(composed.angle(p), direct.angle(p)) < 1e-12); }
  }
}

TEST_CASE("flow average of |f_chi(sigma)|^2 approaches the diagonal sum")
{
  // trapezoid average over t in [-T, T] of |sum a_n (T_t chi)(n) n^{-sigma}|^2
  FactorTable t(2);
  auto const f = Poly::from_list({1.0, 1.0});
  auto const chi = sample_character(9);
  double const T = 1000, sigma = 1;
  int const steps = 400000;
  double acc = 0;
  for (int i = 0; i <= steps; ++i) {
    double const time = -T + 2 * T * i / steps;
    auto const g = twist(f, kronecker_flow(chi, time), t);
    double const w = (i == 0 || i == steps) ? 0.5 : 1.0;
    acc += w * std::norm(evaluate(g, cd(sigma)));
  }
  double const avg = acc / steps;
  auto const report = carlson_mean(f, sigma, T);
  CHECK(std::abs(avg - report.target) <= report.cross_term_bound + 1e-8);
}
