#include "dseries/carlson.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace dseries;
using Poly = DirichletPoly<double>;

TEST_CASE("unit series has mean one")
{
  for (double T : {0.5, 10.0, 1000.0}) {
    auto const r = carlson_mean(Poly::unit(4), 1.0, T);
    CHECK(r.closed_form_mean == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.quadrature_mean == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.cross_term_bound == 0.0);
  }
}

TEST_CASE("two-term series against the hand-expanded mean")
{
  // |1 + 2^{-sigma-it}|^2 averaged over [-T, T] = 1 + 4^{-sigma} + 2^{1-sigma} sin(T ln 2)/(T ln 2)
  auto const f = Poly::from_list({1.0, 1.0});
  for (double T : {1.0, 7.5, 100.0, 1e4}) {
    double const x = T * std::log(2.0);
    double const expect = 1.0 + 0.25 + 2.0 * 0.5 * std::sin(x) / x;
    auto const r = carlson_mean(f, 1.0, T);
    CHECK(r.closed_form_mean == doctest::Approx(expect).epsilon(1e-13));
    CHECK(std::abs(r.quadrature_mean - expect) < 1e-9);
    CHECK(r.target == doctest::Approx(1.25));
  }
  CHECK(std::abs(carlson_mean(f, 1.0, 1e7).closed_form_mean - 1.25) < 1e-6);
}

TEST_CASE("quadrature and closed form agree on random series")
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f(oracle::random_coeffs(rng, 20));
    auto const r = carlson_mean(f, 0.75, 1e3);
    CHECK(std::abs(r.quadrature_mean - r.closed_form_mean) < 1e-6);
    CHECK(std::abs(r.closed_form_mean - r.target) <= r.cross_term_bound);
  }
}

TEST_CASE("cross-term bound holds for every report")
{
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> sig(0.1, 2.0), tt(0.1, 200.0);
  for (int trial = 0; trial < 30; ++trial) {
    Poly f(oracle::random_coeffs(rng, 1 + rng() % 15));
    auto const r = carlson_mean(f, sig(rng), tt(rng));
    CHECK(std::abs(r.closed_form_mean - r.target) <= r.cross_term_bound * (1 + 1e-12) + 1e-14);
  }
}

TEST_CASE("invalid parameters")
{
  CHECK_THROWS_AS(carlson_mean(Poly::unit(2), 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(carlson_mean(Poly::unit(2), 1.0, -1.0), std::invalid_argument);
}
