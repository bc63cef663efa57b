#include "dseries/constructions.hpp"

#include <doctest.h>

#include <cmath>

using namespace dseries;

TEST_CASE("interval arithmetic rounds outward")
{
  auto const a = Interval::point(0.1), b = Interval::point(0.2);
  auto const s = a + b;
  CHECK(s.lo < 0.30000000000000004);
  CHECK(s.hi >= 0.30000000000000004);
  CHECK(s.lo <= 0.3);
  auto const d = b - a;
  CHECK(d.lo <= 0.1);
  CHECK(d.hi >= 0.1);
  auto const n = -Interval{1.0, 2.0};
  CHECK(n.lo == -2.0);
  CHECK(n.hi == -1.0);
  CHECK(Interval{-3.0, 1.0}.mag() == 3.0);
  CHECK_FALSE(Interval{-1e-300, 1.0}.positive());
  auto const w = Interval::around(1.0, 1e-10);
  CHECK(w.lo < 1.0 - 1e-10 * 0.999);
  CHECK(w.hi > 1.0 + 1e-10 * 0.999);
  auto acc = Interval::point(0);
  for (int i = 0; i < 10; ++i) { acc += Interval::point(0.1); }
  CHECK(acc.lo <= 1.0);
  CHECK(acc.hi >= 1.0);
}

TEST_CASE("base sequence")
{
  CHECK(alternating_base(1) == 0.0);
  CHECK(alternating_base(2) == doctest::Approx(1.0 / (std::sqrt(2.0) * std::log(2.0))));
}

TEST_CASE("two alternations")
{
  auto const r = construct_alternating_zeros(2);
  REQUIRE(r.complete);
  CHECK(r.achieved == 2);
  REQUIRE(r.steps.size() == 2);
  REQUIRE(r.zero_brackets.size() == 1);
  CHECK(r.steps[0].sign == 1);
  CHECK(r.steps[1].sign == -1);
  CHECK(r.zero_brackets[0].first == r.steps[1].sigma);
  CHECK(r.zero_brackets[0].second == r.steps[0].sigma);
  CHECK(r.breakpoints.front() == 2);

  for (auto const &step : r.steps) {
    CHECK(step.certified);
    CHECK(step.sigma > 0.5);
    CHECK(step.middle.positive());
    CHECK(step.middle.lo > step.head.mag() + step.tail.hi);
  }

  // f(sigma_k) by direct summation to 2e6 plus the crude tail sum_{n > M} n^{-sigma-1/2} / log M
  for (auto const &step : r.steps) {
    double const sigma = step.sigma;
    double f = 0;
    double const M = 2e6;
    for (std::uint64_t n = 2; n <= static_cast<std::uint64_t>(M); ++n) {
      f += r.coefficient(n) * std::pow(static_cast<double>(n), -sigma);
    }
    double const delta = sigma - 0.5;
    double const tail = std::pow(M, -delta) / (delta * std::log(M));
    CHECK(step.sign * f > tail);
  }

  CHECK(r.coefficients(10)[1] == std::complex<double>(0.0));
  CHECK(r.coefficients(10)[2].real() == doctest::Approx(alternating_base(2)));
  CHECK(r.coefficient(r.breakpoints[1]) == doctest::Approx(-alternating_base(r.breakpoints[1])));
}

TEST_CASE("three alternations toward one half")
{
  auto const r = construct_alternating_zeros(3, 10'000'000);
  REQUIRE(r.complete);
  CHECK(r.breakpoints.back() <= 10'000'000u);
  for (std::size_t k = 1; k < r.steps.size(); ++k) {
    CHECK(r.steps[k].sigma < r.steps[k - 1].sigma);
    CHECK(r.steps[k].sign == -r.steps[k - 1].sign);
    CHECK(r.breakpoints[k + 1] > r.breakpoints[k]);
  }
  CHECK(r.steps.back().sigma < 0.6);
  CHECK(r.zero_brackets.size() == 2);
}

TEST_CASE("resource cap gives a partial result")
{
  auto const r = construct_alternating_zeros(3, 1000);
  CHECK_FALSE(r.complete);
  CHECK(r.achieved < 3);
  CHECK(r.requested == 3);
  CHECK_THROWS_AS(construct_alternating_zeros(1), std::invalid_argument);
}

TEST_CASE("vanishing-infimum construction")
{
  FactorTable t(1'000'000);
  auto const r = construct_vanishing_infimum(1'000'000, t, 10000);
  CHECK(r.b.count(2) == 0);
  CHECK(r.b.count(3) == 0);
  CHECK(r.b.at(5).real() == doctest::Approx(std::pow(std::log(std::log(5.0)), -2.0 / 3.0) / std::sqrt(5.0)));
  for (auto const &[p, bp] : r.b) { CHECK(std::abs(bp) < 1.0); }

  REQUIRE(r.sum_sq_partial.size() >= 2);
  for (std::size_t i = 1; i < r.sum_sq_partial.size(); ++i) {
    CHECK(r.sum_sq_partial[i].second > r.sum_sq_partial[i - 1].second);
    CHECK(r.sum_sq_partial[i].first > r.sum_sq_partial[i - 1].first);
  }
  CHECK(r.last_increment < 1e-4);
  CHECK(r.sum_sq_partial.back().first == 1'000'000u);

  auto phi = [&](double s) {
    for (auto const &[sigma, v] : r.phi_on_axis) {
      if (sigma == s) { return v; }
    }
    return std::nan("");
  };
  CHECK(phi(0.51) > phi(0.6));
  CHECK(phi(0.6) > phi(0.8));
  for (std::size_t i = 1; i < r.phi_on_axis.size(); ++i) {
    CHECK(r.phi_on_axis[i].first < r.phi_on_axis[i - 1].first);
    CHECK(r.phi_on_axis[i].second > r.phi_on_axis[i - 1].second);
  }
  CHECK(r.phi_on_axis.back().first == doctest::Approx(0.501));

  CHECK(r.phi_spec.tail.kind == TailKind::ReciprocalTotallyMultiplicative);
  CHECK(r.big_phi_spec.tail.kind == TailKind::TotallyMultiplicative);
  CHECK(r.phi_spec.coeffs.size() == 10000);
  // phi and Phi are mutually inverse on the stored truncation
  auto const prod = convolve(r.phi_spec.coeffs, r.big_phi_spec.coeffs);
  for (Index n = 1; n <= prod.size(); ++n) { CHECK(std::abs(prod[n] - (n == 1 ? 1.0 : 0.0)) < 1e-12); }

  CHECK_THROWS_AS(construct_vanishing_infimum(4, t), std::invalid_argument);
}
