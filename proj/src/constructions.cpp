#include "dseries/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace dseries {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTermRel = 8.0 * std::numeric_limits<double>::epsilon();
constexpr double kTailRel = 1e-10;

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

Interval term(u64 n, double sigma)
{
  double const ln = std::log(static_cast<double>(n));
  return Interval::around(std::exp(-(sigma + 0.5) * ln) / ln, kTermRel);
}

// E1(delta log(m - 1)) bounds sum_{n >= m} n^{-1/2-delta-1/2}/log n for m >= 3.
Interval tail_bound(u64 m, double delta)
{
  double const x = delta * std::log(static_cast<double>(m - 1));
  double const e1 = -std::expint(-x);
  return {0.0, up(e1 * (1.0 + kTailRel))};
}

Interval block_sum(u64 begin, u64 end, double sigma)
{
  Interval s{0, 0};
  for (u64 n = begin; n < end; ++n) { s += term(n, sigma); }
  return s;
}

struct Candidate
{
  double delta = 0;
  u64 end = 0;
  Interval middle, head, tail;
};

} // namespace

Interval Interval::around(double v, double rel)
{
  double const a = v * (1.0 - rel), b = v * (1.0 + rel);
  return {down(std::min(a, b)), up(std::max(a, b))};
}

Interval Interval::operator+(Interval const &o) const { return {down(lo + o.lo), up(hi + o.hi)}; }

Interval Interval::operator-(Interval const &o) const { return {down(lo - o.hi), up(hi - o.lo)}; }

double Interval::mag() const { return std::max(std::abs(lo), std::abs(hi)); }

double alternating_base(u64 n)
{
  if (n < 2) { return 0.0; }
  double const x = static_cast<double>(n);
  return 1.0 / (std::sqrt(x) * std::log(x));
}

double AlternatingZerosResult::coefficient(u64 n) const
{
  if (n < 2 || breakpoints.empty() || n < breakpoints.front()) { return 0.0; }
  auto const it = std::upper_bound(breakpoints.begin(), breakpoints.end(), n);
  auto const k = static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return (k % 2 == 0 ? 1.0 : -1.0) * alternating_base(n);
}

DirichletPoly<double> AlternatingZerosResult::coefficients(u64 N) const
{
  DirichletPoly<double> f(static_cast<Index>(N));
  for (u64 n = 1; n <= N; ++n) { f[static_cast<Index>(n)] = coefficient(n); }
  return f;
}

AlternatingZerosResult construct_alternating_zeros(int K, u64 tail_cap)
{
  if (K < 2) { throw std::invalid_argument("construct_alternating_zeros: K must be >= 2"); }
  if (tail_cap < 4) { throw std::invalid_argument("construct_alternating_zeros: tail cap too small"); }
  AlternatingZerosResult out;
  out.requested = K;
  out.breakpoints.push_back(2);  // b_1 = 0

  double delta_prev = 3.0;
  for (int k = 0; k < K; ++k) {
    u64 const begin = out.breakpoints.back();
    std::optional<Candidate> best;
    double const first_delta = k == 0 ? 1.5 : delta_prev / 2.0;
    for (double delta = first_delta; delta >= 1e-5; delta /= 2.0) {
      double const sigma = 0.5 + delta;
      Interval head{0, 0};
      for (int i = 0; i < k; ++i) {
        Interval const blk = block_sum(out.breakpoints[static_cast<std::size_t>(i)],
                                       out.breakpoints[static_cast<std::size_t>(i) + 1], sigma);
        head = i % 2 == 0 ? head + blk : head - blk;
      }
      u64 const limit = best ? best->end - 1 : tail_cap;
      Interval middle{0, 0};
      for (u64 end = begin + 1; end <= limit; ++end) {
        middle += term(end - 1, sigma);
        if (end < 3) { continue; }
        Interval const tail = tail_bound(end, delta);
        if (middle.lo > up(head.mag() + tail.hi)) {
          best = Candidate{delta, end, middle, head, tail};
          break;
        }
      }
      if (k == 0) { break; }
    }
    if (!best) { break; }

    AlternationStep step;
    step.k = k;
    step.block_begin = begin;
    step.block_end = best->end;
    step.sigma = 0.5 + best->delta;
    step.middle = best->middle;
    step.head = best->head;
    step.tail = best->tail;
    step.sign = k % 2 == 0 ? 1 : -1;
    step.certified = true;
    out.steps.push_back(step);
    out.breakpoints.push_back(best->end);
    delta_prev = best->delta;
  }

  out.achieved = static_cast<int>(out.steps.size());
  out.complete = out.achieved == K;
  for (std::size_t i = 1; i < out.steps.size(); ++i) { out.zero_brackets.emplace_back(out.steps[i].sigma, out.steps[i - 1].sigma); }
  return out;
}

VanishingInfimumResult construct_vanishing_infimum(u64 P_max, FactorTable const &table, u64 coefficient_length)
{
  if (P_max < 5) { throw std::invalid_argument("construct_vanishing_infimum: P_max must be >= 5"); }
  if (P_max > table.limit()) { throw std::invalid_argument("construct_vanishing_infimum: P_max exceeds factor table"); }
  u64 const L = coefficient_length == 0 ? P_max : coefficient_length;

  VanishingInfimumResult out;
  std::vector<u64> checkpoints;
  for (u64 P = P_max; P >= 5 && checkpoints.size() < 8; P /= 4) { checkpoints.push_back(P); }
  std::reverse(checkpoints.begin(), checkpoints.end());

  double sum_sq = 0;
  std::size_t next = 0;
  for (u64 p : table.primes()) {
    if (p > P_max) { break; }
    while (next < checkpoints.size() && p > checkpoints[next]) { out.sum_sq_partial.emplace_back(checkpoints[next++], sum_sq); }
    if (p < 5) { continue; }
    double const x = static_cast<double>(p);
    double const bp = std::pow(std::log(std::log(x)), -2.0 / 3.0) / std::sqrt(x);
    out.b[p] = bp;
    sum_sq += bp * bp;
    out.last_increment = bp * bp;
  }
  while (next < checkpoints.size()) { out.sum_sq_partial.emplace_back(checkpoints[next++], sum_sq); }

  out.big_phi_spec = SineSystemSpec::totally_multiplicative(out.b, L, table);
  out.big_phi_spec.tail.declared_l2_convergent = true;
  out.big_phi_spec.tail.declared_l1_convergent = false;
  out.phi_spec = SineSystemSpec::reciprocal_totally_multiplicative(out.b, L, table);
  out.phi_spec.tail.declared_l2_convergent = true;
  out.phi_spec.tail.declared_l1_convergent = false;

  for (double sigma : {0.9, 0.8, 0.7, 0.6, 0.55, 0.52, 0.51, 0.505, 0.502, 0.501}) {
    double log_phi = 0;
    for (auto const &[p, bp] : out.b) {
      log_phi -= std::log1p(-bp.real() * std::pow(static_cast<double>(p), -sigma));
    }
    out.phi_on_axis.emplace_back(sigma, std::exp(log_phi));
  }
  return out;
}

} // namespace dseries
