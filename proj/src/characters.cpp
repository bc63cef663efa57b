#include "dseries/characters.hpp"
#include "dseries/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dseries {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double a)
{
  a = std::fmod(a, kTwoPi);
  if (a < 0) { a += kTwoPi; }
  return a >= kTwoPi ? 0.0 : a;
}

} // namespace

Character Character::sample(std::uint64_t seed) { return Character(seed, 0.0); }

Character Character::unit() { return Character(std::nullopt, 0.0); }

double Character::raw_angle(u64 p) const
{
  double const base = seed_ ? kTwoPi * to_unit_interval(hash_pair(*seed_, p)) : 0.0;
  return flow_time_ == 0.0 ? base : base - flow_time_ * std::log(static_cast<double>(p));
}

double Character::angle(u64 p) const { return reduce_angle(raw_angle(p)); }

std::complex<double> Character::at_prime(u64 p) const { return std::polar(1.0, angle(p)); }

std::complex<double> Character::value(u64 n, FactorTable const &table) const
{
  double a = 0;
  for (auto const &[p, e] : table.factorize(n).exponents) { a += e * angle(p); }
  return std::polar(1.0, reduce_angle(a));
}

std::vector<std::complex<double>> Character::values_up_to(u64 N, FactorTable const &table) const
{
  if (N > table.limit()) { throw std::invalid_argument("character values: N exceeds factor table"); }
  std::vector<double> angles(N + 1, 0.0);
  std::vector<std::complex<double>> out(N + 1, 0.0);
  if (N >= 1) { out[1] = 1.0; }
  for (u64 n = 2; n <= N; ++n) {
    u64 const p = table.smallest_prime_factor(n);
    double const ap = p == n ? angle(p) : angles[p];
    angles[n] = reduce_angle(ap + angles[n / p]);
    out[n] = std::polar(1.0, angles[n]);
  }
  return out;
}

Character Character::flowed(double t) const { return Character(seed_, flow_time_ + t); }

Character sample_character(std::uint64_t seed) { return Character::sample(seed); }

std::complex<double> char_value(Character const &chi, u64 n, FactorTable const &table) { return chi.value(n, table); }

Character kronecker_flow(Character const &chi, double t) { return chi.flowed(t); }

std::uint64_t character_seed(std::uint64_t master_seed, std::uint64_t index) { return hash_pair(master_seed ^ 0xC6A4A7935BD1E995ull, index); }

DirichletPoly<double> twist(DirichletPoly<double> const &f, Character const &chi, FactorTable const &table)
{
  if (static_cast<u64>(f.size()) > table.limit()) { throw std::invalid_argument("twist: factor table too small"); }
  auto const chi_n = chi.values_up_to(static_cast<u64>(f.size()), table);
  DirichletPoly<double> out(f.size());
  for (Index n = 1; n <= f.size(); ++n) { out[n] = f[n] * chi_n[static_cast<std::size_t>(n)]; }
  return out;
}

} // namespace dseries
