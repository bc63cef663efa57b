#include "dseries/bohrlift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace dseries {

void MultiIndexPoly::refresh_support()
{
  std::set<u64> primes;
  for (auto const &[idx, c] : terms) {
    if (c == cd(0)) { continue; }
    for (auto const &[p, e] : idx.exponents) { primes.insert(p); }
  }
  prime_support.assign(primes.begin(), primes.end());
}

MultiIndexPoly lift(DirichletPoly<double> const &f, FactorTable const &table)
{
  if (static_cast<u64>(f.size()) > table.limit()) { throw std::invalid_argument("lift: factor table too small"); }
  MultiIndexPoly P;
  for (Index n = 1; n <= f.size(); ++n) {
    if (f[n] != cd(0)) { P.terms.emplace(table.factorize(static_cast<u64>(n)), f[n]); }
  }
  P.refresh_support();
  return P;
}

DirichletPoly<double> unlift(MultiIndexPoly const &P, Index N)
{
  DirichletPoly<double> f(N);
  for (auto const &[idx, c] : P.terms) {
    u64 const n = from_multi_index(idx);
    if (n > static_cast<u64>(N)) { throw std::invalid_argument("unlift: term index exceeds requested length"); }
    f[static_cast<Index>(n)] = c;
  }
  return f;
}

DirichletPoly<double> unlift(MultiIndexPoly const &P)
{
  u64 N = 1;
  for (auto const &[idx, c] : P.terms) { N = std::max(N, from_multi_index(idx)); }
  return unlift(P, static_cast<Index>(N));
}

namespace {

MultiIndex combine(MultiIndex const &a, MultiIndex const &b)
{
  MultiIndex out;
  auto ia = a.exponents.begin();
  auto ib = b.exponents.begin();
  while (ia != a.exponents.end() || ib != b.exponents.end()) {
    if (ib == b.exponents.end() || (ia != a.exponents.end() && ia->first < ib->first)) {
      out.exponents.push_back(*ia++);
    } else if (ia == a.exponents.end() || ib->first < ia->first) {
      out.exponents.push_back(*ib++);
    } else {
      out.exponents.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  return out;
}

} // namespace

MultiIndexPoly multiply(MultiIndexPoly const &P, MultiIndexPoly const &Q, u64 max_index)
{
  MultiIndexPoly R;
  for (auto const &[ia, ca] : P.terms) {
    u64 const na = from_multi_index(ia);
    for (auto const &[ib, cb] : Q.terms) {
      u64 const nb = from_multi_index(ib);
      if (na > max_index / nb) { continue; }
      R.terms[combine(ia, ib)] += ca * cb;
    }
  }
  std::erase_if(R.terms, [](auto const &kv) { return kv.second == cd(0); });
  R.refresh_support();
  return R;
}

bool QuasiCharacterPoint::in_polydisk() const
{
  return std::all_of(values.begin(), values.end(), [](auto const &kv) { return std::abs(kv.second) < 1.0; });
}

QuasiCharacterPoint QuasiCharacterPoint::from_s(cd s, FactorTable const &table, u64 p_max)
{
  QuasiCharacterPoint phi;
  for (u64 p : table.primes()) {
    if (p > p_max) { break; }
    phi.values[p] = std::exp(-s * std::log(static_cast<double>(p)));
  }
  return phi;
}

cd eval_quasi(MultiIndexPoly const &P, QuasiCharacterPoint const &phi)
{
  cd sum = 0;
  for (auto const &[idx, c] : P.terms) {
    cd term = c;
    for (auto const &[p, e] : idx.exponents) {
      auto const it = phi.values.find(p);
      if (it == phi.values.end()) {
        term = 0;
        break;
      }
      for (unsigned k = 0; k < e; ++k) { term *= it->second; }
    }
    sum += term;
  }
  return sum;
}

PointEvalBound point_eval_bound(QuasiCharacterPoint const &phi)
{
  PointEvalBound out;
  double log_c = 0;
  for (auto const &[p, z] : phi.values) {
    double const r2 = std::norm(z);
    if (r2 >= 1.0) {
      out.in_domain = false;
      out.value = std::numeric_limits<double>::infinity();
      return out;
    }
    log_c -= 0.5 * std::log1p(-r2);
  }
  out.value = std::exp(log_c);
  return out;
}

CompiledPoly::CompiledPoly(MultiIndexPoly const &P)
  : primes_(P.prime_support)
{
  std::size_t const d = primes_.size();
  for (auto const &[idx, c] : P.terms) {
    if (c == cd(0)) { continue; }
    coeffs_.push_back(c);
    std::size_t const row = exps_.size();
    exps_.resize(row + d, 0);
    for (auto const &[p, e] : idx.exponents) {
      auto const it = std::lower_bound(primes_.begin(), primes_.end(), p);
      if (it == primes_.end() || *it != p) { throw std::invalid_argument("CompiledPoly: prime_support is stale"); }
      exps_[row + static_cast<std::size_t>(it - primes_.begin())] = e;
    }
  }
}

unsigned CompiledPoly::max_exponent(int k) const
{
  unsigned m = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) { m = std::max(m, exponent(t, k)); }
  return m;
}

cd CompiledPoly::value(std::span<cd const> z) const
{
  cd sum = 0;
  int const d = dimension();
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    cd term = coeffs_[t];
    for (int k = 0; k < d; ++k) {
      for (unsigned e = exponent(t, k); e > 0; --e) { term *= z[static_cast<std::size_t>(k)]; }
    }
    sum += term;
  }
  return sum;
}

cd CompiledPoly::value_and_gradient(std::span<cd const> z, std::span<cd> grad) const
{
  int const d = dimension();
  std::fill(grad.begin(), grad.end(), cd(0));
  cd sum = 0;
  std::vector<cd> pw(static_cast<std::size_t>(d));
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    cd term = coeffs_[t];
    for (int k = 0; k < d; ++k) {
      pw[static_cast<std::size_t>(k)] = std::pow(z[static_cast<std::size_t>(k)], static_cast<int>(exponent(t, k)));
      term *= pw[static_cast<std::size_t>(k)];
    }
    sum += term;
    for (int k = 0; k < d; ++k) {
      unsigned const e = exponent(t, k);
      if (e == 0) { continue; }
      // d/dz_k of z_k^e times the other factors
      cd g = coeffs_[t] * static_cast<double>(e) * std::pow(z[static_cast<std::size_t>(k)], static_cast<int>(e) - 1);
      for (int j = 0; j < d; ++j) {
        if (j != k) { g *= pw[static_cast<std::size_t>(j)]; }
      }
      grad[static_cast<std::size_t>(k)] += g;
    }
  }
  return sum;
}

cd CompiledPoly::value_on_torus(std::span<double const> angles) const
{
  cd sum = 0;
  int const d = dimension();
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    double phase = 0;
    for (int k = 0; k < d; ++k) { phase += exponent(t, k) * angles[static_cast<std::size_t>(k)]; }
    sum += coeffs_[t] * std::polar(1.0, phase);
  }
  return sum;
}

double prime_linear_sup_norm(PrimeValues const &prime_coeffs)
{
  double s = 1.0;
  for (auto const &[p, a] : prime_coeffs) { s += std::abs(a); }
  return s;
}

MultiplierNorms euler_multiplier_norm(PrimeValues const &prime_values)
{
  MultiplierNorms out;
  double log_fwd = 0, log_rec = 0;
  for (auto const &[p, a] : prime_values) {
    double const r = std::abs(a);
    if (r >= 1.0) { out.forward_finite = false; }
    if (out.forward_finite) { log_fwd -= std::log1p(-r); }
    log_rec += std::log1p(r);
  }
  out.forward = out.forward_finite ? std::exp(log_fwd) : std::numeric_limits<double>::infinity();
  out.reciprocal = std::exp(log_rec);
  return out;
}

} // namespace dseries
