#pragma once

#include "dseries/errors.hpp"
#include "dseries/numtheory.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace dseries {

using Index = Eigen::Index;

/// Truncated Dirichlet series f(s) = sum_{n<=N} a_n n^{-s}.
///
/// Storage is 1-based: slot 0 exists but is always zero, so `f[n]` is a_n.
/// Every binary operation is exact for indices up to min(N_f, N_g); nothing is
/// implicitly zero-padded past that.
template <typename Scalar = double> class DirichletPoly
{
public:
  using Complex = std::complex<Scalar>;
  using Coeffs = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

  /// Zero series of length N.
  explicit DirichletPoly(Index N)
    : coeffs_(Coeffs::Zero(checked(N) + 1))
  {}

  /// `indexed` has size N+1 with indexed[n] = a_n; indexed[0] is ignored.
  explicit DirichletPoly(Coeffs indexed)
    : coeffs_(std::move(indexed))
  {
    checked(coeffs_.size() - 1);
    coeffs_(0) = Complex(0);
    for (Index n = 1; n < coeffs_.size(); ++n) {
      if (!std::isfinite(coeffs_(n).real()) || !std::isfinite(coeffs_(n).imag())) {
        throw std::invalid_argument("DirichletPoly coefficients must be finite");
      }
    }
  }

  explicit DirichletPoly(std::vector<Complex> const &indexed)
    : DirichletPoly(Coeffs(Eigen::Map<Coeffs const>(indexed.data(), static_cast<Index>(indexed.size()))))
  {}

  /// Natural list a_1, a_2, ...
  static DirichletPoly from_list(std::span<Complex const> a)
  {
    Coeffs c(static_cast<Index>(a.size()) + 1);
    c(0) = Complex(0);
    for (std::size_t i = 0; i < a.size(); ++i) { c(static_cast<Index>(i) + 1) = a[i]; }
    return DirichletPoly(std::move(c));
  }
  static DirichletPoly from_list(std::initializer_list<Complex> a)
  {
    return from_list(std::span<Complex const>(a.begin(), a.size()));
  }

  static DirichletPoly unit(Index N)
  {
    DirichletPoly f(N);
    f.coeffs_(1) = Complex(1);
    return f;
  }

  Index size() const { return coeffs_.size() - 1; }

  Complex operator[](Index n) const { return coeffs_(n); }
  Complex &operator[](Index n) { return coeffs_(n); }

  /// Coefficients a_1..a_N as an Eigen segment.
  auto coefficients() const { return coeffs_.tail(size()); }
  Coeffs const &indexed() const { return coeffs_; }

  DirichletPoly truncated(Index N) const
  {
    if (N < 1 || N > size()) { throw std::invalid_argument("truncation length out of range"); }
    return DirichletPoly(Coeffs(coeffs_.head(N + 1)));
  }

  bool operator==(DirichletPoly const &o) const { return coeffs_ == o.coeffs_; }

private:
  static Index checked(Index N)
  {
    if (N < 1) { throw std::invalid_argument("DirichletPoly length must be >= 1"); }
    return N;
  }

  Coeffs coeffs_;
};

/// Dirichlet convolution, c_n = sum_{kl=n} a_k b_l for n <= min(N_f, N_g).
template <typename Scalar>
DirichletPoly<Scalar> convolve(DirichletPoly<Scalar> const &f, DirichletPoly<Scalar> const &g)
{
  Index const N = std::min(f.size(), g.size());
  DirichletPoly<Scalar> c(N);
  for (Index k = 1; k <= N; ++k) {
    auto const ak = f[k];
    if (ak == std::complex<Scalar>(0)) { continue; }
    for (Index l = 1; l <= N / k; ++l) { c[k * l] += ak * g[l]; }
  }
  return c;
}

/// Coefficients of 1/f via b_1 = 1/a_1, b_n = -(1/a_1) sum_{d|n, d<n} b_d a_{n/d}.
template <typename Scalar> DirichletPoly<Scalar> reciprocal(DirichletPoly<Scalar> const &f)
{
  using Complex = std::complex<Scalar>;
  if (f[1] == Complex(0)) { throw NonInvertibleError("reciprocal: a_1 = 0"); }
  Index const N = f.size();
  Complex const inv = Complex(1) / f[1];
  // acc[n] accumulates sum_{d|n, d<n} b_d a_{n/d}; complete once the sweep reaches n
  DirichletPoly<Scalar> b(N);
  std::vector<Complex> acc(static_cast<std::size_t>(N) + 1, Complex(0));
  for (Index d = 1; d <= N; ++d) {
    b[d] = d == 1 ? inv : -inv * acc[d];
    if (b[d] == Complex(0)) { continue; }
    for (Index m = 2; m <= N / d; ++m) {
      if (f[m] != Complex(0)) { acc[d * m] += b[d] * f[m]; }
    }
  }
  return b;
}

/// Neumaier-compensated running sum.
template <typename Scalar> class CompensatedSum
{
public:
  void add(Scalar x)
  {
    Scalar const t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  Scalar value() const { return sum_ + comp_; }

private:
  Scalar sum_ = 0;
  Scalar comp_ = 0;
};

/// sum_{n<=N} a_n n^{-s}
template <typename Scalar>
std::complex<Scalar> evaluate(DirichletPoly<Scalar> const &f, std::complex<Scalar> s)
{
  CompensatedSum<Scalar> re, im;
  for (Index n = 1; n <= f.size(); ++n) {
    auto const a = f[n];
    if (a == std::complex<Scalar>(0)) { continue; }
    Scalar const logn = std::log(static_cast<Scalar>(n));
    auto const term = a * std::exp(-s * logn);
    re.add(term.real());
    im.add(term.imag());
  }
  return {re.value(), im.value()};
}

/// Dyadic sample points 1, 2, 4, ... <= N, plus N itself when N is not a power of two.
inline std::vector<Index> dyadic_points(Index N)
{
  std::vector<Index> pts;
  for (Index p = 1; p <= N; p *= 2) { pts.push_back(p); }
  if (pts.back() != N) { pts.push_back(N); }
  return pts;
}

template <typename Scalar> struct DyadicSums
{
  std::vector<Index> points;
  std::vector<std::complex<Scalar>> sums;

  std::vector<Scalar> magnitudes() const
  {
    std::vector<Scalar> out(sums.size());
    std::transform(sums.begin(), sums.end(), out.begin(), [](auto z) { return std::abs(z); });
    return out;
  }
};

/// Coefficient partial sums S_N = sum_{n<=N} a_n at dyadic N.
template <typename Scalar> DyadicSums<Scalar> partial_sums(DirichletPoly<Scalar> const &f)
{
  DyadicSums<Scalar> out;
  out.points = dyadic_points(f.size());
  std::complex<Scalar> s(0);
  std::size_t next = 0;
  for (Index n = 1; n <= f.size() && next < out.points.size(); ++n) {
    s += f[n];
    if (n == out.points[next]) {
      out.sums.push_back(s);
      ++next;
    }
  }
  return out;
}

/// Growth-exponent estimate from dyadic |S_N| samples. An estimator, not a
/// certificate: the fit covers only the upper half of the dyadic range.
struct GrowthFit
{
  double estimate = 0;  ///< max(slope, 0), or -inf when every S_N vanishes
  double slope = 0;
  double residual = 0;  ///< RMS residual of the least-squares line
  int points_used = 0;
  bool bounded_sums = false;
};

inline GrowthFit fit_growth_exponent(std::vector<Index> const &points, std::vector<double> const &magnitudes)
{
  if (points.size() != magnitudes.size()) { throw std::invalid_argument("fit_growth_exponent: size mismatch"); }
  if (points.size() < 8) { throw std::invalid_argument("growth fit needs at least 8 dyadic sample points"); }
  GrowthFit fit;
  if (std::all_of(magnitudes.begin(), magnitudes.end(), [](double m) { return m == 0.0; })) {
    fit.estimate = -std::numeric_limits<double>::infinity();
    fit.slope = fit.estimate;
    fit.bounded_sums = true;
    return fit;
  }
  std::size_t const start = points.size() / 2;
  std::vector<double> xs, ys;
  for (std::size_t i = start; i < points.size(); ++i) {
    if (magnitudes[i] > 0) {
      xs.push_back(std::log(static_cast<double>(points[i])));
      ys.push_back(std::log(magnitudes[i]));
    }
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 2) {
    fit.estimate = 0;
    fit.slope = 0;
    fit.bounded_sums = true;
    return fit;
  }
  double const n = static_cast<double>(xs.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  double rss = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double const r = ys[i] - (my + fit.slope * (xs[i] - mx));
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  fit.estimate = std::max(fit.slope, 0.0);
  fit.bounded_sums = fit.slope <= 0.0;
  return fit;
}

/// Abscissa-of-convergence estimate from the growth of S_N.
template <typename Scalar> GrowthFit estimate_sigma_c(DirichletPoly<Scalar> const &f)
{
  auto const ps = partial_sums(f);
  auto const mags = ps.magnitudes();
  return fit_growth_exponent(ps.points, std::vector<double>(mags.begin(), mags.end()));
}

template <typename Scalar> Scalar norm_h(DirichletPoly<Scalar> const &f) { return f.coefficients().norm(); }

/// sqrt(sum |a_n|^2 d(n))
template <typename Scalar> Scalar norm_hd(DirichletPoly<Scalar> const &f, FactorTable const &table)
{
  if (static_cast<u64>(f.size()) > table.limit()) { throw std::invalid_argument("norm_hd: factor table too small"); }
  CompensatedSum<Scalar> acc;
  for (Index n = 1; n <= f.size(); ++n) {
    acc.add(std::norm(f[n]) * static_cast<Scalar>(table.divisor_count(static_cast<u64>(n))));
  }
  return std::sqrt(acc.value());
}

} // namespace dseries

