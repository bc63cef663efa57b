#include "dseries/carlson.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dseries {

namespace {

struct Term
{
  double log_n;
  std::complex<double> weight;  // a_n n^{-sigma}
};

std::vector<Term> damped_terms(DirichletPoly<double> const &f, double sigma)
{
  std::vector<Term> terms;
  for (Index n = 1; n <= f.size(); ++n) {
    if (f[n] == std::complex<double>(0)) { continue; }
    double const ln = std::log(static_cast<double>(n));
    terms.push_back({ln, f[n] * std::exp(-sigma * ln)});
  }
  return terms;
}

} // namespace

double mean_square_quadrature(DirichletPoly<double> const &f, double sigma, double T)
{
  if (!(sigma > 0) || !(T > 0)) { throw std::invalid_argument("carlson_mean: sigma and T must be positive"); }
  auto const terms = damped_terms(f, sigma);
  if (terms.empty()) { return 0.0; }
  auto integrand = [&](double t) {
    std::complex<double> v = 0;
    for (auto const &term : terms) { v += term.weight * std::polar(1.0, -t * term.log_n); }
    return std::norm(v);
  };
  // Four panels per period of the fastest oscillation, K15 on each.
  double const max_freq = std::max(terms.back().log_n, 1.0);
  int const panels = std::max(16, static_cast<int>(std::ceil(2.0 * T * max_freq / (2.0 * M_PI) * 4.0)));
  double const h = 2.0 * T / panels;
  double total = 0;
  for (int i = 0; i < panels; ++i) {
    double const a = -T + i * h;
    double const b = i + 1 == panels ? T : a + h;
    total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(integrand, a, b, 0);
  }
  return total / (2.0 * T);
}

CarlsonReport carlson_mean(DirichletPoly<double> const &f, double sigma, double T)
{
  if (!(sigma > 0) || !(T > 0)) { throw std::invalid_argument("carlson_mean: sigma and T must be positive"); }
  CarlsonReport r;
  r.sigma = sigma;
  r.T = T;
  auto const terms = damped_terms(f, sigma);
  CompensatedSum<double> diag, cross, bound;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    diag.add(std::norm(terms[i].weight));
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j) { continue; }
      // m = terms[i], n = terms[j]: a_m conj(a_n) (mn)^{-sigma} sinc(T ln(n/m))
      double const x = T * (terms[j].log_n - terms[i].log_n);
      auto const w = terms[i].weight * std::conj(terms[j].weight);
      cross.add(w.real() * std::sin(x) / x);
      bound.add(std::abs(w) / std::abs(x));
    }
  }
  r.target = diag.value();
  r.closed_form_mean = diag.value() + cross.value();
  r.cross_term_bound = bound.value();
  r.quadrature_mean = mean_square_quadrature(f, sigma, T);
  return r;
}

} // namespace dseries
