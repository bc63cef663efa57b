#pragma once

#include "dseries/dirichlet_poly.hpp"

namespace dseries {

/// Mean of |f(sigma+it)|^2 over t in [-T, T], computed two ways.
///
/// closed_form_mean expands |f|^2 and averages each exponential exactly;
/// quadrature_mean integrates numerically. target is the diagonal part
/// sum |a_n|^2 n^{-2 sigma}, which differs from the closed form by at most
/// cross_term_bound.
struct CarlsonReport
{
  double sigma = 0;
  double T = 0;
  double closed_form_mean = 0;
  double quadrature_mean = 0;
  double target = 0;
  double cross_term_bound = 0;
};

CarlsonReport carlson_mean(DirichletPoly<double> const &f, double sigma, double T);

/// The quadrature half alone, exposed for the Kronecker-flow average.
double mean_square_quadrature(DirichletPoly<double> const &f, double sigma, double T);

} // namespace dseries
