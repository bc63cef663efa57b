#pragma once

#include <complex>

namespace dseries {

/// Riemann zeta for Re s > 1 by direct summation plus an Euler-Maclaurin tail.
/// Absolute error below 1e-10 for Re s >= 1.1. Throws std::domain_error for
/// Re s <= 1.
std::complex<double> zeta(std::complex<double> s);

/// Reproducing kernel of the square-summable Dirichlet series space,
/// K(z, w) = zeta(z + conj(w)).
std::complex<double> kernel(std::complex<double> z, std::complex<double> w);

} // namespace dseries
