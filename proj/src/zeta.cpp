#include "dseries/zeta.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dseries {

namespace {

// B_{2k} / (2k)!
constexpr std::array<double, 12> kBernoulliOverFactorial = {
  1.0 / 12.0,
  -1.0 / 720.0,
  1.0 / 30240.0,
  -1.0 / 1209600.0,
  1.0 / 47900160.0,
  -691.0 / 1307674368000.0,
  1.0 / 74724249600.0,
  -3617.0 / 10670622842880000.0,
  43867.0 / 5109094217170944000.0,
  -174611.0 / 802857662698291200000.0,
  77683.0 / 14101100039391805440000.0,
  -236364091.0 / 1693824136731743669452800000.0,
};

} // namespace

std::complex<double> zeta(std::complex<double> s)
{
  if (!(s.real() > 1.0)) { throw std::domain_error("zeta: truncated series needs Re s > 1"); }
  // N large compared to |s| keeps the asymptotic tail series well inside its
  // convergent-looking range.
  int const N = 20 + static_cast<int>(std::ceil(std::abs(s.imag())));
  std::complex<double> sum = 0;
  for (int n = N - 1; n >= 1; --n) { sum += std::exp(-s * std::log(static_cast<double>(n))); }

  double const logN = std::log(static_cast<double>(N));
  std::complex<double> const Ns = std::exp(-s * logN); // N^{-s}
  // sum_{n>=N} n^{-s} = N^{1-s}/(s-1) + N^{-s}/2 + sum_k B_2k/(2k)! (s)_{2k-1} N^{-s-2k+1}
  std::complex<double> tail = Ns * static_cast<double>(N) / (s - 1.0) + 0.5 * Ns;
  std::complex<double> rising = s;  // s (s+1) ... (s+2k-2)
  std::complex<double> power = Ns / static_cast<double>(N);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    tail += kBernoulliOverFactorial[k] * rising * power;
    double const m = 2.0 * static_cast<double>(k);
    rising *= (s + m + 1.0) * (s + m + 2.0);
    power /= static_cast<double>(N) * static_cast<double>(N);
  }
  return sum + tail;
}

std::complex<double> kernel(std::complex<double> z, std::complex<double> w)
{
  std::complex<double> const s = z + std::conj(w);
  if (!(s.real() > 1.0)) { throw std::domain_error("kernel: needs Re(z + conj w) > 1"); }
  return zeta(s);
}

} // namespace dseries
