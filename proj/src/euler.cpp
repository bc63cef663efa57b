#include "dseries/euler.hpp"

#include <cmath>
#include <limits>

namespace dseries {

EulerNorms euler_norms(PrimeValues const &prime_values)
{
  EulerNorms out;
  double log_fwd = 0, log_rec_h = 0, log_rec_hd = 0;
  for (auto const &[p, a] : prime_values) {
    double const r2 = std::norm(a);
    if (r2 >= 1.0) { out.in_h = false; }
    if (out.in_h) { log_fwd -= std::log1p(-r2); }
    log_rec_h += std::log1p(r2);
    log_rec_hd += std::log1p(2.0 * r2);
  }
  if (out.in_h) {
    out.norm_h_sq = std::exp(log_fwd);
    out.norm_hd_sq = std::exp(2.0 * log_fwd);
  } else {
    out.norm_h_sq = out.norm_hd_sq = std::numeric_limits<double>::infinity();
  }
  out.reciprocal_norm_h_sq = std::exp(log_rec_h);
  out.reciprocal_norm_hd_sq = std::exp(log_rec_hd);
  return out;
}

} // namespace dseries
