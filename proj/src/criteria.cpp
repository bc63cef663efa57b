#include "dseries/criteria.hpp"
#include "dseries/euler.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace dseries {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Terms beyond which sup-norm evidence is not attempted.
constexpr std::size_t kEvidenceMaxTerms = 4096;
constexpr int kEvidenceMaxDimension = 16;
constexpr int kZeroSearchMaxDimension = 4;

bool prime_supported(DirichletPoly<double> const &a, FactorTable const &table)
{
  for (Index n = 2; n <= a.size(); ++n) {
    if (a[n] != cd(0) && !table.is_prime(static_cast<u64>(n))) { return false; }
  }
  return true;
}

double sum_abs_tail(DirichletPoly<double> const &a)
{
  CompensatedSum<double> s;
  for (Index n = 2; n <= a.size(); ++n) { s.add(std::abs(a[n])); }
  return s.value();
}

PrimeValues prime_coefficients(DirichletPoly<double> const &a, FactorTable const &table)
{
  PrimeValues pv;
  for (u64 p : table.primes()) {
    if (p > static_cast<u64>(a.size())) { break; }
    if (a[static_cast<Index>(p)] != cd(0)) { pv[p] = a[static_cast<Index>(p)]; }
  }
  return pv;
}

double max_abs(PrimeValues const &b)
{
  double m = 0;
  for (auto const &[p, v] : b) { m = std::max(m, std::abs(v)); }
  return m;
}

PrimeSeriesClassification classify_tail(TailModel const &tail, double power, u64 limit)
{
  auto const &declared = power == 1.0 ? tail.declared_l1_convergent : tail.declared_l2_convergent;
  auto c = classify_prime_series(tail.primes, power, limit);
  if (declared) {
    c.declared = true;
    c.behavior = *declared ? SeriesBehavior::Convergent : SeriesBehavior::Divergent;
  }
  return c;
}

void attach_sup_evidence(CriterionVerdict &v, DirichletPoly<double> const &a, FactorTable const &table,
                         CheckOptions const &options)
{
  auto const P = lift(a, table);
  if (P.terms.size() > kEvidenceMaxTerms || static_cast<int>(P.prime_support.size()) > kEvidenceMaxDimension) {
    v.notes.push_back("sup-norm evidence skipped: lifted polynomial too large");
    return;
  }
  auto const sup = sup_norm_polytorus(P, options.sup_norm);
  v.certificate["sup_norm_lower"] = sup.lower;
  v.certificate["sup_norm_estimate"] = sup.estimate;
  v.notes.push_back("sup-norm lower bound of S(phi) attached as evidence only");
}

// Newton iteration z <- z - P(z) conj(grad)/|grad|^2 from random starts inside
// the polydisk; returns the first point with |P| tiny and max |z_p| < 1.
std::optional<std::vector<cd>> search_zero(CompiledPoly const &poly, CheckOptions const &options)
{
  int const d = poly.dimension();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<cd> z(static_cast<std::size_t>(d)), grad(static_cast<std::size_t>(d));
  for (int start = 0; start < options.zero_search_starts; ++start) {
    for (auto &zk : z) { zk = std::polar(0.95 * std::sqrt(unif(rng)), 2.0 * std::numbers::pi * unif(rng)); }
    for (int iter = 0; iter < 200; ++iter) {
      cd const val = poly.value_and_gradient(z, grad);
      double g2 = 0;
      for (auto const &g : grad) { g2 += std::norm(g); }
      if (std::abs(val) < 1e-15) { break; }
      if (g2 < 1e-300) { break; }
      for (int k = 0; k < d; ++k) { z[static_cast<std::size_t>(k)] -= val * std::conj(grad[static_cast<std::size_t>(k)]) / g2; }
    }
    cd const val = poly.value(z);
    double m = 0;
    for (auto const &zk : z) { m = std::max(m, std::abs(zk)); }
    if (std::abs(val) < 1e-12 && m < 1.0 - 1e-9) { return z; }
  }
  return std::nullopt;
}

void attach_witness(CriterionVerdict &v, std::map<u64, cd> const &z, ZeroCertificate const &cert)
{
  v.witness = z;
  v.certificate["witness_value_modulus"] = cert.value_modulus;
  v.certificate["rouche_radius"] = cert.radius;
  v.certificate["witness_max_modulus"] = cert.max_modulus;
}

} // namespace

std::string to_string(VerdictStatus status)
{
  switch (status) {
  case VerdictStatus::Yes: return "Yes";
  case VerdictStatus::No: return "No";
  case VerdictStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::string to_string(SeriesBehavior behavior)
{
  switch (behavior) {
  case SeriesBehavior::Convergent: return "convergent";
  case SeriesBehavior::Divergent: return "divergent";
  case SeriesBehavior::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

PrimeSeriesClassification classify_prime_series(PrimeValues const &b, double power, u64 limit)
{
  PrimeSeriesClassification out;
  u64 last = 0;
  for (auto const &[p, v] : b) {
    if (p > limit) { continue; }
    double const w = std::pow(std::abs(v), power);
    out.partial_sum += w;
    if (w > 0) { last = std::max(last, p); }
  }
  if (last == 0 || limit < 4) {
    out.finite_support = last == 0;
    out.behavior = last == 0 ? SeriesBehavior::Convergent : SeriesBehavior::Inconclusive;
    return out;
  }

  // complete blocks [2^k, 2^{k+1}) with 2^{k+1} - 1 <= limit
  int top = 0;
  while ((u64{2} << (top + 1)) - 1 <= limit) { ++top; }
  if (last < (u64{1} << top)) {
    out.finite_support = true;
    out.behavior = SeriesBehavior::Convergent;
    return out;
  }
  std::vector<double> blocks(static_cast<std::size_t>(top) + 1, 0.0);
  for (auto const &[p, v] : b) {
    if (p > limit) { continue; }
    int const k = std::bit_width(p) - 1;
    if (k <= top) { blocks[static_cast<std::size_t>(k)] += std::pow(std::abs(v), power); }
  }
  int const first = top / 2 + 1;
  if (top - first + 1 < 3) { return out; }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int k = first; k <= top; ++k) {
    double const w = blocks[static_cast<std::size_t>(k)];
    if (!(w > 0)) { return out; }
    double const y = std::log(w * (k + 0.5));
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
    ++n;
  }
  double const slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  out.ratio = std::exp(slope);
  if (out.ratio >= 1.02) {
    out.behavior = SeriesBehavior::Divergent;
  } else if (out.ratio <= 0.95) {
    out.behavior = SeriesBehavior::Convergent;
  }
  return out;
}

ZeroCertificate certify_zero(MultiIndexPoly const &P, std::map<u64, cd> const &z_map)
{
  CompiledPoly const poly(P);
  int const d = poly.dimension();
  ZeroCertificate cert;
  std::vector<cd> z(static_cast<std::size_t>(d), cd(0)), grad(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    auto const it = z_map.find(poly.primes()[static_cast<std::size_t>(k)]);
    if (it != z_map.end()) { z[static_cast<std::size_t>(k)] = it->second; }
  }
  for (auto const &[p, v] : z_map) {
    if (!std::binary_search(poly.primes().begin(), poly.primes().end(), p) && std::abs(v) >= 1.0) { return cert; }
  }
  cd const val = poly.value_and_gradient(z, grad);
  cert.value_modulus = std::abs(val);
  double gnorm = 0;
  for (auto const &g : grad) { gnorm += std::norm(g); }
  gnorm = std::sqrt(gnorm);
  if (d == 0 || !(gnorm > 0)) { return cert; }
  std::vector<cd> v(static_cast<std::size_t>(d));
  double zmax = 0, vmax = 0;
  for (int k = 0; k < d; ++k) {
    v[static_cast<std::size_t>(k)] = std::conj(grad[static_cast<std::size_t>(k)]) / gnorm;
    zmax = std::max(zmax, std::abs(z[static_cast<std::size_t>(k)]));
    vmax = std::max(vmax, std::abs(v[static_cast<std::size_t>(k)]));
  }
  for (auto const &[p, w] : z_map) { zmax = std::max(zmax, std::abs(w)); }

  // g(w) = P(z + w v) has degree <= D; recover its coefficients from K samples
  // on |w| = rho and bound the rounding error of each.
  unsigned D = 0;
  double M = 0;
  double const rho = 0.25;
  for (std::size_t t = 0; t < poly.num_terms(); ++t) {
    unsigned deg = 0;
    double mag = std::abs(poly.coefficient(t));
    for (int k = 0; k < d; ++k) {
      deg += poly.exponent(t, k);
      mag *= std::pow(std::abs(z[static_cast<std::size_t>(k)]) + rho * std::abs(v[static_cast<std::size_t>(k)]),
                      static_cast<int>(poly.exponent(t, k)));
    }
    D = std::max(D, deg);
    M += mag;
  }
  std::size_t const K = D + 1;
  std::vector<cd> samples(K), point(static_cast<std::size_t>(d));
  for (std::size_t j = 0; j < K; ++j) {
    cd const w = std::polar(rho, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(K));
    for (int k = 0; k < d; ++k) { point[static_cast<std::size_t>(k)] = z[static_cast<std::size_t>(k)] + w * v[static_cast<std::size_t>(k)]; }
    samples[j] = poly.value(point);
  }
  std::vector<double> c(K), e(K);
  double const raw_err = 16.0 * static_cast<double>(K + poly.num_terms() * (D + 1)) * kEps * (M + 1.0);
  for (std::size_t k = 0; k < K; ++k) {
    cd acc = 0;
    for (std::size_t j = 0; j < K; ++j) {
      acc += samples[j] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(j * k % K) / static_cast<double>(K));
    }
    double const scale = std::pow(rho, static_cast<double>(k));
    c[k] = std::abs(acc) / static_cast<double>(K) / scale;
    e[k] = raw_err / scale;
  }
  c[0] = std::max(c[0], cert.value_modulus);
  if (K < 2) { return cert; }

  for (double r = 1e-10; r <= 1e-2; r *= 10.0) {
    double const reach = zmax + r * vmax;
    if (!(reach < 1.0)) { break; }
    double rhs = c[0] + e[0];
    for (std::size_t k = 2; k < K; ++k) { rhs += (c[k] + e[k]) * std::pow(r, static_cast<double>(k)); }
    double const lhs = (c[1] - e[1]) * r;
    if (lhs > rhs * (1.0 + 1e-12)) {
      cert.verified = true;
      cert.radius = r;
      cert.max_modulus = reach;
      return cert;
    }
  }
  return cert;
}

CriterionVerdict riesz_check(SineSystemSpec const &spec, FactorTable const &table, CheckOptions const &options)
{
  CriterionVerdict v;
  auto const &a = spec.coeffs;
  u64 const N = static_cast<u64>(a.size());
  auto const &tail = spec.tail;

  if (tail.kind != TailKind::Zero) {
    v.rule = rules::kTotallyMultiplicativeL1;
    double const bmax = max_abs(tail.primes);
    v.certificate["max_abs_prime_value"] = bmax;
    if (bmax >= 1.0) {
      if (tail.kind == TailKind::ReciprocalTotallyMultiplicative) {
        v.status = VerdictStatus::No;
        v.notes.push_back("some |b_p| >= 1: 1/S(phi) is not a bounded multiplier");
      } else {
        v.status = VerdictStatus::Unknown;
        v.rule = rules::kNone;
        v.notes.push_back("some |a_p| >= 1: S(phi) is not in H");
      }
      return v;
    }
    auto const cls = classify_tail(tail, 1.0, N);
    v.certificate["sum_abs_prime_values"] = cls.partial_sum;
    v.certificate["block_ratio"] = cls.ratio;
    auto const mn = euler_multiplier_norm(tail.primes);
    bool const tm = tail.kind == TailKind::TotallyMultiplicative;
    v.certificate["multiplier_norm"] = tm ? mn.forward : mn.reciprocal;
    v.certificate["reciprocal_multiplier_norm"] = tm ? mn.reciprocal : mn.forward;
    v.tail_extrapolated = !cls.finite_support && !cls.declared;
    switch (cls.behavior) {
    case SeriesBehavior::Convergent: v.status = VerdictStatus::Yes; break;
    case SeriesBehavior::Divergent:
      v.status = VerdictStatus::No;
      v.notes.push_back("sum |a_p| diverges over the represented primes");
      break;
    case SeriesBehavior::Inconclusive:
      v.rule = rules::kNone;
      v.notes.push_back("convergence of sum |a_p| inconclusive at this truncation");
      break;
    }
    return v;
  }

  double const s = sum_abs_tail(a);
  v.certificate["sum_abs_tail"] = s;
  if (s < 1.0) {
    v.status = VerdictStatus::Yes;
    v.rule = rules::kSmallPerturbationL1;
    v.certificate["lower_frame_bound"] = 1.0 - s;
    v.certificate["upper_frame_bound"] = 1.0 + s;
    return v;
  }
  if (prime_supported(a, table)) {
    v.status = VerdictStatus::No;
    v.rule = rules::kPrimeLinearL1Necessity;
    v.boundary = std::abs(s - 1.0) <= options.tie_tolerance;
    return v;
  }
  attach_sup_evidence(v, a, table, options);
  return v;
}

CriterionVerdict completeness_check(SineSystemSpec const &spec, FactorTable const &table, CheckOptions const &options)
{
  auto const &a = spec.coeffs;
  if (std::abs(a[1] - 1.0) > 1e-12) { throw std::invalid_argument("completeness_check: a_1 must be normalized to 1"); }
  CriterionVerdict v;
  u64 const N = static_cast<u64>(a.size());
  auto const &tail = spec.tail;

  if (tail.kind == TailKind::Zero && prime_supported(a, table)) {
    v.rule = rules::kPrimeLinearL1;
    auto const pv = prime_coefficients(a, table);
    CompensatedSum<double> acc;
    for (auto const &[p, c] : pv) { acc.add(std::abs(c)); }
    double const S = acc.value();
    v.certificate["sum_abs_prime_coefficients"] = S;
    if (S <= 1.0 + options.tie_tolerance) {
      v.status = VerdictStatus::Yes;
      v.boundary = std::abs(S - 1.0) <= options.tie_tolerance;
      if (v.boundary) { v.notes.push_back("Boundary-Yes"); }
      return v;
    }
    // z_p = -conj(a_p) / (|a_p| S) solves 1 + sum a_p z_p = 0 with |z_p| = 1/S
    std::map<u64, cd> z;
    for (auto const &[p, c] : pv) { z[p] = -std::conj(c) / (std::abs(c) * S); }
    auto const P = lift(a, table);
    auto const cert = certify_zero(P, z);
    attach_witness(v, z, cert);
    if (cert.verified && cert.value_modulus < 1e-8) {
      v.status = VerdictStatus::No;
    } else {
      v.rule = rules::kNone;
      v.notes.push_back("zero witness failed verification");
    }
    return v;
  }

  if (tail.kind != TailKind::Zero) {
    double const bmax = max_abs(tail.primes);
    v.certificate["max_abs_prime_value"] = bmax;
    if (bmax >= 1.0) {
      v.notes.push_back("some |b_p| >= 1: the Euler product is not in H");
      return v;
    }
    auto const cls = classify_tail(tail, 2.0, N);
    v.certificate["sum_sq_prime_values"] = cls.partial_sum;
    v.certificate["block_ratio"] = cls.ratio;
    if (cls.behavior != SeriesBehavior::Convergent) {
      v.tail_extrapolated = !cls.declared;
      v.notes.push_back(cls.behavior == SeriesBehavior::Divergent
                          ? "sum |b_p|^2 diverges: the Euler product is not in H"
                          : "convergence of sum |b_p|^2 inconclusive at this truncation");
      return v;
    }
    auto const en = euler_norms(tail.primes);
    bool const tm = tail.kind == TailKind::TotallyMultiplicative;
    v.status = VerdictStatus::Yes;
    v.rule = tm ? rules::kTotallyMultiplicative : rules::kDivisorWeightedNorms;
    v.tail_extrapolated = !cls.finite_support && !cls.declared;
    v.certificate["norm_hd_sq"] = tm ? en.norm_hd_sq : en.reciprocal_norm_hd_sq;
    v.certificate["reciprocal_norm_hd_sq"] = tm ? en.reciprocal_norm_hd_sq : en.norm_hd_sq;
    return v;
  }

  double const s = sum_abs_tail(a);
  v.certificate["sum_abs_tail"] = s;
  if (s < 1.0) {
    v.status = VerdictStatus::Yes;
    v.rule = rules::kBoundedMultiplierHReciprocal;
    v.certificate["multiplier_norm_upper"] = 1.0 + s;
    v.certificate["reciprocal_norm_h_upper"] = 1.0 / (1.0 - s);
    return v;
  }

  auto const P = lift(a, table);
  if (static_cast<int>(P.prime_support.size()) <= kZeroSearchMaxDimension) {
    CompiledPoly const poly(P);
    if (auto const z = search_zero(poly, options)) {
      std::map<u64, cd> zm;
      for (int k = 0; k < poly.dimension(); ++k) { zm[poly.primes()[static_cast<std::size_t>(k)]] = (*z)[static_cast<std::size_t>(k)]; }
      auto const cert = certify_zero(P, zm);
      if (cert.verified && cert.value_modulus < 1e-8) {
        v.status = VerdictStatus::No;
        v.rule = rules::kPolydiskZero;
        attach_witness(v, zm, cert);
        return v;
      }
      v.notes.push_back("approximate zero found but not certified");
    } else {
      v.notes.push_back("no zero found inside the polydisk");
    }
  } else {
    v.notes.push_back("zero search skipped: more than 4 support primes");
  }
  return v;
}

} // namespace dseries
