#include "dseries/dilation.hpp"
#include "dseries/errors.hpp"
#include "dseries/parallel.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dseries {

namespace {

using cd = std::complex<double>;

bool close(cd x, cd y) { return std::abs(x - y) <= 1e-12 * std::max({1.0, std::abs(x), std::abs(y)}); }

PrimeValues represented_primes(DirichletPoly<double> const &a, FactorTable const &table, double sign)
{
  PrimeValues pv;
  for (u64 p : table.primes()) {
    if (p > static_cast<u64>(a.size())) { break; }
    if (a[static_cast<Index>(p)] != cd(0)) { pv[p] = sign * a[static_cast<Index>(p)]; }
  }
  return pv;
}

std::vector<cd> extend_up_to(PrimeValues const &b, u64 N, FactorTable const &table)
{
  PrimeValues head(b.begin(), b.upper_bound(N));
  return extend_multiplicatively(head, N, table);
}

// a_n = mu(n) b_n, b totally multiplicative
std::vector<cd> mobius_twist(PrimeValues const &b, u64 N, FactorTable const &table)
{
  auto v = extend_up_to(b, N, table);
  for (u64 n = 1; n <= N; ++n) { v[n] *= static_cast<double>(table.mobius(n)); }
  return v;
}

void require_table(u64 N, FactorTable const &table)
{
  if (N > table.limit()) { throw std::invalid_argument("factor table too small for length " + std::to_string(N)); }
}

} // namespace

std::string to_string(TailKind kind)
{
  switch (kind) {
  case TailKind::Zero: return "zero";
  case TailKind::TotallyMultiplicative: return "totally-multiplicative";
  case TailKind::ReciprocalTotallyMultiplicative: return "reciprocal-totally-multiplicative";
  }
  return "zero";
}

TailKind tail_kind_from_string(std::string const &name)
{
  if (name == "zero") { return TailKind::Zero; }
  if (name == "totally-multiplicative" || name == "tm") { return TailKind::TotallyMultiplicative; }
  if (name == "reciprocal-totally-multiplicative" || name == "rtm") { return TailKind::ReciprocalTotallyMultiplicative; }
  throw std::invalid_argument("unknown tail model '" + name + "'");
}

TailModel detect_tail(DirichletPoly<double> const &a, FactorTable const &table)
{
  u64 const N = static_cast<u64>(a.size());
  require_table(N, table);
  TailModel tail;
  if (!close(a[1], 1.0)) { return tail; }
  auto const pv = represented_primes(a, table, 1.0);
  if (pv.empty()) { return tail; }

  auto matches = [&](std::vector<cd> const &expected) {
    for (u64 n = 1; n <= N; ++n) {
      if (!close(a[static_cast<Index>(n)], expected[n])) { return false; }
    }
    return true;
  };
  if (N >= 4 && matches(extend_multiplicatively(pv, N, table))) {
    tail.kind = TailKind::TotallyMultiplicative;
    tail.primes = pv;
    return tail;
  }
  auto const neg = represented_primes(a, table, -1.0);
  if (N >= 6 && matches(mobius_twist(neg, N, table))) {
    tail.kind = TailKind::ReciprocalTotallyMultiplicative;
    tail.primes = neg;
  }
  return tail;
}

SineSystemSpec SineSystemSpec::normalized(DirichletPoly<double> const &a, FactorTable const &table, bool detect)
{
  if (a[1] == cd(0)) { throw NonInvertibleError("sine system: a_1 = 0 cannot be normalized"); }
  SineSystemSpec spec;
  spec.original_a1 = a[1];
  DirichletPoly<double>::Coeffs c = a.indexed() / a[1];
  spec.coeffs = DirichletPoly<double>(std::move(c));
  if (detect) { spec.tail = detect_tail(spec.coeffs, table); }
  return spec;
}

SineSystemSpec SineSystemSpec::totally_multiplicative(PrimeValues const &b, u64 N, FactorTable const &table)
{
  require_table(N, table);
  SineSystemSpec spec;
  spec.coeffs = DirichletPoly<double>(extend_up_to(b, N, table));
  spec.tail.kind = TailKind::TotallyMultiplicative;
  spec.tail.primes = b;
  return spec;
}

SineSystemSpec SineSystemSpec::reciprocal_totally_multiplicative(PrimeValues const &b, u64 N, FactorTable const &table)
{
  require_table(N, table);
  SineSystemSpec spec;
  spec.coeffs = DirichletPoly<double>(mobius_twist(b, N, table));
  spec.tail.kind = TailKind::ReciprocalTotallyMultiplicative;
  spec.tail.primes = b;
  return spec;
}

DirichletPoly<double> materialize(SineSystemSpec const &spec, u64 N, FactorTable const &table)
{
  if (N < 1) { throw std::invalid_argument("materialize: N must be >= 1"); }
  switch (spec.tail.kind) {
  case TailKind::TotallyMultiplicative:
    require_table(N, table);
    return DirichletPoly<double>(extend_up_to(spec.tail.primes, N, table));
  case TailKind::ReciprocalTotallyMultiplicative:
    require_table(N, table);
    return DirichletPoly<double>(mobius_twist(spec.tail.primes, N, table));
  case TailKind::Zero: break;
  }
  DirichletPoly<double> out(static_cast<Index>(N));
  Index const n_copy = std::min<Index>(static_cast<Index>(N), spec.coeffs.size());
  for (Index n = 1; n <= n_copy; ++n) { out[n] = spec.coeffs[n]; }
  return out;
}

DirichletPoly<double> s_transform(SineSystemSpec const &spec) { return spec.coeffs; }

DirichletPoly<double> dilate_expand(SineSystemSpec const &spec, u64 j, u64 N)
{
  u64 const L = static_cast<u64>(spec.coeffs.size());
  if (j < 1) { throw std::invalid_argument("dilate_expand: j must be >= 1"); }
  if (N < j * L) {
    throw std::invalid_argument("dilate_expand: truncation " + std::to_string(N) + " below j * len(a) = " +
                                std::to_string(j * L));
  }
  DirichletPoly<double> out(static_cast<Index>(N));
  for (u64 m = 1; m <= L; ++m) { out[static_cast<Index>(m * j)] = spec.coeffs[static_cast<Index>(m)]; }
  return out;
}

GramSection<double> gram_section(DirichletPoly<double> const &a, Index J, int threads, u64 basis_limit)
{
  if (J < 1) { throw std::invalid_argument("gram_section: J must be >= 1"); }
  Index const L = a.size();
  u64 const needed = static_cast<u64>(J) * static_cast<u64>(L);
  if (basis_limit != 0 && basis_limit < needed) {
    throw std::invalid_argument("gram_section: basis truncation " + std::to_string(basis_limit) +
                                " below J * len(a) = " + std::to_string(needed));
  }
  std::vector<Index> nonzero;
  for (Index n = 1; n <= L; ++n) {
    if (a[n] != cd(0)) { nonzero.push_back(n); }
  }

  GramSection<double> out;
  out.G = GramSection<double>::Matrix::Zero(J, J);
  parallel_for(static_cast<std::size_t>(J), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      Index const j = static_cast<Index>(row) + 1;
      for (Index k = j; k <= J; ++k) {
        Index const g = std::gcd(j, k);
        Index const jp = j / g, kp = k / g;
        Index const t_max = L / std::max(jp, kp);
        cd sum = 0;
        if (static_cast<Index>(nonzero.size()) < t_max) {
          for (Index m : nonzero) {
            if (m % kp != 0) { continue; }
            Index const t = m / kp;
            if (t > t_max) { break; }
            sum += a[m] * std::conj(a[jp * t]);
          }
        } else {
          for (Index t = 1; t <= t_max; ++t) { sum += a[kp * t] * std::conj(a[jp * t]); }
        }
        out.G(j - 1, k - 1) = sum;
        out.G(k - 1, j - 1) = std::conj(sum);
      }
    }
  });
  for (Index j = 0; j < J; ++j) { out.G(j, j) = out.G(j, j).real(); }
  return out;
}

GramSection<double> gram_section(SineSystemSpec const &spec, Index J, int threads, u64 basis_limit)
{
  return gram_section(spec.coeffs, J, threads, basis_limit);
}

FrameBounds frame_bounds_estimate(GramSection<double> const &section)
{
  if (section.size() < 1) { throw std::invalid_argument("frame_bounds_estimate: empty section"); }
  Eigen::SelfAdjointEigenSolver<GramSection<double>::Matrix> solver(section.G, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) { throw NumericalError("frame_bounds_estimate: eigensolver failed"); }
  auto const &ev = solver.eigenvalues();
  FrameBounds fb{ev.minCoeff(), ev.maxCoeff()};
  if (fb.min_eig < -1e-10) {
    throw NumericalError("frame_bounds_estimate: section is not positive semidefinite (min eigenvalue " +
                         std::to_string(fb.min_eig) + ")");
  }
  return fb;
}

BiorthogonalSystem biorthogonal_system(SineSystemSpec const &spec, Index N, FactorTable const &table)
{
  if (N < 1) { throw std::invalid_argument("biorthogonal_system: N must be >= 1"); }
  auto const a = materialize(spec, static_cast<u64>(N), table);
  if (a[1] == cd(0)) { throw NonInvertibleError("biorthogonal_system: a_1 = 0"); }
  auto const b = reciprocal(a);

  BiorthogonalSystem out;
  out.psi.assign(static_cast<std::size_t>(N), DirichletPoly<double>(N));
  for (Index d = 1; d <= N; ++d) {
    for (Index m = 1; d * m <= N; ++m) { out.psi[static_cast<std::size_t>(d * m - 1)][d] = std::conj(b[m]); }
  }

  for (Index j = 1; j <= N; ++j) {
    for (Index k = 1; k <= N; ++k) {
      auto const &psi_k = out(k);
      cd ip = 0;
      for (Index m = 1; m * j <= N; ++m) { ip += a[m] * std::conj(psi_k[m * j]); }
      double const err = std::abs(ip - (j == k ? 1.0 : 0.0));
      out.max_biorthogonality_error = std::max(out.max_biorthogonality_error, err);
    }
  }

  for (Index n = 1; n <= N; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(N + 1);
    v(n) = 1.0;
    for (Index d = 1; d <= n; ++d) {
      if (n % d != 0) { continue; }
      v -= std::conj(a[n / d]) * out(d).indexed();
    }
    out.max_expansion_error = std::max(out.max_expansion_error, v.cwiseAbs().maxCoeff());
  }
  return out;
}

} // namespace dseries
