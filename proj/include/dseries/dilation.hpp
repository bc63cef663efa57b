#pragma once

#include "dseries/dirichlet_poly.hpp"
#include "dseries/numtheory.hpp"

#include <Eigen/Core>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace dseries {

/// How the coefficients continue past the stored truncation.
enum class TailKind
{
  Zero,                            ///< a_n = 0 for n > N
  TotallyMultiplicative,           ///< prod (1 - b_p p^{-s})^{-1}
  ReciprocalTotallyMultiplicative, ///< prod (1 - b_p p^{-s}), i.e. a_n = mu(n) b_n
};

std::string to_string(TailKind kind);
TailKind tail_kind_from_string(std::string const &name);

struct TailModel
{
  TailKind kind = TailKind::Zero;
  /// b_p for the represented primes (both multiplicative kinds).
  PrimeValues primes;
  /// Analytic facts about the full prime sequence supplied by a construction;
  /// when unset, checkers extrapolate from the represented primes.
  std::optional<bool> declared_l1_convergent;  ///< sum |b_p| < inf
  std::optional<bool> declared_l2_convergent;  ///< sum |b_p|^2 < inf
};

/// phi(x) = sum a_n e_n(x), e_n(x) = sqrt(2) sin(n pi x), normalized to a_1 = 1.
struct SineSystemSpec
{
  DirichletPoly<double> coeffs{1};
  std::complex<double> original_a1 = 1;
  TailModel tail;

  /// Divides by a_1 (NonInvertibleError if a_1 = 0). With `detect`, the tail
  /// model is inferred from the coefficients.
  static SineSystemSpec normalized(DirichletPoly<double> const &a, FactorTable const &table, bool detect = true);
  static SineSystemSpec totally_multiplicative(PrimeValues const &b, u64 N, FactorTable const &table);
  static SineSystemSpec reciprocal_totally_multiplicative(PrimeValues const &b, u64 N, FactorTable const &table);
};

/// Totally multiplicative on [1, N] (N >= 4) gives TotallyMultiplicative;
/// a_n = mu(n) prod_{p|n} (-a_p) on [1, N] (N >= 6) gives the reciprocal kind;
/// a series whose prime values all vanish, or anything else, gives Zero.
TailModel detect_tail(DirichletPoly<double> const &a, FactorTable const &table);

/// Coefficients 1..N under the tail model.
DirichletPoly<double> materialize(SineSystemSpec const &spec, u64 N, FactorTable const &table);

/// S(phi): the coefficients themselves.
DirichletPoly<double> s_transform(SineSystemSpec const &spec);

/// Sine coefficients of phi_j(x) = phi(jx) up to index N: a_m at mj.
/// Throws std::invalid_argument if N < j * len(a).
DirichletPoly<double> dilate_expand(SineSystemSpec const &spec, u64 j, u64 N);

template <typename Scalar = double> struct GramSection
{
  using Matrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix G;  ///< G(j-1, k-1) = <phi_j, phi_k>

  Index size() const { return G.rows(); }
};

/// G_jk = sum_t a_{k't} conj(a_{j't}), j' = j/g, k' = k/g, g = gcd(j, k).
/// `basis_limit` is the sine-basis truncation the section is taken in; it
/// must be at least J * len(a) (0 selects exactly that).
GramSection<double> gram_section(DirichletPoly<double> const &a, Index J, int threads = 1, u64 basis_limit = 0);
GramSection<double> gram_section(SineSystemSpec const &spec, Index J, int threads = 1, u64 basis_limit = 0);

struct FrameBounds
{
  double min_eig = 0;  ///< upper bound for A^2
  double max_eig = 0;  ///< lower bound for B^2
};

/// Extreme eigenvalues of a Gram section. Throws NumericalError if the
/// section has an eigenvalue below -1e-10.
FrameBounds frame_bounds_estimate(GramSection<double> const &section);

struct BiorthogonalSystem
{
  /// psi[n-1] holds the sine coefficients of psi_n (length N).
  std::vector<DirichletPoly<double>> psi;
  double max_biorthogonality_error = 0;  ///< max |<phi_j, psi_k> - delta_jk|
  double max_expansion_error = 0;        ///< max |e_n - sum_{d|n} conj(a_{n/d}) psi_d|

  DirichletPoly<double> const &operator()(Index n) const { return psi[static_cast<std::size_t>(n - 1)]; }
};

/// psi_n = sum_{d|n} conj(b_{n/d}) e_d with b the coefficients of 1/S(phi).
BiorthogonalSystem biorthogonal_system(SineSystemSpec const &spec, Index N, FactorTable const &table);

} // namespace dseries
