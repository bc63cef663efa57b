#pragma once

#include "dseries/bohrlift.hpp"
#include "dseries/dilation.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace dseries {

enum class VerdictStatus
{
  Yes,
  No,
  Unknown,
};

std::string to_string(VerdictStatus status);

/// Rule identifiers used in verdicts.
namespace rules {
inline constexpr char const *kTotallyMultiplicativeL1 = "totally-multiplicative-l1";
inline constexpr char const *kSmallPerturbationL1 = "small-perturbation-l1";
inline constexpr char const *kPrimeLinearL1Necessity = "prime-linear-l1-necessity";
inline constexpr char const *kPrimeLinearL1 = "prime-linear-l1";
inline constexpr char const *kTotallyMultiplicative = "totally-multiplicative";
inline constexpr char const *kDivisorWeightedNorms = "divisor-weighted-norms";
inline constexpr char const *kBoundedMultiplierHReciprocal = "bounded-multiplier-with-h-reciprocal";
inline constexpr char const *kPolydiskZero = "polydisk-zero";
inline constexpr char const *kNone = "none";
} // namespace rules

struct CriterionVerdict
{
  VerdictStatus status = VerdictStatus::Unknown;
  std::string rule = rules::kNone;
  std::map<std::string, double> certificate;
  std::map<u64, std::complex<double>> witness;  ///< zero of the lifted polynomial, when one was used
  std::vector<std::string> notes;
  bool boundary = false;           ///< decided within 1e-12 of a threshold
  bool tail_extrapolated = false;  ///< depends on extrapolating the represented primes
};

enum class SeriesBehavior
{
  Convergent,
  Divergent,
  Inconclusive,
};

std::string to_string(SeriesBehavior behavior);

struct PrimeSeriesClassification
{
  SeriesBehavior behavior = SeriesBehavior::Inconclusive;
  double partial_sum = 0;  ///< sum over represented primes of |b_p|^power
  double ratio = 0;        ///< fitted growth ratio of successive dyadic blocks
  bool finite_support = false;
  bool declared = false;
};

/// Guesses whether sum_p |b_p|^power converges from the primes p <= limit.
/// Dyadic block sums, weighted by the block's log, are fitted over the upper
/// half of complete blocks: ratio >= 1.02 is divergent, ratio <= 0.95 is
/// convergent. If no nonzero prime lies in the top full block the support is
/// taken as finite.
PrimeSeriesClassification classify_prime_series(PrimeValues const &b, double power, u64 limit);

struct CheckOptions
{
  SupNormOptions sup_norm{};
  std::uint64_t seed = 0;  ///< zero search starts
  int zero_search_starts = 256;
  double tie_tolerance = 1e-12;
};

/// Riesz-basis decision for the dilates of phi on the decidable subclasses.
CriterionVerdict riesz_check(SineSystemSpec const &spec, FactorTable const &table, CheckOptions const &options = {});

/// Completeness decision for the dilates of phi. Requires a_1 = 1.
CriterionVerdict completeness_check(SineSystemSpec const &spec, FactorTable const &table,
                                    CheckOptions const &options = {});

/// One-variable Rouche certificate that P has a zero within distance r of z
/// along a direction v, with the disk inside the open polydisk.
struct ZeroCertificate
{
  bool verified = false;
  double value_modulus = 0;  ///< |P(z)|
  double radius = 0;         ///< r
  double max_modulus = 0;    ///< max_p |z_p| + r
};

ZeroCertificate certify_zero(MultiIndexPoly const &P, std::map<u64, std::complex<double>> const &z);

} // namespace dseries
