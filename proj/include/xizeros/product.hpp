#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "xizeros/bounded.hpp"
#include "xizeros/series.hpp"
#include "xizeros/transform.hpp"
#include "xizeros/zeros.hpp"

namespace xizeros {

struct ProductTruncation {
  int L = 0;
  /// Estimate of |log| of the omitted factors at the evaluation point.
  Real tail_estimate{0};
};

struct ProductResult {
  EvalResult result;
  ProductTruncation truncation;
};

/// Counting model N(rho) = c1 rho log rho + c0 rho + c2 for the zero moduli
/// of a table. Tables with fewer than kMinFitZeros zeros use the asymptotic
/// density of the aleph = 0 case.
struct DensityFit {
  double c1 = 0.0;
  double c0 = 0.0;
  double c2 = 0.0;

  /// Model estimate of sum_{rho > R} rho^{-2}.
  double tail_beyond(double R) const;
};

inline constexpr int kMinFitZeros = 8;

DensityFit fit_density(const ZeroTable& table);

/// Moduli of the table's zeros, sorted increasing; a stored upper-half
/// complex zero counts once.
std::vector<Real> zero_moduli(const ZeroTable& table);

/// M0 * prod_{l <= L} (1 - lambda^2 / rho_l^2) over the first L table zeros.
/// A complex zero s contributes (1 - lambda^2/s^2)(1 - lambda^2/conj(s)^2).
/// tail_estimate = |lambda|^2 * (model sum of rho^{-2} beyond rho_L).
/// Throws InsufficientZeros when the table holds fewer than L zeros.
ProductResult eval_product(const BoundedReal& M0, const ZeroTable& table, int L, const Complex& lambda,
                           const PrecisionContext& ctx);

struct ZeroSum {
  /// S_k = sum_{l <= k} sigma_l^{-2} with sigma_l = i rho_l, so S_k = -sum rho_l^{-2}.
  std::vector<BoundedComplex> partial_sums;
  /// Model bound on |sum beyond the table|.
  Real tail_estimate{0};
};

/// Throws EmptyTable.
ZeroSum zero_sum(const ZeroTable& table);

/// Model estimate of sum_{l > k} rho_l^{-2} using the table's density fit.
Real zero_sum_tail(const ZeroTable& table, int k);

struct TermwiseDelta {
  int index = 0;
  BoundedComplex delta;
};

/// sigma^{-2} - conj(sigma)^{-2} per stored zero (sigma = i * lambda-zero).
/// Exactly zero when sigma is real or purely imaginary. Throws EmptyTable.
std::vector<TermwiseDelta> termwise_diagnostic(const ZeroTable& table);

/// Same difference for a single sigma.
BoundedComplex termwise_delta(const Complex& sigma);

inline constexpr std::array<double, 4> kOrderRadii{160, 320, 640, 1280};

/// Order of M from log log max_{|tau|=r} |M| ~ beta log r: least squares
/// through the origin over kOrderRadii (max taken over tau = +-r). Smaller
/// radii are unusable since M(r) < 1 there at aleph = 0. The radius is the
/// largest deviation of log log M(r) / log r from the fitted beta.
BoundedReal estimate_order(const AlephParam& aleph, const PrecisionContext& ctx);

enum class Check { Conj, Even, SeriesEqIntegral, SeriesEqProduct, ConjProduct, SumEq, Theta0, Positivity };

std::string to_string(Check c);
/// Accepts the upper-case names ("CONJ", "SERIES_EQ_PRODUCT", ...). Throws ParseError.
Check parse_check(const std::string& name);
std::vector<Check> all_checks();

struct IdentityReport {
  std::string name;
  BoundedComplex lhs;
  BoundedComplex rhs;
  Real residual{0};
  Real tolerance{0};
  bool pass = false;
  std::string notes;
};

struct SuiteInputs {
  int zeros = 50;
  int gamma_max = kDefaultGammaMax;
  std::vector<Complex> points;
  /// Precomputed tables; computed on demand when empty.
  std::optional<ZeroTable> zero_table;
  std::optional<CoefficientTable> coefficients;

  static SuiteInputs defaults();
};

/// Real zeros of Xi from 0 upward, scanned in blocks of 100 until `count`
/// are found or the 1000 limit is reached (then InsufficientZeros). Every
/// zero of the scanned blocks is kept, so the table may hold more than
/// `count`; the extra zeros sharpen the density fit.
ZeroTable first_real_zeros(const AlephParam& aleph, int count, const PrecisionContext& ctx);

std::vector<IdentityReport> check_identities(const AlephParam& aleph, const std::vector<Check>& suite,
                                             const PrecisionContext& ctx,
                                             SuiteInputs inputs = SuiteInputs::defaults());

}  // namespace xizeros
