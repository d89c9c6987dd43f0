#pragma once

#include <complex>
#include <mutex>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace xizeros {

/// Variable-precision real. Precision of new values follows the active
/// PrecisionScope.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Complex = std::complex<Real>;

/// Working/target digit budget shared by every numeric operation.
///
/// working_digits is the mantissa size used for arithmetic, target_digits
/// the number of digits callers may rely on in reported results. The gap
/// between them (at least 10 digits) absorbs cancellation in the oscillatory
/// transforms.
class PrecisionContext {
 public:
  PrecisionContext() : PrecisionContext(50, 30, 16) {}
  PrecisionContext(int working_digits, int target_digits, int max_refinements = 16);

  /// Context with the default 20-digit guard band above `target_digits`.
  static PrecisionContext for_target(int target_digits, int max_refinements = 16);

  int working_digits() const { return working_digits_; }
  int target_digits() const { return target_digits_; }
  int max_refinements() const { return max_refinements_; }

  /// 10^(-target_digits-2): inter-level tolerance used by adaptive routines.
  Real refinement_tolerance() const;
  /// 10^(-working_digits): relative rounding unit.
  Real rounding_unit() const;

  /// Same guard band, target raised by `extra` digits.
  PrecisionContext widened(int extra) const;

  std::string summary() const;

  friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

 private:
  int working_digits_;
  int target_digits_;
  int max_refinements_;
};

/// Sets the Real default precision for its lifetime and serializes access to
/// that process-wide setting. Nested scopes on one thread are allowed.
class PrecisionScope {
 public:
  explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.working_digits()) {}
  explicit PrecisionScope(int digits);
  ~PrecisionScope();

  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned previous_;
};

Real pi();
Real pow10(int exponent);
Real from_decimal(const std::string& text);

/// Sets s = sin(x), c = cos(x) in one MPFR call.
void sin_cos(const Real& x, Real& s, Real& c);

/// Formats |x| >= 1e-99 with `digits` significant digits; smaller values print as "0".
std::string to_decimal(const Real& x, int digits);

double to_double(const Real& x);

}  // namespace xizeros
