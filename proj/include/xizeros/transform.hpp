#pragma once

#include <optional>
#include <string>

#include "xizeros/bounded.hpp"
#include "xizeros/kernel.hpp"
#include "xizeros/precision.hpp"

namespace xizeros {

/// The real deformation parameter aleph, kept as the decimal text it was
/// given so it can be re-read exactly at any working precision.
///
/// Any finite real is accepted. The literature's heat-flow time is t = -aleph.
class AlephParam {
 public:
  explicit AlephParam(std::string decimal);
  explicit AlephParam(int value) : AlephParam(std::to_string(value)) {}

  const std::string& text() const { return text_; }
  /// Value at the active precision.
  Real value() const { return from_decimal(text_); }
  double approx() const;
  /// The same point in the e^{t u^2} convention, as decimal text.
  std::string literature_t() const;

  friend bool operator==(const AlephParam& a, const AlephParam& b) { return a.text_ == b.text_; }

 private:
  std::string text_;
};

struct EvalResult {
  BoundedComplex value;
  /// Truncation used by integral evaluations; empty for series evaluations.
  std::optional<KernelTruncation> plan;
  bool quadrature_converged = true;
};

/// Context used for transforms at real part `re_lambda`: working and target
/// digits are raised in steps of 10 to follow the decay of |Xi| along the real
/// axis, so reported radii stay small relative to the value.
PrecisionContext widened_for_decay(const PrecisionContext& ctx, double re_lambda);

/// M(tau) = int_0^inf e^{-aleph x^2} G(x) cosh(tau x) dx.
EvalResult eval_M(const AlephParam& aleph, const Complex& tau, const PrecisionContext& ctx);

/// Xi(lambda) = M(i lambda) = int_0^inf e^{-aleph x^2} G(x) cos(lambda x) dx.
EvalResult eval_Xi(const AlephParam& aleph, const Complex& lambda, const PrecisionContext& ctx);

/// d^order/dlambda^order Xi(lambda) by differentiating under the integral:
/// order 1 integrand -x w(x) sin(lambda x), order 2 integrand -x^2 w(x) cos(lambda x).
EvalResult eval_Xi_derivative(const AlephParam& aleph, const Real& lambda, int order, const PrecisionContext& ctx);

/// Complex-argument form of eval_Xi_derivative, used by complex Newton polish.
EvalResult eval_Xi_derivative(const AlephParam& aleph, const Complex& lambda, int order,
                              const PrecisionContext& ctx);

/// Both sign forms of the heat-equation residual at a real point.
///
/// d_aleph comes from finite differences of Xi in aleph (base step
/// 10^(-target/3)); d_lambda_lambda from eval_Xi_derivative(order 2).
/// With the e^{-aleph x^2} weight, d_aleph Xi = d_lambda_lambda Xi, so
/// res_minus = |d_aleph - d_lambda_lambda| is the residual expected to vanish;
/// res_plus = |d_aleph + d_lambda_lambda| is the "+" form.
struct HeatResidual {
  BoundedReal d_aleph;
  BoundedReal d_lambda_lambda;
  BoundedReal res_minus;
  BoundedReal res_plus;
};

HeatResidual heat_flow_residual(const AlephParam& aleph, const Real& lambda, const PrecisionContext& ctx);

namespace detail {

/// int_0^{x_max} x^order e^{-aleph x^2} G(x) c_order(lambda x) dx with c_0 = cos,
/// c_1 = -sin, c_2 = -cos, for a raw aleph value. Shared by the public
/// evaluators and by finite differences in aleph.
EvalResult cosine_transform(const Real& aleph, const Complex& lambda, int order, const PrecisionContext& ctx);

/// Drops memoized kernel weights (tests use this to check memo independence).
void clear_weight_cache();

}  // namespace detail

}  // namespace xizeros
