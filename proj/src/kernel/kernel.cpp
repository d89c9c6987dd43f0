#include "xizeros/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xizeros/error.hpp"

namespace xizeros {

namespace {

constexpr double kPi = std::numbers::pi;
// Covers the polynomial prefactor 2 pi^2 m^4 e^{9x} over the planned domain.
constexpr double kPrefactorMargin = 25.0;

struct DecayExponent {
  double tau;
  double aleph;
  int power;

  double log_weight(double x) const { return x > 1.0 ? power * std::log(x) : 0.0; }
  // pi e^{4x} - (9 + tau) x + aleph x^2 - power ln max(x, 1)
  double value(double x) const {
    return kPi * std::exp(4 * x) - (9 + tau) * x + aleph * x * x - log_weight(x);
  }
  double slope(double x) const {
    return 4 * kPi * std::exp(4 * x) - (9 + tau) + 2 * aleph * x - (x > 1.0 ? power / x : 0.0);
  }
  double curvature(double x) const {
    return 16 * kPi * std::exp(4 * x) + 2 * aleph + (x > 1.0 ? power / (x * x) : 0.0);
  }
};

double solve_x_max(const DecayExponent& f, double margin) {
  double step = 1e-3;
  double x = 0.0;
  while (f.value(x) < margin) {
    x += step;
    if (x > 8.0) step = 1e-2;
  }
  double lo = std::max(0.0, x - step), hi = x;
  for (int i = 0; i < 80 && hi - lo > 1e-13; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f.value(mid) >= margin ? hi : lo) = mid;
  }
  x = hi;
  // The x-tail estimate integrates a tangent line, valid once f is increasing and convex.
  while (f.value(x) < margin || f.slope(x) <= 0 || f.curvature(x) < 0) x += 1e-3;
  return std::ceil(x * 1e9) / 1e9;
}

// log of the m-th term's majorant 2 pi^2 m^4 e^{9x} + 3 pi m^2 e^{5x}, times
// e^{-aleph x^2 + tau x} x^power, times exp(-pi m^2 e^{4x}).
double log_term(int m, double x, const DecayExponent& f) {
  const double m2 = static_cast<double>(m) * m;
  const double poly = std::log(2 * kPi * kPi * m2 * m2 * std::exp(9 * x) + 3 * kPi * m2 * std::exp(5 * x));
  return poly - kPi * m2 * std::exp(4 * x) - f.aleph * x * x + f.tau * x + f.log_weight(x);
}

double log_term_slope(int m, double x, const DecayExponent& f) {
  const double m2 = static_cast<double>(m) * m;
  const double a = 2 * kPi * kPi * m2 * m2 * std::exp(9 * x);
  const double b = 3 * kPi * m2 * std::exp(5 * x);
  return (9 * a + 5 * b) / (a + b) - 4 * kPi * m2 * std::exp(4 * x) - 2 * f.aleph * x + f.tau +
         (x > 1.0 ? f.power / x : 0.0);
}

// Upper bound of log_term on [0, x_max] from grid values and tangent slopes.
double max_log_term(int m, double x_max, const DecayExponent& f) {
  constexpr int n = 4000;
  const double dx = x_max / n;
  double best = -INFINITY;
  double prev = log_term(m, 0.0, f);
  double prev_slope = std::abs(log_term_slope(m, 0.0, f));
  for (int i = 1; i <= n; ++i) {
    const double x = dx * i;
    const double cur = log_term(m, x, f);
    const double cur_slope = std::abs(log_term_slope(m, x, f));
    best = std::max(best, std::max(prev, cur) + 0.5 * (prev_slope + cur_slope) * dx);
    prev = cur;
    prev_slope = cur_slope;
  }
  return best;
}

}  // namespace

KernelTruncation plan_truncation(const Real& aleph, double tau_abs_bound, const PrecisionContext& ctx,
                                 TruncationWeight weight) {
  if (!(tau_abs_bound >= 0) || !std::isfinite(tau_abs_bound))
    throw Error(ErrorKind::InvalidArgument, "tau_abs_bound must be finite and nonnegative");
  PrecisionScope scope(ctx);
  const double base = ctx.target_digits() * std::log(10.0) + kPrefactorMargin;

  KernelTruncation plan;
  plan.m_max = 1;
  while (kPi * plan.m_max * plan.m_max < base + weight.extra_margin) ++plan.m_max;

  const DecayExponent f{tau_abs_bound, to_double(aleph), weight.power};
  const double x_max = solve_x_max(f, base + weight.extra_margin);
  plan.x_max = Real(x_max);

  // Beyond x_max the m = 1 term dominates; integrate the tangent-line majorant.
  const double log_x_tail = std::log((2 * kPi * kPi + 3 * kPi) * 1.001) - f.value(x_max) - std::log(f.slope(x_max));
  Real tail = exp(Real(log_x_tail));
  Real m_tail(0);
  for (int m = plan.m_max + 1; m <= plan.m_max + 8; ++m) m_tail += exp(Real(max_log_term(m, x_max, f)));
  // Terms beyond m_max + 8 are smaller than the last included one by far more than 2x.
  tail += 2 * plan.x_max * m_tail;
  plan.tail_bound = tail;
  return plan;
}

BoundedReal eval_kernel(const Real& x, const KernelTruncation& trunc, const PrecisionContext& ctx) {
  if (x < 0 || x > trunc.x_max) throw Error(ErrorKind::OutOfDomain, "kernel argument outside [0, x_max]");
  PrecisionScope scope(ctx);
  const Real p = pi();
  const Real ex = exp(x);
  const Real e2 = ex * ex;
  const Real e4 = e2 * e2;
  const Real e5 = e4 * ex;
  const Real e9 = e4 * e5;
  const Real q = exp(-p * e4);
  const Real q2 = q * q;
  const Real a = 2 * p * p * e9;
  const Real b = 3 * p * e5;

  // q^{m^2} by q^{(m+1)^2} = q^{m^2} q^{2m+1}
  Real qm = q;
  Real odd = q;
  Real sum(0);
  Real abs_sum(0);
  for (int m = 1; m <= trunc.m_max; ++m) {
    const Real m2 = Real(m) * m;
    const Real term = (a * m2 * m2 - b * m2) * qm;
    sum += term;
    abs_sum += abs(term);
    odd *= q2;
    qm *= odd;
  }
  const int next = trunc.m_max + 1;
  const Real n2 = Real(next) * next;
  const Real omitted = 2 * (a * n2 * n2 + b * n2) * qm;
  return {sum, omitted + 4 * ctx.rounding_unit() * abs_sum};
}

}  // namespace xizeros
