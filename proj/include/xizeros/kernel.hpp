#pragma once

#include "xizeros/bounded.hpp"
#include "xizeros/precision.hpp"

namespace xizeros {

/// Truncation of the kernel series G(x) = sum_m [2 pi^2 m^4 e^{9x} - 3 pi m^2 e^{5x}] exp(-pi m^2 e^{4x})
/// in both the summation index and the integration domain.
struct KernelTruncation {
  int m_max = 1;
  Real x_max{1};
  /// Bound on the neglected mass: terms m > m_max over [0, x_max] plus the
  /// whole integrand beyond x_max.
  Real tail_bound{0};
};

/// Extra factors the truncation must absorb besides e^{-aleph x^2} and cosh(tau x).
struct TruncationWeight {
  /// Integrand carries x^power (moments, lambda-derivatives).
  int power = 0;
  /// Additional nats of margin, e.g. to make the tail relative to a small integral.
  double extra_margin = 0.0;
};

/// Plans (m_max, x_max) for integrands e^{-aleph x^2} G(x) cosh(tau x) x^power
/// with |tau| <= tau_abs_bound.
///
/// m_max is the least m with pi m^2 >= target*ln10 + 25 + extra_margin (the
/// omitted terms peak near x = 0, where x^power gives no damping); x_max is the least
/// x >= 0 with pi e^{4x} - 9x - tau_abs_bound*x + aleph x^2 - power*ln(max(x,1))
/// >= target*ln10 + 25 + extra_margin.
KernelTruncation plan_truncation(const Real& aleph, double tau_abs_bound, const PrecisionContext& ctx,
                                 TruncationWeight weight = {});

/// G(x) for 0 <= x <= trunc.x_max, radius covering the omitted m > m_max terms.
/// Throws OutOfDomain outside that interval.
BoundedReal eval_kernel(const Real& x, const KernelTruncation& trunc, const PrecisionContext& ctx);

}  // namespace xizeros
