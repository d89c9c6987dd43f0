#pragma once

#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "xizeros/bounded.hpp"
#include "xizeros/error.hpp"
#include "xizeros/precision.hpp"

namespace xizeros {

/// n-point Gauss-Legendre rule on [-1, 1] at the active precision.
struct GaussLegendreRule {
  std::vector<Real> nodes;
  std::vector<Real> weights;
};

inline constexpr int kGaussLegendreDegree = 20;

/// Rule for the current Real default precision; computed once per (precision, degree).
const GaussLegendreRule& gauss_legendre_rule(int degree = kGaussLegendreDegree);

/// Default degree for a context: 20 up to 30 target digits, then 3 more
/// nodes per 4 extra digits so panel sizes can stay fixed as targets grow.
int rule_degree(const PrecisionContext& ctx);

struct QuadratureOptions {
  /// Uniform panels at depth 0. Oscillatory integrands want several panels
  /// per period.
  int initial_panels = 1;
  /// Tolerance is 10^(-target-2) * max(scale_floor, |value|). A floor of 1
  /// gives absolute accuracy for O(1) integrals; 0 requests relative accuracy.
  double scale_floor = 1.0;
  /// Gauss-Legendre degree; 0 selects rule_degree(ctx).
  int degree = 0;
};

template <class V>
struct QuadratureResult {
  V value;
  bool converged = true;
  int panels = 0;
};

namespace detail {

inline Real magnitude(const Real& v) { return abs(v); }
inline Real magnitude(const Complex& v) { return abs(v); }

template <class V>
struct Bounded;
template <>
struct Bounded<Real> {
  using type = BoundedReal;
};
template <>
struct Bounded<Complex> {
  using type = BoundedComplex;
};

template <class S>
struct PanelSum {
  S sum;
  Real abs_sum{0};
  Real propagated{0};
};

template <class S, class F>
PanelSum<S> gauss_panel(F& f, const Real& lo, const Real& hi, const GaussLegendreRule& rule) {
  const Real half = (hi - lo) / 2;
  const Real mid = (lo + hi) / 2;
  PanelSum<S> out{S(Real(0)), Real(0), Real(0)};
  const std::size_t n = rule.nodes.size();
  for (std::size_t k = 0; k < n; ++k) {
    const auto sample = f(mid + half * rule.nodes[k]);
    out.sum += rule.weights[k] * sample.value;
    out.abs_sum += rule.weights[k] * magnitude(sample.value);
    out.propagated += rule.weights[k] * sample.radius;
  }
  out.sum *= half;
  out.abs_sum *= half;
  out.propagated *= half;
  return out;
}

}  // namespace detail

/// Adaptive composite Gauss-Legendre quadrature of f over [a, b].
///
/// Each panel is compared against the sum over its two halves; a panel is
/// accepted once that difference is within its share of the tolerance,
/// otherwise both halves are refined, up to ctx.max_refinements levels.
/// `f` maps a Real to BoundedReal or BoundedComplex. The returned radius is
/// the summed inter-level differences plus the integrand's propagated radius
/// plus rounding. Reaching the refinement cap returns the best value with
/// converged = false instead of throwing.
template <class F>
auto integrate(F&& f, const Real& a, const Real& b, const PrecisionContext& ctx, QuadratureOptions opts = {})
    -> QuadratureResult<std::decay_t<std::invoke_result_t<F&, const Real&>>> {
  using Sample = std::decay_t<std::invoke_result_t<F&, const Real&>>;
  using S = std::decay_t<decltype(std::declval<Sample>().value)>;
  using Panel = detail::PanelSum<S>;

  if (a > b) throw Error(ErrorKind::InvalidInterval, "integration bounds reversed");
  QuadratureResult<Sample> result{Sample{}, true, 0};
  if (a == b) return result;

  PrecisionScope scope(ctx);
  const GaussLegendreRule& rule = gauss_legendre_rule(opts.degree > 0 ? opts.degree : rule_degree(ctx));
  const int n0 = opts.initial_panels < 1 ? 1 : opts.initial_panels;

  struct Node {
    Real lo, hi;
    Panel coarse;
    Panel left, right;
    int depth;
  };
  auto refine = [&](const Real& lo, const Real& hi, Panel coarse, int depth) {
    const Real mid = (lo + hi) / 2;
    Panel l = detail::gauss_panel<S>(f, lo, mid, rule);
    Panel r = detail::gauss_panel<S>(f, mid, hi, rule);
    return Node{lo, hi, std::move(coarse), std::move(l), std::move(r), depth};
  };

  std::vector<Node> pending;
  pending.reserve(static_cast<std::size_t>(n0));
  S estimate(Real(0));
  Real l1(0);
  const Real width = (b - a) / n0;
  for (int i = 0; i < n0; ++i) {
    const Real lo = a + width * i;
    const Real hi = (i + 1 == n0) ? b : a + width * (i + 1);
    Node node = refine(lo, hi, detail::gauss_panel<S>(f, lo, hi, rule), 0);
    estimate += node.left.sum + node.right.sum;
    l1 += node.left.abs_sum + node.right.abs_sum;
    pending.push_back(std::move(node));
  }

  Real scale = detail::magnitude(estimate);
  if (scale < opts.scale_floor) scale = Real(opts.scale_floor);
  const Real tol = ctx.refinement_tolerance() * scale + 100 * ctx.rounding_unit() * l1;
  const Real span = b - a;

  S total(Real(0));
  Real error(0);
  Real abs_total(0);
  while (!pending.empty()) {
    Node node = std::move(pending.back());
    pending.pop_back();
    const S fine = node.left.sum + node.right.sum;
    const Real diff = detail::magnitude(fine - node.coarse.sum);
    const Real budget = tol * (node.hi - node.lo) / span;
    if (diff <= budget || node.depth >= ctx.max_refinements()) {
      if (diff > budget) result.converged = false;
      total += fine;
      error += diff + node.left.propagated + node.right.propagated;
      abs_total += node.left.abs_sum + node.right.abs_sum;
      ++result.panels;
      continue;
    }
    const Real mid = (node.lo + node.hi) / 2;
    pending.push_back(refine(node.lo, mid, std::move(node.left), node.depth + 1));
    pending.push_back(refine(mid, node.hi, std::move(node.right), node.depth + 1));
  }
  error += 10 * ctx.rounding_unit() * abs_total;
  result.value.value = total;
  result.value.radius = error;
  return result;
}

/// Central-difference derivative of order 1 or 2 with Richardson
/// extrapolation over four step sizes h, h/2, h/4, h/8.
///
/// The default base step is 10^(-floor(target/3)) * max(1, |x|). The radius
/// combines the last extrapolation correction with the integrand radius
/// amplified by the difference quotient.
template <class F>
BoundedReal differentiate(F&& f, const Real& x, int order, const PrecisionContext& ctx,
                          std::optional<Real> base_step = std::nullopt) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "derivative order must be 1 or 2");
  PrecisionScope scope(ctx);
  constexpr int kLevels = 4;
  Real h = base_step ? *base_step : pow10(-(ctx.target_digits() / 3)) * (abs(x) > 1 ? abs(x) : Real(1));
  const Real smallest = h / (1 << (kLevels - 1));
  if (smallest < pow10(-ctx.working_digits() + 2))
    throw Error(ErrorKind::StepUnderflow, "finite-difference step below working precision");

  std::optional<BoundedReal> center;
  if (order == 2) center = f(x);

  Real tableau[kLevels][kLevels];
  Real propagated(0);
  for (int i = 0; i < kLevels; ++i) {
    const BoundedReal fp = f(x + h);
    const BoundedReal fm = f(x - h);
    Real prop;
    if (order == 1) {
      tableau[i][0] = (fp.value - fm.value) / (2 * h);
      prop = (fp.radius + fm.radius) / (2 * h);
    } else {
      tableau[i][0] = (fp.value - 2 * center->value + fm.value) / (h * h);
      prop = (fp.radius + 2 * center->radius + fm.radius) / (h * h);
    }
    if (prop > propagated) propagated = prop;
    Real factor(4);
    for (int j = 1; j <= i; ++j) {
      tableau[i][j] = tableau[i][j - 1] + (tableau[i][j - 1] - tableau[i - 1][j - 1]) / (factor - 1);
      factor *= 4;
    }
    h /= 2;
  }
  const Real& best = tableau[kLevels - 1][kLevels - 1];
  const Real tail = abs(best - tableau[kLevels - 1][kLevels - 2]);
  // Richardson weights sum in absolute value to < 2 for this tableau.
  return {best, tail + 2 * propagated + 10 * ctx.rounding_unit() * abs(best)};
}

}  // namespace xizeros
