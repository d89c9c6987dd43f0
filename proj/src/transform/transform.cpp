#include "xizeros/transform.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "xizeros/error.hpp"
#include "xizeros/quadrature.hpp"

namespace xizeros {

namespace {

// Truncation plans are made for |lambda| rounded up to a multiple of this, so
// nearby evaluation points share quadrature nodes and memoized weights.
constexpr double kTauBucket = 8.0;
// Initial panel count keeps at most this many radians of lambda*x per panel
// for the 20-point rule; higher-degree rules get proportionally wider panels.
constexpr double kRadiansPerPanel = 6.0;
constexpr std::size_t kMemoLimit = 400000;

struct WeightMemo {
  std::map<std::string, std::map<Real, BoundedReal>> tables;
  std::size_t entries = 0;
};

WeightMemo& memo() {
  thread_local WeightMemo m;
  return m;
}

std::map<Real, BoundedReal>& weight_table(const Real& aleph, const PrecisionContext& ctx, int m_max) {
  WeightMemo& m = memo();
  if (m.entries > kMemoLimit) {
    m.tables.clear();
    m.entries = 0;
  }
  std::string key = aleph.str(0) + "|" + std::to_string(ctx.working_digits()) + "|" +
                    std::to_string(ctx.target_digits()) + "|" + std::to_string(m_max);
  return m.tables[key];
}

}  // namespace

PrecisionContext widened_for_decay(const PrecisionContext& ctx, double re_lambda) {
  // |Xi(u)| falls off like u^{7/4} e^{-pi u / 8}; digits are added in steps of
  // 10 so buckets of nearby points share a context.
  const double u = kTauBucket * std::ceil(std::abs(re_lambda) / kTauBucket);
  if (u <= 0) return ctx;
  const double decay = std::numbers::pi / 8 * u / std::log(10.0) - 1.75 * std::log10(std::max(u / 2, 1.0));
  const int extra = 10 * static_cast<int>(std::floor(decay / 10));
  return extra > 0 ? ctx.widened(extra) : ctx;
}

AlephParam::AlephParam(std::string decimal) : text_(std::move(decimal)) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text_, &used);
  } catch (const std::exception&) {
    throw Error(ErrorKind::ParseError, "aleph is not a decimal number: '" + text_ + "'");
  }
  if (used != text_.size()) throw Error(ErrorKind::ParseError, "aleph is not a decimal number: '" + text_ + "'");
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "aleph must be finite");
}

double AlephParam::approx() const { return std::stod(text_); }

std::string AlephParam::literature_t() const {
  if (text_.empty()) return text_;
  if (text_[0] == '-') return text_.substr(1);
  if (text_[0] == '+') return "-" + text_.substr(1);
  if (approx() == 0.0) return text_;
  return "-" + text_;
}

namespace detail {

void clear_weight_cache() {
  memo().tables.clear();
  memo().entries = 0;
}

EvalResult cosine_transform(const Real& aleph, const Complex& lambda, int order, const PrecisionContext& outer) {
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidArgument, "transform order must be 0, 1 or 2");
  const double modulus = to_double(abs(lambda));
  const double bound = kTauBucket * std::ceil(modulus / kTauBucket);
  const PrecisionContext ctx = widened_for_decay(outer, to_double(abs(lambda.real())));
  PrecisionScope scope(ctx);
  const KernelTruncation plan = plan_truncation(aleph, bound, ctx, TruncationWeight{order, 0.0});

  int panels = 4;
  const double radians = kRadiansPerPanel * rule_degree(ctx) / kGaussLegendreDegree;
  while (panels * radians < to_double(plan.x_max) * bound) panels *= 2;

  std::map<Real, BoundedReal>& weights = weight_table(aleph, ctx, plan.m_max);
  WeightMemo& m = memo();
  const Real u = lambda.real();
  const Real v = lambda.imag();
  const bool complex_arg = v != 0;

  auto integrand = [&](const Real& x) -> BoundedComplex {
    auto it = weights.find(x);
    if (it == weights.end()) {
      const BoundedReal g = eval_kernel(x, plan, ctx);
      const Real damp = exp(-aleph * x * x);
      it = weights.emplace(x, BoundedReal{g.value * damp, g.radius * damp}).first;
      ++m.entries;
    }
    const BoundedReal& w = it->second;
    Real s, c;
    sin_cos(u * x, s, c);
    Real re, im;
    if (complex_arg) {
      const Real e = exp(v * x);
      const Real ei = 1 / e;
      const Real ch = (e + ei) / 2;
      const Real sh = (e - ei) / 2;
      if (order == 1) {
        // -sin(lambda x) = -(sin(ux) cosh(vx) + i cos(ux) sinh(vx))
        re = -s * ch;
        im = -c * sh;
      } else {
        // cos(lambda x) = cos(ux) cosh(vx) - i sin(ux) sinh(vx)
        re = c * ch;
        im = -s * sh;
      }
    } else {
      re = order == 1 ? Real(-s) : c;
      im = 0;
    }
    if (order == 1) {
      re *= x;
      im *= x;
    } else if (order == 2) {
      const Real x2 = -x * x;
      re *= x2;
      im *= x2;
    }
    const Real size = abs(re) + abs(im);
    return {Complex(w.value * re, w.value * im), w.radius * size};
  };

  auto quad = integrate(integrand, Real(0), plan.x_max, ctx, QuadratureOptions{panels, 1.0});
  EvalResult out;
  out.value = quad.value;
  out.value.radius += plan.tail_bound;
  out.plan = plan;
  out.quadrature_converged = quad.converged;
  return out;
}

}  // namespace detail

EvalResult eval_M(const AlephParam& aleph, const Complex& tau, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  // cosh(tau x) = cos(-i tau x)
  const Complex lambda(tau.imag(), -tau.real());
  return detail::cosine_transform(aleph.value(), lambda, 0, ctx);
}

EvalResult eval_Xi(const AlephParam& aleph, const Complex& lambda, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return detail::cosine_transform(aleph.value(), lambda, 0, ctx);
}

EvalResult eval_Xi_derivative(const AlephParam& aleph, const Real& lambda, int order, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return eval_Xi_derivative(aleph, Complex(lambda, Real(0)), order, ctx);
}

EvalResult eval_Xi_derivative(const AlephParam& aleph, const Complex& lambda, int order,
                              const PrecisionContext& ctx) {
  if (order != 1 && order != 2) throw Error(ErrorKind::InvalidArgument, "derivative order must be 1 or 2");
  PrecisionScope scope(ctx);
  return detail::cosine_transform(aleph.value(), lambda, order, ctx);
}

HeatResidual heat_flow_residual(const AlephParam& aleph, const Real& lambda, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const Complex point(lambda, Real(0));
  auto xi_in_aleph = [&](const Real& a) {
    const EvalResult r = detail::cosine_transform(a, point, 0, ctx);
    return BoundedReal{r.value.value.real(), r.value.radius};
  };
  HeatResidual out;
  out.d_aleph = differentiate(xi_in_aleph, aleph.value(), 1, ctx, pow10(-(ctx.target_digits() / 3)));
  out.d_lambda_lambda = eval_Xi_derivative(aleph, lambda, 2, ctx).value.real_part();
  const BoundedReal diff = out.d_aleph - out.d_lambda_lambda;
  const BoundedReal sum = out.d_aleph + out.d_lambda_lambda;
  out.res_minus = {abs(diff.value), diff.radius};
  out.res_plus = {abs(sum.value), sum.radius};
  return out;
}

}  // namespace xizeros
