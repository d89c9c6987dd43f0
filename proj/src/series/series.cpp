#include "xizeros/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xizeros/error.hpp"
#include "xizeros/kernel.hpp"
#include "xizeros/quadrature.hpp"

namespace xizeros {

namespace {

// ln of max_x x^power e^{-aleph x^2} (2 pi^2 e^{9x} - 3 pi e^{5x}) exp(-pi e^{4x}),
// the m = 1 term, sampled on a grid. Only used to size the relative margin.
double log_moment_peak(double aleph, int power) {
  constexpr double pi = std::numbers::pi;
  double best = -INFINITY;
  for (int i = 1; i <= 3000; ++i) {
    const double x = 1.5 * i / 3000.0;
    const double poly = std::log(2 * pi * pi * std::exp(9 * x) - 3 * pi * std::exp(5 * x));
    const double v = power * std::log(x) + poly - pi * std::exp(4 * x) - aleph * x * x;
    best = std::max(best, v);
  }
  return best;
}

}  // namespace

CoefficientTable compute_coefficients(const AlephParam& aleph, int gamma_max, const PrecisionContext& ctx) {
  if (gamma_max < 0) throw Error(ErrorKind::InvalidArgument, "gamma_max must be nonnegative");
  PrecisionScope scope(ctx);
  const Real a = aleph.value();
  CoefficientTable table;
  table.aleph = aleph;
  table.entries.reserve(static_cast<std::size_t>(gamma_max) + 1);

  Real factorial(1);
  for (int gamma = 0; gamma <= gamma_max; ++gamma) {
    const int power = 2 * gamma;
    if (gamma > 0) factorial *= Real(power - 1) * power;

    const double extra = std::max(0.0, -log_moment_peak(aleph.approx(), power));
    const KernelTruncation plan = plan_truncation(a, 0.0, ctx, TruncationWeight{power, extra});
    auto integrand = [&](const Real& x) {
      const BoundedReal g = eval_kernel(x, plan, ctx);
      const Real weight = exp(-a * x * x) * (power == 0 ? Real(1) : pow(x, power));
      return BoundedReal{g.value * weight, g.radius * weight};
    };
    const auto moment = integrate(integrand, Real(0), plan.x_max, ctx, QuadratureOptions{4, 0.0});

    CoefficientEntry entry;
    entry.gamma = gamma;
    entry.alpha.value = moment.value.value / factorial;
    entry.alpha.radius = (moment.value.radius + plan.tail_bound) / factorial;
    if (!moment.converged)
      throw Error(ErrorKind::NonConvergent, "moment quadrature for gamma=" + std::to_string(gamma));
    if (!entry.alpha.certainly_positive())
      throw Error(ErrorKind::PositivityViolation,
                  "alpha_{2*" + std::to_string(gamma) + "} not certainly positive at aleph=" + aleph.text());
    table.entries.push_back(std::move(entry));
  }
  return table;
}

EvalResult eval_series(const CoefficientTable& table, const Complex& tau, const PrecisionContext& ctx) {
  if (table.entries.empty()) throw Error(ErrorKind::InsufficientEntries, "empty coefficient table");
  PrecisionScope scope(ctx);
  const Complex z = tau * tau;
  const Real z_abs = abs(z);
  const int n = table.gamma_max();

  Real ratio(0);
  if (n == 0) {
    if (z_abs != 0) throw Error(ErrorKind::TailNotBounded, "single-entry table only evaluates at tau = 0");
  } else {
    ratio = z_abs * table.entries[n].alpha.value / table.entries[n - 1].alpha.value;
    if (ratio >= Real(0.5))
      throw Error(ErrorKind::TailNotBounded, "|tau|^2 alpha_N/alpha_{N-1} >= 1/2; enlarge gamma_max");
  }

  Complex sum(Real(0), Real(0));
  Complex power(Real(1), Real(0));
  Real power_abs(1);
  Real radius(0);
  Real abs_terms(0);
  Real last(0);
  for (const CoefficientEntry& e : table.entries) {
    sum += e.alpha.value * power;
    radius += e.alpha.radius * power_abs;
    last = e.alpha.value * power_abs;
    abs_terms += last;
    power *= z;
    power_abs *= z_abs;
  }
  const Real tail = last * ratio / (1 - ratio);
  EvalResult out;
  out.value.value = sum;
  out.value.radius = radius + tail + 10 * ctx.rounding_unit() * abs_terms;
  return out;
}

std::vector<TuranMargin> turan_diagnostic(const CoefficientTable& table) {
  const int n = table.gamma_max();
  if (n < 2) throw Error(ErrorKind::InsufficientEntries, "Turan ladder needs gamma_max >= 2");
  PrecisionScope scope(static_cast<int>(table.entries.front().alpha.value.precision()));
  std::vector<BoundedReal> c;
  c.reserve(table.entries.size());
  Real factorial(1);
  for (const CoefficientEntry& e : table.entries) {
    if (e.gamma > 0) factorial *= e.gamma;
    c.push_back(factorial * e.alpha);
  }
  std::vector<TuranMargin> out;
  out.reserve(static_cast<std::size_t>(n) - 1);
  for (int g = 1; g < n; ++g) {
    const BoundedReal m = c[g] * c[g] - c[g - 1] * c[g + 1];
    out.push_back({g, m.value, m.radius, m.value >= -m.radius});
  }
  return out;
}

}  // namespace xizeros
