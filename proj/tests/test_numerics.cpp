#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "xizeros/bounded.hpp"
#include "xizeros/error.hpp"
#include "xizeros/quadrature.hpp"

using namespace xizeros;

namespace {

bool throws_kind(ErrorKind kind, const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == kind;
  }
  return false;
}

}  // namespace

TEST_CASE("precision context budgets") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  CHECK(ctx.target_digits() == 30);
  CHECK(ctx.working_digits() == 50);
  const PrecisionContext wide = ctx.widened(10);
  CHECK(wide.target_digits() == 40);
  CHECK(wide.working_digits() == 60);
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { PrecisionContext(35, 30); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { PrecisionContext(50, 0); }));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { PrecisionContext(50, 30, 0); }));
}

TEST_CASE("precision scopes nest and restore") {
  const unsigned before = Real::default_precision();
  {
    PrecisionScope outer(80);
    CHECK(Real::default_precision() == 80);
    {
      PrecisionScope inner(120);
      CHECK(Real::default_precision() == 120);
    }
    CHECK(Real::default_precision() == 80);
  }
  CHECK(Real::default_precision() == before);
}

TEST_CASE("decimal conversion") {
  PrecisionScope scope(50);
  const std::string text = "0.0621400972735392637390967174607";
  CHECK(to_decimal(from_decimal(text), 30) == text);
  CHECK(to_decimal(from_decimal("1e-120"), 30) == "0");
  CHECK(throws_kind(ErrorKind::ParseError, [] { from_decimal("abc"); }));
  CHECK(throws_kind(ErrorKind::ParseError, [] { from_decimal("1.5x"); }));
}

TEST_CASE("Gauss-Legendre rule") {
  PrecisionScope scope(50);
  const GaussLegendreRule& rule = gauss_legendre_rule(20);
  REQUIRE(rule.nodes.size() == 20);
  Real wsum(0), moment(0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    wsum += rule.weights[i];
    moment += rule.weights[i] * pow(rule.nodes[i], 38);
    CHECK(abs(rule.nodes[i] + rule.nodes[rule.nodes.size() - 1 - i]) < from_decimal("1e-45"));
  }
  CHECK(abs(wsum - 2) < from_decimal("1e-45"));
  CHECK(abs(moment - Real(2) / 39) < from_decimal("1e-45"));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [] { gauss_legendre_rule(1); }));
}

TEST_CASE("rule degree grows with the target") {
  CHECK(rule_degree(PrecisionContext::for_target(30)) == 20);
  CHECK(rule_degree(PrecisionContext::for_target(70)) > 20);
  CHECK(rule_degree(PrecisionContext::for_target(200)) > rule_degree(PrecisionContext::for_target(70)));
}

TEST_CASE("integrate Gaussian against the erf series") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  PrecisionScope scope(ctx);
  auto f = [](const Real& x) { return BoundedReal{exp(-x * x), Real(0)}; };
  const auto r = integrate(f, Real(0), Real(1), ctx);
  const Real exact = sqrt(pi()) / 2 * oracle::erf_series(Real(1));
  CHECK(r.converged);
  CHECK(abs(r.value.value - exact) <= r.value.radius + from_decimal("1e-40"));
  CHECK(r.value.radius < from_decimal("1e-30"));
}

TEST_CASE("integrate a complex oscillation") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  PrecisionScope scope(ctx);
  auto f = [](const Real& x) { return BoundedComplex{Complex(cos(x), sin(x)), Real(0)}; };
  QuadratureOptions opts;
  opts.initial_panels = 4;
  const auto r = integrate(f, Real(0), Real(10), ctx, opts);
  const Complex i(Real(0), Real(1));
  const Complex exact = (std::exp(i * Complex(Real(10), Real(0))) - Complex(Real(1), Real(0))) / i;
  CHECK(abs(r.value.value - exact) <= r.value.radius + from_decimal("1e-40"));
}

TEST_CASE("integrate edge cases") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  PrecisionScope scope(ctx);
  auto f = [](const Real& x) { return BoundedReal{x, Real(0)}; };
  CHECK(throws_kind(ErrorKind::InvalidInterval, [&] { integrate(f, Real(1), Real(0), ctx); }));
  CHECK(integrate(f, Real(1), Real(1), ctx).value.value == 0);

  // sqrt has an endpoint singularity that two refinement levels cannot resolve.
  const PrecisionContext shallow(50, 30, 2);
  auto g = [](const Real& x) { return BoundedReal{sqrt(x), Real(0)}; };
  const auto r = integrate(g, Real(0), Real(1), shallow);
  CHECK_FALSE(r.converged);
  CHECK(abs(r.value.value - Real(2) / 3) <= r.value.radius);
}

TEST_CASE("differentiate with Richardson extrapolation") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  PrecisionScope scope(ctx);
  auto f = [](const Real& x) { return BoundedReal{sin(x), Real(0)}; };
  const BoundedReal d1 = differentiate(f, Real(1), 1, ctx);
  const BoundedReal d2 = differentiate(f, Real(1), 2, ctx);
  CHECK(abs(d1.value - cos(Real(1))) <= d1.radius + from_decimal("1e-25"));
  CHECK(abs(d2.value + sin(Real(1))) <= d2.radius + from_decimal("1e-15"));
  CHECK(d1.radius < from_decimal("1e-20"));
  CHECK(throws_kind(ErrorKind::InvalidArgument, [&] { differentiate(f, Real(1), 3, ctx); }));
  CHECK(throws_kind(ErrorKind::StepUnderflow, [&] { differentiate(f, Real(1), 1, ctx, from_decimal("1e-60")); }));
}

TEST_CASE("bounded arithmetic propagates radii") {
  PrecisionScope scope(50);
  const BoundedReal a{Real(2), Real("0.1")};
  const BoundedReal b{Real(3), Real("0.2")};
  CHECK((a + b).radius == Real("0.1") + Real("0.2"));
  CHECK((a - b).value == -1);
  const BoundedReal p = a * b;
  CHECK(p.value == 6);
  CHECK(abs(p.radius - (2 * Real("0.2") + 3 * Real("0.1") + Real("0.1") * Real("0.2"))) < from_decimal("1e-45"));
  CHECK(a.certainly_positive());
  CHECK_FALSE(BoundedReal{Real("0.05"), Real("0.1")}.certainly_positive());
}

TEST_CASE("error kinds have names and hints") {
  const Error e(ErrorKind::ZeroOnContour, "edge", 0.25);
  CHECK(e.kind() == ErrorKind::ZeroOnContour);
  CHECK(e.hint() == 0.25);
  CHECK(std::string(e.what()).find("ZeroOnContour") == 0);
}
