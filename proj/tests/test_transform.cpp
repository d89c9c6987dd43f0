#include "doctest.h"
#include "oracle.hpp"
#include "xizeros/error.hpp"
#include "xizeros/kernel.hpp"
#include "xizeros/quadrature.hpp"
#include "xizeros/transform.hpp"

using namespace xizeros;

namespace {

const PrecisionContext kCtx = PrecisionContext::for_target(30);

Complex cplx(const char* re, const char* im = "0") { return {from_decimal(re), from_decimal(im)}; }

void check_close(const EvalResult& r, const Complex& expected, const char* slack) {
  CHECK(abs(r.value.value - expected) <= r.value.radius + from_decimal(slack));
}

}  // namespace

TEST_CASE("Xi at the origin equals xi(1/2)/8") {
  PrecisionScope scope(kCtx);
  // xi(1/2) = -(1/8) pi^{-1/4} Gamma(1/4) zeta(1/2)
  const Real zeta_half = oracle::zeta(cplx("0.5")).real();
  const Real expected = -oracle::gamma_quarter() * zeta_half / (64 * pow(pi(), Real(1) / 4));
  const EvalResult r = eval_Xi(AlephParam(0), cplx("0"), kCtx);
  CHECK(r.quadrature_converged);
  CHECK(r.value.radius < from_decimal("1e-28"));
  check_close(r, {expected, Real(0)}, "1e-35");
  CHECK(to_decimal(r.value.value.real(), 30) == "0.0621400972735392637390967174607");
}

TEST_CASE("Xi at aleph 0 against the zeta oracle") {
  PrecisionScope scope(kCtx);
  for (const auto& [re, im] : std::vector<std::pair<const char*, const char*>>{
           {"5", "0"}, {"20", "0"}, {"28.269450283469387580914503967", "0"}, {"3", "0.5"}, {"60", "-1"}}) {
    CAPTURE(re);
    CAPTURE(im);
    const Complex lambda = cplx(re, im);
    check_close(eval_Xi(AlephParam(0), lambda, kCtx), oracle::xi_family_at_zero(lambda), "1e-35");
  }
}

TEST_CASE("M at real tau is xi on the real axis of s") {
  PrecisionScope scope(kCtx);
  // M(tau) = Xi(-i tau) = xi(1/2 + tau/2) / 8
  const EvalResult r = eval_M(AlephParam(0), cplx("2"), kCtx);
  check_close(r, oracle::riemann_xi(cplx("1.5")) / Complex(Real(8), Real(0)), "1e-35");
  CHECK(abs(r.value.value.imag()) <= r.value.radius);
}

TEST_CASE("evenness and conjugate symmetry") {
  PrecisionScope scope(kCtx);
  const AlephParam a("0.7");
  const EvalResult plus = eval_Xi(a, cplx("7", "0.3"), kCtx);
  const EvalResult minus = eval_Xi(a, cplx("-7", "-0.3"), kCtx);
  const EvalResult conj = eval_Xi(a, cplx("7", "-0.3"), kCtx);
  CHECK(abs(plus.value.value - minus.value.value) <= plus.value.radius + minus.value.radius);
  CHECK(abs(plus.value.value - std::conj(conj.value.value)) <= plus.value.radius + conj.value.radius);
}

TEST_CASE("positive aleph matches direct quadrature of the weighted kernel") {
  PrecisionScope scope(kCtx);
  const KernelTruncation t = plan_truncation(Real(1), 0.0, kCtx);
  auto f = [&](const Real& x) {
    BoundedReal g = eval_kernel(x, t, kCtx);
    const Real w = exp(-x * x);
    return BoundedReal{g.value * w, g.radius * w};
  };
  const auto direct = integrate(f, Real(0), t.x_max, kCtx);
  const EvalResult r = eval_Xi(AlephParam(1), cplx("0"), kCtx);
  CHECK(abs(r.value.value.real() - direct.value.value) <= r.value.radius + direct.value.radius + t.tail_bound);
  CHECK(r.value.value.real() < eval_Xi(AlephParam(0), cplx("0"), kCtx).value.value.real());
}

TEST_CASE("lambda derivatives against finite differences of the oracle") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  PrecisionScope scope(ctx);
  auto xi = [](const Real& x) { return BoundedReal{oracle::xi_family_at_zero({x, Real(0)}).real(), Real(0)}; };
  const Real lambda = from_decimal("5");
  const BoundedReal fd1 = differentiate(xi, lambda, 1, ctx);
  const BoundedReal fd2 = differentiate(xi, lambda, 2, ctx);
  const EvalResult d1 = eval_Xi_derivative(AlephParam(0), lambda, 1, ctx);
  const EvalResult d2 = eval_Xi_derivative(AlephParam(0), lambda, 2, ctx);
  CHECK(abs(d1.value.value.real() - fd1.value) <= d1.value.radius + fd1.radius + from_decimal("1e-20"));
  CHECK(abs(d2.value.value.real() - fd2.value) <= d2.value.radius + fd2.radius + from_decimal("1e-12"));
  CHECK_THROWS_AS(eval_Xi_derivative(AlephParam(0), lambda, 3, ctx), Error);
}

TEST_CASE("heat residual selects the minus sign") {
  const PrecisionContext ctx = PrecisionContext::for_target(30);
  for (const auto& [aleph, lambda] : std::vector<std::pair<int, int>>{{0, 5}, {1, 0}}) {
    CAPTURE(aleph);
    const HeatResidual h = heat_flow_residual(AlephParam(aleph), Real(lambda), ctx);
    PrecisionScope scope(ctx);
    CHECK(h.res_minus.value < from_decimal("1e-8"));
    CHECK(h.res_plus.value > 1000 * h.res_minus.value);
  }
}

TEST_CASE("aleph parameter") {
  CHECK(AlephParam("0.5").text() == "0.5");
  CHECK(AlephParam(50).literature_t() == "-50");
  CHECK(AlephParam("-1").literature_t() == "1");
  CHECK(AlephParam("0").literature_t() == "0");
  CHECK(AlephParam("2.5").approx() == 2.5);
  CHECK_THROWS_AS(AlephParam("abc"), Error);
  CHECK_THROWS_AS(AlephParam("1e400"), Error);
}

TEST_CASE("decay widening follows the real part") {
  CHECK(widened_for_decay(kCtx, 0.0) == kCtx);
  CHECK(widened_for_decay(kCtx, 20.0) == kCtx);
  const PrecisionContext far = widened_for_decay(kCtx, 290.0);
  CHECK(far.target_digits() > kCtx.target_digits());
  CHECK(widened_for_decay(kCtx, -290.0) == far);
}

TEST_CASE("results do not depend on the weight memo") {
  const Complex lambda = [] {
    PrecisionScope scope(kCtx);
    return cplx("11.5");
  }();
  const EvalResult first = eval_Xi(AlephParam(0), lambda, kCtx);
  detail::clear_weight_cache();
  const EvalResult second = eval_Xi(AlephParam(0), lambda, kCtx);
  PrecisionScope scope(kCtx);
  CHECK(first.value.value == second.value.value);
  CHECK(first.value.radius == second.value.radius);
}

TEST_CASE("target digits are honoured at higher precision") {
  const PrecisionContext ctx = PrecisionContext::for_target(60);
  PrecisionScope scope(ctx);
  const EvalResult r = eval_Xi(AlephParam(0), cplx("5"), ctx);
  CHECK(r.value.radius < from_decimal("1e-58"));
  // the oracle's Stirling remainder is ~1e-48 relative
  check_close(r, oracle::xi_family_at_zero(cplx("5")), "1e-45");
  const Real closed = -oracle::gamma_quarter() * oracle::zeta(cplx("0.5")).real() / (64 * pow(pi(), Real(1) / 4));
  check_close(eval_Xi(AlephParam(0), cplx("0"), ctx), {closed, Real(0)}, "1e-65");
}

TEST_CASE("large aleph approaches the Laplace limit") {
  // e^{-aleph x^2} concentrates at 0: Xi(0) ~ G(0) sqrt(pi/aleph)/2
  PrecisionScope scope(kCtx);
  const Real aleph(1000000000);
  const KernelTruncation t = plan_truncation(aleph, 0.0, kCtx);
  const Real g0 = eval_kernel(Real(0), t, kCtx).value;
  const Real limit = g0 * sqrt(pi() / aleph) / 2;
  const EvalResult r = eval_Xi(AlephParam("1e9"), cplx("0"), kCtx);
  CHECK(isfinite(r.value.radius));
  CHECK(abs(r.value.value.real() / limit - 1) < from_decimal("1e-6"));
}
