#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracle.hpp"
#include "xizeros/error.hpp"
#include "xizeros/product.hpp"

using namespace xizeros;

namespace {

const PrecisionContext kCtx = PrecisionContext::for_target(30);

// First 50 zeros of Xi at aleph 0, as twice the Riemann ordinates from the zeta oracle.
const ZeroTable& oracle_table() {
  static const ZeroTable table = [] {
    const std::vector<Real> gammas = oracle::riemann_ordinates(50);
    PrecisionScope scope(kCtx);
    ZeroTable t;
    const Real width = from_decimal("1e-15");
    for (std::size_t i = 0; i < gammas.size(); ++i) {
      const Real rho = 2 * gammas[i];
      t.real_zeros.push_back({AlephParam(0), static_cast<int>(i) + 1, rho, rho - width, rho + width, 15});
    }
    return t;
  }();
  return table;
}

ZeroTable first(const ZeroTable& t, std::size_t n) {
  ZeroTable out = t;
  out.real_zeros.resize(n);
  return out;
}

BoundedReal m0() {
  PrecisionScope scope(kCtx);
  return eval_M(AlephParam(0), Complex(Real(0), Real(0)), kCtx).value.real_part();
}

}  // namespace

TEST_CASE("the empty product is M0") {
  const BoundedReal M0 = m0();
  const ProductResult p = eval_product(M0, oracle_table(), 0, {Real(3), Real(0)}, kCtx);
  PrecisionScope scope(kCtx);
  CHECK(p.truncation.L == 0);
  CHECK(p.result.value.value.real() == M0.value);
  CHECK(p.truncation.tail_estimate > 0);
  CHECK_THROWS_AS(eval_product(M0, oracle_table(), 51, {Real(3), Real(0)}, kCtx), Error);
  CHECK_THROWS_AS(eval_product(M0, oracle_table(), -1, {Real(3), Real(0)}, kCtx), Error);
}

TEST_CASE("product converges to Xi as L doubles") {
  const BoundedReal M0 = m0();
  for (const char* ls : {"3", "7.5"}) {
    CAPTURE(ls);
    PrecisionScope scope(kCtx);
    const Complex lambda(from_decimal(ls), Real(0));
    const EvalResult xi = eval_Xi(AlephParam(0), lambda, kCtx);
    Real previous(1);
    for (int L : {12, 25, 50}) {
      CAPTURE(L);
      const ProductResult p = eval_product(M0, oracle_table(), L, lambda, kCtx);
      const Real diff = abs(p.result.value.value - xi.value.value);
      const Real envelope = abs(p.result.value.value) * (exp(p.truncation.tail_estimate) - 1);
      CHECK(diff < previous);
      CHECK(diff <= envelope + p.result.value.radius + xi.value.radius);
      previous = diff;
    }
  }
}

TEST_CASE("complex zeros enter as conjugate pairs") {
  const BoundedReal M0 = m0();
  PrecisionScope scope(kCtx);
  ZeroTable t;
  const Complex s(Real(30), Real(2));
  t.complex_zeros.push_back({AlephParam(0), s, Real(0), 1, 20});
  const Complex lambda(Real(4), Real(0));
  const ProductResult p = eval_product(M0, t, 1, lambda, kCtx);
  const Complex one(Real(1), Real(0));
  const Complex expected = Complex(M0.value, Real(0)) * (one - lambda * lambda / (s * s)) *
                           (one - lambda * lambda / (std::conj(s) * std::conj(s)));
  CHECK(abs(p.result.value.value - expected) <= p.result.value.radius);
  CHECK(abs(p.result.value.value.imag()) <= p.result.value.radius);
}

TEST_CASE("density fit and tail model") {
  const DensityFit fit = fit_density(oracle_table());
  const double asymptotic = 1.0 / (4.0 * std::numbers::pi);
  CHECK(fit.c1 == doctest::Approx(asymptotic).epsilon(0.1));
  CHECK(fit.tail_beyond(100.0) > fit.tail_beyond(200.0));
  CHECK(fit.tail_beyond(200.0) > 0.0);
  const DensityFit small = fit_density(first(oracle_table(), 5));
  CHECK(small.c1 == doctest::Approx(asymptotic));
  CHECK(small.c0 == doctest::Approx(-(1.0 + std::log(4.0 * std::numbers::pi)) / (4.0 * std::numbers::pi)));
}

TEST_CASE("zero sums are Cauchy within the tail estimate") {
  const ZeroSum zs = zero_sum(oracle_table());
  REQUIRE(zs.partial_sums.size() == 50);
  PrecisionScope scope(kCtx);
  CHECK(abs(zs.partial_sums[2].value.real() + from_decimal("0.0022167")) < from_decimal("1e-7"));
  CHECK(zs.partial_sums[2].value.imag() == 0);
  for (int k : {10, 25}) {
    CAPTURE(k);
    const Real jump = abs(zs.partial_sums[2 * k - 1].value - zs.partial_sums[k - 1].value);
    CHECK(jump < zero_sum_tail(oracle_table(), k));
  }
  CHECK(zs.tail_estimate > 0);
  CHECK_THROWS_AS(zero_sum(ZeroTable{}), Error);
}

TEST_CASE("termwise conjugate differences") {
  const std::vector<TermwiseDelta> d = termwise_diagnostic(first(oracle_table(), 5));
  REQUIRE(d.size() == 5);
  PrecisionScope scope(kCtx);
  for (const TermwiseDelta& row : d) {
    CHECK(row.delta.value == Complex(Real(0), Real(0)));
    CHECK(row.delta.radius == 0);
  }
  // (1+i)^{-2} - (1-i)^{-2} = -i
  const BoundedComplex off = termwise_delta({Real(1), Real(1)});
  CHECK(abs(off.value - Complex(Real(0), Real(-1))) <= off.radius + from_decimal("1e-40"));
  CHECK(termwise_delta({Real(0), Real(3)}).value == Complex(Real(0), Real(0)));
  CHECK_THROWS_AS(termwise_diagnostic(ZeroTable{}), Error);
}

TEST_CASE("check names round-trip") {
  for (Check c : all_checks()) CHECK(parse_check(to_string(c)) == c);
  CHECK(all_checks().size() == 8);
  CHECK(to_string(Check::SeriesEqProduct) == "SERIES_EQ_PRODUCT");
  CHECK_THROWS_AS(parse_check("BOGUS"), Error);
}

TEST_CASE("identity suite with an oracle zero table") {
  SuiteInputs inputs = SuiteInputs::defaults();
  inputs.zero_table = oracle_table();
  const std::vector<IdentityReport> reports = check_identities(AlephParam(0), all_checks(), kCtx, inputs);
  CHECK(reports.size() > 8);
  for (const IdentityReport& r : reports) {
    CAPTURE(r.name);
    CAPTURE(r.notes);
    CHECK(r.pass);
  }
  const auto has = [&](const std::string& prefix) {
    return std::any_of(reports.begin(), reports.end(), [&](const IdentityReport& r) { return r.name.rfind(prefix, 0) == 0; });
  };
  for (const char* prefix : {"CONJ[", "EVEN[", "SERIES_EQ_INTEGRAL[", "SERIES_EQ_PRODUCT[tau=2i]", "CONJ_PRODUCT[",
                             "SUM_EQ", "THETA0", "POSITIVITY[M0]"})
    CHECK_MESSAGE(has(prefix), std::string(prefix));
}

TEST_CASE("a short product stays inside its widened tolerance") {
  SuiteInputs inputs = SuiteInputs::defaults();
  inputs.zero_table = oracle_table();
  inputs.zeros = 3;
  inputs.points = {Complex(Real(0), Real(20))};
  const std::vector<IdentityReport> reports = check_identities(AlephParam(0), {Check::SeriesEqProduct}, kCtx, inputs);
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].residual <= reports[0].tolerance);
}

TEST_CASE("order estimate is close to one") {
  const BoundedReal beta = estimate_order(AlephParam(0), kCtx);
  PrecisionScope scope(kCtx);
  CHECK(abs(beta.value - 1) <= beta.radius);
  CHECK(beta.value > from_decimal("0.8"));
  CHECK(beta.radius < from_decimal("0.2"));
  const BoundedReal wide = estimate_order(AlephParam(0), PrecisionContext::for_target(60));
  CHECK(abs(wide.value - beta.value) <= beta.radius);
}

TEST_CASE("first_real_zeros matches the oracle") {
  const ZeroTable t = first_real_zeros(AlephParam(0), 3, kCtx);
  // the whole first block [0, 100] is kept
  REQUIRE(t.real_zeros.size() == 10);
  PrecisionScope scope(kCtx);
  for (std::size_t i = 0; i < t.real_zeros.size(); ++i)
    CHECK(abs(t.real_zeros[i].location - oracle_table().real_zeros[i].location) < from_decimal("1e-14"));
}
