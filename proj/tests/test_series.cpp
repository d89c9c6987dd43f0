#include "doctest.h"
#include "oracle.hpp"
#include "xizeros/error.hpp"
#include "xizeros/quadrature.hpp"
#include "xizeros/series.hpp"

using namespace xizeros;

namespace {

const PrecisionContext kCtx = PrecisionContext::for_target(30);

const CoefficientTable& table_zero() {
  static const CoefficientTable t = compute_coefficients(AlephParam(0), 40, kCtx);
  return t;
}

}  // namespace

TEST_CASE("leading coefficients against the zeta oracle") {
  const CoefficientTable& t = table_zero();
  PrecisionScope scope(kCtx);
  REQUIRE(t.gamma_max() == 40);
  const BoundedReal a0 = t.entries[0].alpha;
  CHECK(abs(a0.value - oracle::xi_family_at_zero({Real(0), Real(0)}).real()) <= a0.radius + from_decimal("1e-35"));
  // alpha_2 = M''(0)/2 = -Xi''(0)/2
  auto xi = [](const Real& x) { return BoundedReal{oracle::xi_family_at_zero({x, Real(0)}).real(), Real(0)}; };
  const BoundedReal d2 = differentiate(xi, Real(0), 2, kCtx);
  const BoundedReal a2 = t.entries[1].alpha;
  CHECK(abs(a2.value + d2.value / 2) <= a2.radius + d2.radius + from_decimal("1e-12"));
}

TEST_CASE("coefficients are positive, contiguous and decreasing") {
  const CoefficientTable& t = table_zero();
  PrecisionScope scope(kCtx);
  for (std::size_t g = 0; g < t.entries.size(); ++g) {
    CAPTURE(g);
    CHECK(t.entries[g].gamma == static_cast<int>(g));
    CHECK(t.entries[g].alpha.certainly_positive());
    if (g > 0) CHECK(t.entries[g].alpha.value < t.entries[g - 1].alpha.value);
  }
}

TEST_CASE("series matches the oracle inside its radius of validity") {
  const CoefficientTable& t = table_zero();
  PrecisionScope scope(kCtx);
  const EvalResult m2 = eval_series(t, {Real(2), Real(0)}, kCtx);
  const Complex expected = oracle::riemann_xi({from_decimal("1.5"), Real(0)}) / Complex(Real(8), Real(0));
  CHECK(abs(m2.value.value - expected) <= m2.value.radius + from_decimal("1e-30"));
  CHECK_FALSE(m2.plan.has_value());
  // M(5i) = Xi(5)
  const EvalResult m5 = eval_series(t, {Real(0), Real(5)}, kCtx);
  CHECK(abs(m5.value.value - oracle::xi_family_at_zero({Real(5), Real(0)})) <= m5.value.radius + from_decimal("1e-30"));
}

TEST_CASE("series refuses points where the tail is not controlled") {
  const CoefficientTable& t = table_zero();
  PrecisionScope scope(kCtx);
  CoefficientTable small{t.aleph, {t.entries.begin(), t.entries.begin() + 6}};
  CHECK_THROWS_AS(eval_series(small, {Real(40), Real(0)}, kCtx), Error);
  CoefficientTable empty{t.aleph, {}};
  CHECK_THROWS_AS(eval_series(empty, {Real(0), Real(0)}, kCtx), Error);
  CoefficientTable single{t.aleph, {t.entries.front()}};
  CHECK(eval_series(single, {Real(0), Real(0)}, kCtx).value.value == t.entries.front().alpha.value);
  CHECK_THROWS_AS(eval_series(single, {Real(1), Real(0)}, kCtx), Error);
  CHECK_THROWS_AS(compute_coefficients(AlephParam(0), -1, kCtx), Error);
}

TEST_CASE("Turan margins are nonnegative at aleph 0") {
  const CoefficientTable& t = table_zero();
  const std::vector<TuranMargin> m = turan_diagnostic(t);
  REQUIRE(m.size() == 39);
  PrecisionScope scope(kCtx);
  for (const TuranMargin& row : m) {
    if (row.gamma > 20) break;
    CAPTURE(row.gamma);
    CHECK(row.pass);
    CHECK(row.margin >= 0);
  }
  CoefficientTable two{t.aleph, {t.entries[0], t.entries[1]}};
  CHECK_THROWS_AS(turan_diagnostic(two), Error);
}

TEST_CASE("positivity holds across aleph") {
  for (int aleph : {-1, 1, 50}) {
    CAPTURE(aleph);
    const CoefficientTable t = compute_coefficients(AlephParam(aleph), 12, kCtx);
    PrecisionScope scope(kCtx);
    for (const CoefficientEntry& e : t.entries) CHECK(e.alpha.certainly_positive());
  }
}
