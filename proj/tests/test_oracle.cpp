// Sanity checks on the reference implementations themselves, against
// published constants.
#include "doctest.h"
#include "oracle.hpp"

using xizeros::from_decimal;
using xizeros::PrecisionScope;
using xizeros::Real;

TEST_CASE("Gamma(1/4) from the AGM") {
  PrecisionScope scope(60);
  const Real expected = from_decimal("3.6256099082219083119306851558676720029951676828800654674");
  CHECK(abs(oracle::gamma_quarter() - expected) < from_decimal("1e-50"));
}

TEST_CASE("zeta(1/2) and zeta(2) by the Borwein series") {
  PrecisionScope scope(60);
  const Real half = oracle::zeta({Real(1) / 2, Real(0)}).real();
  CHECK(abs(half - from_decimal("-1.4603545088095868128894991525152980124672293310126")) < from_decimal("1e-45"));
  const Real p = xizeros::pi();
  CHECK(abs(oracle::zeta({Real(2), Real(0)}).real() - p * p / 6) < from_decimal("1e-50"));
}

TEST_CASE("log Gamma agrees with known values") {
  PrecisionScope scope(60);
  const Real p = xizeros::pi();
  CHECK(abs(oracle::log_gamma({Real(1) / 2, Real(0)}).real() - log(sqrt(p))) < from_decimal("1e-40"));
  CHECK(abs(oracle::log_gamma({Real(5), Real(0)}).real() - log(Real(24))) < from_decimal("1e-40"));
  // |Gamma(i)|^2 = pi / sinh(pi)
  const Real mod2 = exp(2 * oracle::log_gamma({Real(0), Real(1)}).real());
  CHECK(abs(mod2 - p / sinh(p)) < from_decimal("1e-40"));
}

TEST_CASE("erf series") {
  PrecisionScope scope(50);
  CHECK(abs(oracle::erf_series(Real(1)) - from_decimal("0.84270079294971486934122063508260925929606699796630")) <
        from_decimal("1e-45"));
}

TEST_CASE("first Riemann zero from Hardy's Z") {
  PrecisionScope scope(50);
  const Real g1 = oracle::hardy_zero(Real(14), Real("14.3"), from_decimal("1e-15"));
  CHECK(abs(g1 - from_decimal("14.134725141734693790457251983562")) < from_decimal("1e-12"));
}
