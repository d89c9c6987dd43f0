#include "xizeros/product.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "xizeros/error.hpp"
#include "xizeros/quadrature.hpp"

namespace xizeros {

namespace {

struct ProductZero {
  Complex location;
  bool complex_pair = false;
  Real uncertainty{0};
};

Real digits_uncertainty(int certified_digits) { return pow10(-certified_digits); }

std::vector<ProductZero> ordered_zeros(const ZeroTable& table) {
  std::vector<ProductZero> out;
  for (const RealZero& z : table.real_zeros)
    out.push_back({Complex(z.location, Real(0)), false, digits_uncertainty(z.certified_digits)});
  for (const ComplexZero& z : table.complex_zeros) {
    const bool off_axis = z.location.imag() != 0;
    for (int k = 0; k < z.multiplicity; ++k)
      out.push_back({z.location, off_axis, digits_uncertainty(z.certified_digits)});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const ProductZero& a, const ProductZero& b) { return abs(a.location) < abs(b.location); });
  return out;
}

// (1 - l2/z^2), times (1 - l2/conj(z)^2) for an off-axis zero, and |d factor/dz|.
std::pair<Complex, Real> factor(const ProductZero& z, const Complex& l2) {
  const Complex one(Real(1), Real(0));
  const Complex zz = z.location * z.location;
  Complex f = one - l2 / zz;
  Real slope = 2 * abs(l2) / (abs(zz) * abs(z.location));
  if (z.complex_pair) {
    const Complex cz = std::conj(zz);
    const Complex g = one - l2 / cz;
    slope = slope * abs(g) + abs(f) * slope;
    f *= g;
  }
  return {f, slope};
}

std::string format_point(const Complex& tau) {
  auto fmt = [](double v) {
    std::ostringstream os;
    os << v;
    return os.str();
  };
  const double re = to_double(tau.real());
  const double im = to_double(tau.imag());
  if (im == 0) return fmt(re);
  const std::string imag = (im == 1 ? "" : im == -1 ? "-" : fmt(im)) + "i";
  if (re == 0) return imag;
  return fmt(re) + (im > 0 ? "+" : "") + fmt(im) + "i";
}

IdentityReport compare(std::string name, const BoundedComplex& lhs, const BoundedComplex& rhs, const Real& extra,
                       std::string notes) {
  IdentityReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.residual = abs(lhs.value - rhs.value);
  r.tolerance = 3 * (lhs.radius + rhs.radius) + extra;
  r.pass = r.residual <= r.tolerance;
  r.notes = std::move(notes);
  return r;
}

std::string short_decimal(const Real& x) { return to_decimal(x, 6); }

}  // namespace

double DensityFit::tail_beyond(double R) const {
  if (!(R > 0)) return INFINITY;
  return std::max(0.0, (c1 * (std::log(R) + 2) + c0) / R);
}

DensityFit fit_density(const ZeroTable& table) {
  constexpr double pi = std::numbers::pi;
  DensityFit asymptotic{1 / (4 * pi), -(1 + std::log(4 * pi)) / (4 * pi), 0.875};
  const std::vector<Real> moduli = zero_moduli(table);
  if (static_cast<int>(moduli.size()) < kMinFitZeros) return asymptotic;

  // Normal equations for N(rho_l) = l - 1/2 in the basis {rho log rho, rho, 1}.
  std::array<std::array<double, 4>, 3> m{};
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const double r = to_double(moduli[i]);
    const std::array<double, 3> basis{r * std::log(r), r, 1.0};
    const double y = static_cast<double>(i) + 0.5;
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) m[a][b] += basis[a] * basis[b];
      m[a][3] += basis[a] * y;
    }
  }
  for (int col = 0; col < 3; ++col) {
    int pivot = col;
    for (int row = col + 1; row < 3; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    std::swap(m[col], m[pivot]);
    if (m[col][col] == 0) return asymptotic;
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      const double k = m[row][col] / m[col][col];
      for (int c = col; c < 4; ++c) m[row][c] -= k * m[col][c];
    }
  }
  DensityFit fit{m[0][3] / m[0][0], m[1][3] / m[1][1], m[2][3] / m[2][2]};
  if (!(fit.c1 > 0) || !std::isfinite(fit.c0)) return asymptotic;
  return fit;
}

std::vector<Real> zero_moduli(const ZeroTable& table) {
  std::vector<Real> out;
  for (const ProductZero& z : ordered_zeros(table)) out.push_back(abs(z.location));
  return out;
}

ProductResult eval_product(const BoundedReal& M0, const ZeroTable& table, int L, const Complex& lambda,
                           const PrecisionContext& ctx) {
  if (L < 0) throw Error(ErrorKind::InvalidArgument, "factor count must be nonnegative");
  PrecisionScope scope(ctx);
  const std::vector<ProductZero> zeros = ordered_zeros(table);
  if (static_cast<int>(zeros.size()) < L)
    throw Error(ErrorKind::InsufficientZeros,
                "table has " + std::to_string(zeros.size()) + " zeros, " + std::to_string(L) + " requested");

  const Complex l2 = lambda * lambda;
  std::vector<Complex> factors;
  std::vector<Real> slopes;
  for (int l = 0; l < L; ++l) {
    auto [f, s] = factor(zeros[l], l2);
    factors.push_back(f);
    slopes.push_back(s * zeros[l].uncertainty);
  }
  // Suffix products let each zero's location error be weighted by the other factors.
  std::vector<Real> suffix(static_cast<std::size_t>(L) + 1, Real(1));
  for (int l = L - 1; l >= 0; --l) suffix[l] = suffix[l + 1] * abs(factors[l]);

  Complex product(M0.value, Real(0));
  Real prefix(1);
  Real location_error(0);
  for (int l = 0; l < L; ++l) {
    location_error += prefix * slopes[l] * suffix[l + 1];
    prefix *= abs(factors[l]);
    product *= factors[l];
  }
  const Real modulus = abs(product);
  ProductResult out;
  out.result.value.value = product;
  out.result.value.radius = M0.radius * prefix + abs(M0.value) * location_error +
                            Real(4 * L + 10) * ctx.rounding_unit() * modulus;
  out.truncation.L = L;

  const DensityFit fit = fit_density(table);
  Real beyond;
  if (L == 0) {
    beyond = Real(0);
    for (const ProductZero& z : zeros) beyond += (z.complex_pair ? 2 : 1) / (abs(z.location) * abs(z.location));
    beyond += zeros.empty() ? Real(fit.tail_beyond(4 * std::numbers::pi))
                            : Real(fit.tail_beyond(to_double(abs(zeros.back().location))));
  } else {
    beyond = Real(fit.tail_beyond(to_double(abs(zeros[L - 1].location))));
  }
  out.truncation.tail_estimate = abs(l2) * beyond;
  return out;
}

ZeroSum zero_sum(const ZeroTable& table) {
  const std::vector<ProductZero> zeros = ordered_zeros(table);
  if (zeros.empty()) throw Error(ErrorKind::EmptyTable, "zero table is empty");
  ZeroSum out;
  BoundedComplex running;
  const Complex i(Real(0), Real(1));
  for (const ProductZero& z : zeros) {
    const Complex sigma = i * z.location;
    const Real m = abs(sigma);
    BoundedComplex term{Real(1) / (sigma * sigma), 2 * z.uncertainty / (m * m * m)};
    if (z.complex_pair) {
      const Complex sc = i * std::conj(z.location);
      term.value += Real(1) / (sc * sc);
      term.radius *= 2;
    }
    term.radius += 4 * abs(term.value) * pow10(-static_cast<int>(z.location.real().precision()));
    running = running + term;
    out.partial_sums.push_back(running);
  }
  out.tail_estimate = Real(fit_density(table).tail_beyond(to_double(abs(zeros.back().location))));
  return out;
}

Real zero_sum_tail(const ZeroTable& table, int k) {
  const std::vector<Real> moduli = zero_moduli(table);
  if (moduli.empty()) throw Error(ErrorKind::EmptyTable, "zero table is empty");
  if (k < 1 || k > static_cast<int>(moduli.size()))
    throw Error(ErrorKind::InvalidArgument, "k must be between 1 and the table size");
  return Real(fit_density(table).tail_beyond(to_double(moduli[k - 1])));
}

BoundedComplex termwise_delta(const Complex& sigma) {
  if (sigma.real() == 0 || sigma.imag() == 0) return BoundedComplex{};
  const Complex c = std::conj(sigma);
  const Complex delta = Real(1) / (sigma * sigma) - Real(1) / (c * c);
  const Real m = abs(sigma);
  return {delta, 8 * pow10(-static_cast<int>(sigma.real().precision())) / (m * m)};
}

std::vector<TermwiseDelta> termwise_diagnostic(const ZeroTable& table) {
  const std::vector<ProductZero> zeros = ordered_zeros(table);
  if (zeros.empty()) throw Error(ErrorKind::EmptyTable, "zero table is empty");
  std::vector<TermwiseDelta> out;
  const Complex i(Real(0), Real(1));
  for (std::size_t k = 0; k < zeros.size(); ++k)
    out.push_back({static_cast<int>(k) + 1, termwise_delta(i * zeros[k].location)});
  return out;
}

BoundedReal estimate_order(const AlephParam& aleph, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  std::array<double, kOrderRadii.size()> xs{}, ys{};
  for (std::size_t k = 0; k < kOrderRadii.size(); ++k) {
    const Real r(kOrderRadii[k]);
    const Real plus = eval_M(aleph, Complex(r, Real(0)), ctx).value.value.real();
    const Real minus = eval_M(aleph, Complex(-r, Real(0)), ctx).value.value.real();
    const Real peak = plus > minus ? plus : minus;
    if (!(peak > 1)) throw Error(ErrorKind::NonConvergent, "max |M| on |tau| = r is not above 1; log log undefined");
    xs[k] = std::log(kOrderRadii[k]);
    ys[k] = std::log(to_double(log(peak)));
  }
  // Regression through the origin: beta = lim log log M(r) / log r.
  double sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    sxx += xs[k] * xs[k];
    sxy += xs[k] * ys[k];
  }
  const double beta = sxy / sxx;
  double worst = 0;
  for (std::size_t k = 0; k < xs.size(); ++k) worst = std::max(worst, std::abs(ys[k] / xs[k] - beta));
  return {Real(beta), Real(worst)};
}

std::string to_string(Check c) {
  switch (c) {
    case Check::Conj: return "CONJ";
    case Check::Even: return "EVEN";
    case Check::SeriesEqIntegral: return "SERIES_EQ_INTEGRAL";
    case Check::SeriesEqProduct: return "SERIES_EQ_PRODUCT";
    case Check::ConjProduct: return "CONJ_PRODUCT";
    case Check::SumEq: return "SUM_EQ";
    case Check::Theta0: return "THETA0";
    case Check::Positivity: return "POSITIVITY";
  }
  return "UNKNOWN";
}

std::vector<Check> all_checks() {
  return {Check::Conj,        Check::Even,  Check::SeriesEqIntegral, Check::SeriesEqProduct,
          Check::ConjProduct, Check::SumEq, Check::Theta0,           Check::Positivity};
}

Check parse_check(const std::string& name) {
  for (Check c : all_checks())
    if (to_string(c) == name) return c;
  throw Error(ErrorKind::ParseError, "unknown check '" + name + "'");
}

SuiteInputs SuiteInputs::defaults() {
  SuiteInputs in;
  const Real z(0);
  in.points = {Complex(Real("0.5"), z), Complex(Real(1), Real(1)), Complex(Real(2), z), Complex(z, Real(2)),
               Complex(z, Real(5))};
  return in;
}

ZeroTable first_real_zeros(const AlephParam& aleph, int count, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  ZeroTable table;
  table.aleph = aleph;
  table.provenance = ctx.summary();
  constexpr int kBlock = 100;
  constexpr int kLimit = 1000;
  for (int lo = 0; static_cast<int>(table.real_zeros.size()) < count; lo += kBlock) {
    if (lo >= kLimit)
      throw Error(ErrorKind::InsufficientZeros, "fewer than " + std::to_string(count) + " real zeros below 1000");
    ZeroTable block = scan_real_zeros(aleph, Real(lo), Real(lo + kBlock), ctx);
    if (!block.flagged.empty())
      throw Error(ErrorKind::PrecisionExhausted, "unresolved subinterval while collecting zeros");
    for (RealZero& z : block.real_zeros) {
      if (!table.real_zeros.empty() && abs(z.location - table.real_zeros.back().location) < Real(1e-10)) continue;
      z.index = static_cast<int>(table.real_zeros.size()) + 1;
      table.real_zeros.push_back(std::move(z));
    }
  }
  return table;
}

std::vector<IdentityReport> check_identities(const AlephParam& aleph, const std::vector<Check>& suite,
                                             const PrecisionContext& ctx, SuiteInputs inputs) {
  PrecisionScope scope(ctx);
  auto wants = [&](Check c) { return std::find(suite.begin(), suite.end(), c) != suite.end(); };
  const bool need_zeros = wants(Check::SeriesEqProduct) || wants(Check::ConjProduct) || wants(Check::SumEq);
  const bool need_coeffs =
      wants(Check::SeriesEqIntegral) || wants(Check::SeriesEqProduct) || wants(Check::Positivity);
  if (need_zeros && !inputs.zero_table) inputs.zero_table = first_real_zeros(aleph, inputs.zeros, ctx);
  if (need_coeffs && !inputs.coefficients)
    inputs.coefficients = compute_coefficients(aleph, inputs.gamma_max, ctx);

  std::map<std::pair<Real, Real>, BoundedComplex> m_cache;
  auto M = [&](const Complex& tau) {
    std::pair<Real, Real> key{tau.real(), tau.imag()};
    auto it = m_cache.find(key);
    if (it == m_cache.end()) it = m_cache.emplace(key, eval_M(aleph, tau, ctx).value).first;
    return it->second;
  };
  const BoundedComplex m0c = M(Complex(Real(0), Real(0)));
  const BoundedReal m0 = m0c.real_part();
  const Complex minus_i(Real(0), Real(-1));

  auto product_at = [&](const Complex& tau) {
    return eval_product(m0, *inputs.zero_table, inputs.zeros, minus_i * tau, ctx);
  };
  auto envelope = [](const ProductResult& p) {
    return abs(p.result.value.value) * (exp(p.truncation.tail_estimate) - 1);
  };
  auto product_note = [&](const ProductResult& p) {
    std::string note = "L=" + std::to_string(p.truncation.L) + " tail_estimate=" + short_decimal(p.truncation.tail_estimate);
    if (inputs.zero_table->complex_zeros.empty()) note += "; real zeros only";
    return note;
  };

  std::vector<IdentityReport> out;
  for (Check c : suite) {
    const std::string base = to_string(c);
    switch (c) {
      case Check::Conj:
        for (const Complex& t : inputs.points)
          out.push_back(compare(base + "[tau=" + format_point(t) + "]", M(std::conj(t)), conj(M(t)), Real(0),
                                "M(conj tau) vs conj M(tau)"));
        break;
      case Check::Even:
        for (const Complex& t : inputs.points)
          out.push_back(compare(base + "[tau=" + format_point(t) + "]", M(-t), M(t), Real(0), "M(-tau) vs M(tau)"));
        break;
      case Check::SeriesEqIntegral:
        for (const Complex& t : inputs.points) {
          const BoundedComplex s = eval_series(*inputs.coefficients, t, ctx).value;
          out.push_back(compare(base + "[tau=" + format_point(t) + "]", s, M(t), Real(0),
                                "gamma_max=" + std::to_string(inputs.coefficients->gamma_max())));
        }
        break;
      case Check::SeriesEqProduct:
        for (const Complex& t : inputs.points) {
          const BoundedComplex s = eval_series(*inputs.coefficients, t, ctx).value;
          const ProductResult p = product_at(t);
          out.push_back(compare(base + "[tau=" + format_point(t) + "]", s, p.result.value, envelope(p),
                                "gamma_max=" + std::to_string(inputs.coefficients->gamma_max()) + "; " +
                                    product_note(p)));
        }
        break;
      case Check::ConjProduct:
        for (const Complex& t : inputs.points) {
          const ProductResult a = product_at(std::conj(t));
          const ProductResult b = product_at(t);
          out.push_back(compare(base + "[tau=" + format_point(t) + "]", a.result.value, conj(b.result.value),
                                envelope(a) + envelope(b), product_note(b)));
        }
        break;
      case Check::SumEq: {
        const std::vector<ProductZero> zeros = ordered_zeros(*inputs.zero_table);
        const Complex i(Real(0), Real(1));
        BoundedComplex lhs, rhs;
        for (const ProductZero& z : zeros) {
          std::vector<Complex> sigmas{i * z.location};
          if (z.complex_pair) sigmas.push_back(i * std::conj(z.location));
          for (const Complex& s : sigmas) {
            const Real m = abs(s);
            const Real r = 2 * z.uncertainty / (m * m * m) + 4 * ctx.rounding_unit() / (m * m);
            lhs = lhs + BoundedComplex{Real(1) / (s * s), r};
            const Complex cs = std::conj(s);
            rhs = rhs + BoundedComplex{Real(1) / (cs * cs), r};
          }
        }
        out.push_back(compare(base, lhs, rhs, Real(0),
                              "sum over " + std::to_string(zeros.size()) + " stored zeros closed under conjugation"));
        break;
      }
      case Check::Theta0: {
        auto m_real = [&](const Real& tau) {
          const BoundedComplex v = eval_M(aleph, Complex(tau, Real(0)), ctx).value;
          return BoundedReal{v.value.real(), v.radius};
        };
        const BoundedReal d = differentiate(m_real, Real(0), 1, ctx);
        const Real theta = d.value / m0.value;
        const Real theta_radius = (d.radius + abs(theta) * m0.radius) / m0.value;
        const BoundedComplex lhs{Complex(theta, Real(0)), theta_radius};
        out.push_back(compare(base, lhs, BoundedComplex{}, Real(0),
                              "theta0 = M'(0)/M(0) = " + short_decimal(theta) + " (expected 0 by evenness)"));
        break;
      }
      case Check::Positivity: {
        // Reported as residual = error radius, tolerance = value: pass iff certainly positive.
        auto positivity = [&](std::string name, const BoundedReal& v, std::string notes) {
          IdentityReport r;
          r.name = std::move(name);
          r.lhs = to_complex(v);
          r.rhs = BoundedComplex{};
          r.residual = v.radius;
          r.tolerance = v.value;
          r.pass = v.radius < v.value;
          r.notes = std::move(notes);
          return r;
        };
        out.push_back(positivity(base + "[M0]", m0, "M(0) > 0 beyond its error radius"));
        const std::vector<CoefficientEntry>& entries = inputs.coefficients->entries;
        const auto tightest = std::max_element(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
          return a.alpha.radius / a.alpha.value < b.alpha.radius / b.alpha.value;
        });
        out.push_back(positivity(base + "[alpha]", tightest->alpha,
                                 "all alpha_{2g}, g <= " + std::to_string(inputs.coefficients->gamma_max()) +
                                     "; tightest at g=" + std::to_string(tightest->gamma)));
        break;
      }
    }
  }
  return out;
}

}  // namespace xizeros
