#include "xizeros/precision.hpp"

#include <cmath>
#include <sstream>

#include "xizeros/error.hpp"

namespace xizeros {

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

}  // namespace

PrecisionContext::PrecisionContext(int working_digits, int target_digits, int max_refinements)
    : working_digits_(working_digits), target_digits_(target_digits), max_refinements_(max_refinements) {
  if (target_digits_ < 1) throw Error(ErrorKind::InvalidArgument, "target_digits must be positive");
  if (working_digits_ < target_digits_ + 10)
    throw Error(ErrorKind::InvalidArgument, "working_digits must exceed target_digits by at least 10");
  if (max_refinements_ < 1) throw Error(ErrorKind::InvalidArgument, "max_refinements must be >= 1");
}

PrecisionContext PrecisionContext::for_target(int target_digits, int max_refinements) {
  return PrecisionContext(target_digits + 20, target_digits, max_refinements);
}

Real PrecisionContext::refinement_tolerance() const { return pow10(-(target_digits_ + 2)); }

Real PrecisionContext::rounding_unit() const { return pow10(-working_digits_); }

PrecisionContext PrecisionContext::widened(int extra) const {
  return PrecisionContext(working_digits_ + extra, target_digits_ + extra, max_refinements_);
}

std::string PrecisionContext::summary() const {
  std::ostringstream os;
  os << "working_digits=" << working_digits_ << ";target_digits=" << target_digits_
     << ";max_refinements=" << max_refinements_;
  return os.str();
}

PrecisionScope::PrecisionScope(int digits) : lock_(precision_mutex()), previous_(Real::default_precision()) {
  Real::default_precision(static_cast<unsigned>(digits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(previous_); }

Real pi() {
  Real p;
  mpfr_const_pi(p.backend().data(), MPFR_RNDN);
  return p;
}

Real pow10(int exponent) { return pow(Real(10), exponent); }

Real from_decimal(const std::string& text) {
  Real r;
  if (mpfr_set_str(r.backend().data(), text.c_str(), 10, MPFR_RNDN) != 0)
    throw Error(ErrorKind::ParseError, "not a decimal number: '" + text + "'");
  return r;
}

void sin_cos(const Real& x, Real& s, Real& c) {
  // Outputs take x's precision so results do not depend on prior contents.
  s = x;
  c = x;
  mpfr_sin_cos(s.backend().data(), c.backend().data(), x.backend().data(), MPFR_RNDN);
}

std::string to_decimal(const Real& x, int digits) {
  if (x == 0 || abs(x) < Real("1e-99")) return "0";
  std::string s = x.str(digits, std::ios_base::fmtflags(0));
  return s;
}

double to_double(const Real& x) { return x.convert_to<double>(); }

}  // namespace xizeros
