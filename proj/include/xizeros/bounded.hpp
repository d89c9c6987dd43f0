#pragma once

#include "xizeros/precision.hpp"

namespace xizeros {

/// Real value with an absolute error radius. Arithmetic propagates radii to
/// first order plus the product cross term; it is not interval arithmetic.
struct BoundedReal {
  Real value{0};
  Real radius{0};

  Real lower() const { return value - radius; }
  Real upper() const { return value + radius; }
  bool certainly_positive() const { return value - radius > 0; }
  bool certainly_negative() const { return value + radius < 0; }
};

struct BoundedComplex {
  Complex value{Real(0), Real(0)};
  Real radius{0};

  BoundedReal real_part() const { return {value.real(), radius}; }
  BoundedReal imag_part() const { return {value.imag(), radius}; }
};

inline BoundedReal operator+(const BoundedReal& a, const BoundedReal& b) {
  return {a.value + b.value, a.radius + b.radius};
}
inline BoundedReal operator-(const BoundedReal& a, const BoundedReal& b) {
  return {a.value - b.value, a.radius + b.radius};
}
inline BoundedReal operator-(const BoundedReal& a) { return {-a.value, a.radius}; }
inline BoundedReal operator*(const BoundedReal& a, const BoundedReal& b) {
  return {a.value * b.value, abs(a.value) * b.radius + abs(b.value) * a.radius + a.radius * b.radius};
}
inline BoundedReal operator*(const Real& k, const BoundedReal& a) { return {k * a.value, abs(k) * a.radius}; }

inline BoundedComplex operator+(const BoundedComplex& a, const BoundedComplex& b) {
  return {a.value + b.value, a.radius + b.radius};
}
inline BoundedComplex operator-(const BoundedComplex& a, const BoundedComplex& b) {
  return {a.value - b.value, a.radius + b.radius};
}
inline BoundedComplex operator*(const BoundedComplex& a, const BoundedComplex& b) {
  return {a.value * b.value, abs(a.value) * b.radius + abs(b.value) * a.radius + a.radius * b.radius};
}
inline BoundedComplex operator*(const Complex& k, const BoundedComplex& a) {
  return {k * a.value, abs(k) * a.radius};
}
inline BoundedComplex conj(const BoundedComplex& a) { return {std::conj(a.value), a.radius}; }

inline BoundedComplex to_complex(const BoundedReal& a) { return {Complex(a.value, Real(0)), a.radius}; }

}  // namespace xizeros
