#pragma once

#include <string>
#include <vector>

#include "xizeros/bounded.hpp"
#include "xizeros/transform.hpp"

namespace xizeros {

struct RealZero {
  AlephParam aleph{0};
  /// 1-based rank within the table.
  int index = 0;
  Real location{0};
  /// Xi has opposite signs, both resolved above their error radius, at the ends.
  Real bracket_lo{0};
  Real bracket_hi{0};
  int certified_digits = 0;
};

struct ComplexZero {
  AlephParam aleph{0};
  Complex location;
  /// |Xi(location)|
  Real residual{0};
  int multiplicity = 1;
  int certified_digits = 0;
};

/// Axis-aligned rectangle in the lambda-plane.
struct Box {
  Real re_lo{0}, re_hi{0}, im_lo{0}, im_hi{0};

  Real diameter() const;
  Box expanded(const Real& eps) const;
};

struct BoxCount {
  Box box;
  int count = 0;
  double winding = 0.0;
  Real min_modulus_on_contour{0};
  Real max_radius_on_contour{0};
  int samples = 0;
};

/// Subinterval of a real scan where |Xi| could not be resolved above its error radius.
struct FlaggedInterval {
  Real lo{0};
  Real hi{0};
};

struct ZeroTable {
  AlephParam aleph{0};
  std::vector<RealZero> real_zeros;
  std::vector<ComplexZero> complex_zeros;
  std::string provenance;
  std::vector<FlaggedInterval> flagged;
};

/// Imaginary parts below this are treated as real zeros and polished on the axis.
inline constexpr double kRealAxisThreshold = 1e-3;

/// Real zeros in [a, b] (0 <= a < b <= 1000): grid of step 0.5, halved around
/// local minima of |Xi| without a sign change, then refine_zero on every
/// bracket. Points where |Xi| <= radius are flagged, not fatal.
ZeroTable scan_real_zeros(const AlephParam& aleph, const Real& a, const Real& b, const PrecisionContext& ctx);

/// Illinois false position (with bisection safeguard) until the bracket is
/// 1e-6 wide or the estimate settles, then Newton with the analytic derivative until the
/// step drops below 10^(-target+5) or the evaluation noise floor. Throws
/// NoSignChange when the endpoints share a sign. If Newton leaves the bracket
/// the routine bisects instead and reports fewer certified digits.
RealZero refine_zero(const AlephParam& aleph, const Real& lo, const Real& hi, const PrecisionContext& ctx);

/// Argument-principle count of zeros inside `box`, sampling the boundary
/// counter-clockwise until every consecutive phase change is below pi/2.
/// Throws ZeroOnContour (hint = suggested outward epsilon) when the minimum
/// modulus on the contour is not above 3x the largest evaluation radius.
BoxCount count_zeros_in_box(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx);

/// count_zeros_in_box, retrying with the box grown outward by
/// {1e-3, 3e-3, 1e-2} x diameter on ZeroOnContour.
BoxCount count_zeros_perturbed(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx);

/// All zeros in `box` by quadtree subdivision and complex Newton polish.
/// Multiplicities sum to the box count. Zeros within kRealAxisThreshold of the
/// real axis are re-polished on the axis.
std::vector<ComplexZero> locate_complex_zeros(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx);

enum class Verdict { AllRealInBox, NonRealPresent };
std::string to_string(Verdict v);

struct RealityReport {
  AlephParam aleph{0};
  Real b{0};
  Real height{0};
  /// Outward perturbation applied to the box (0 when none was needed).
  Real epsilon{0};
  Box box;
  int n_real = 0;
  int n_box = 0;
  Verdict verdict = Verdict::AllRealInBox;
  ZeroTable table;
  /// Located zeros with Im > kRealAxisThreshold (upper half only).
  std::vector<ComplexZero> non_real_upper;
  /// n_box == n_real + 2 * non_real_upper multiplicities.
  bool consistent = true;
};

/// Compares the real-zero count on [0, b] with the argument-principle count in
/// [0, b] x [-h, h]; locates the non-real zeros in the upper half when they differ.
RealityReport reality_certificate(const AlephParam& aleph, const Real& b, const Real& height,
                                  const PrecisionContext& ctx);

}  // namespace xizeros
