#pragma once

#include <vector>

#include "xizeros/bounded.hpp"
#include "xizeros/transform.hpp"

namespace xizeros {

struct CoefficientEntry {
  int gamma = 0;
  /// alpha_{2 gamma} = (1/(2 gamma)!) int_0^inf x^{2 gamma} e^{-aleph x^2} G(x) dx
  BoundedReal alpha;
};

/// Taylor coefficients of M in tau^2: M(tau) = sum_gamma alpha_{2 gamma} tau^{2 gamma}.
/// Entries are contiguous from gamma = 0 and every alpha is certainly positive.
struct CoefficientTable {
  AlephParam aleph{0};
  std::vector<CoefficientEntry> entries;

  int gamma_max() const { return static_cast<int>(entries.size()) - 1; }
};

inline constexpr int kDefaultGammaMax = 40;

/// Moments by quadrature, one truncation plan per gamma: the x^{2 gamma}
/// factor enters the plan, and the domain margin is raised by the log of the
/// moment's size so the neglected tail is small relative to the moment.
/// Throws PositivityViolation if any alpha is not certainly positive.
CoefficientTable compute_coefficients(const AlephParam& aleph, int gamma_max, const PrecisionContext& ctx);

/// Truncated power series at tau. Requires
/// |tau|^2 alpha_{2N} / alpha_{2N-2} < 1/2 (N = gamma_max) so the omitted
/// tail is dominated by a geometric series; throws TailNotBounded otherwise.
EvalResult eval_series(const CoefficientTable& table, const Complex& tau, const PrecisionContext& ctx);

struct TuranMargin {
  int gamma = 0;
  /// c_gamma^2 - c_{gamma-1} c_{gamma+1} with c_gamma = gamma! alpha_{2 gamma}.
  Real margin{0};
  Real error{0};
  bool pass = true;
};

/// Turan ladder on the factorial-normalized coefficients, 1 <= gamma <= gamma_max - 1.
/// A failed margin certifies a non-real zero of Xi; passing is inconclusive.
/// Throws InsufficientEntries when gamma_max < 2.
std::vector<TuranMargin> turan_diagnostic(const CoefficientTable& table);

}  // namespace xizeros
