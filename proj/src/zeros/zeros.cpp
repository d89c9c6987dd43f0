#include "xizeros/zeros.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <utility>

#include "xizeros/error.hpp"

namespace xizeros {

namespace {

constexpr double kScanStep = 0.5;
constexpr int kProbeLevels = 5;
constexpr double kBracketWidth = 1e-6;
constexpr double kContourSpacing = 0.25;
constexpr std::array<double, 3> kPerturbations{1e-3, 3e-3, 1e-2};

struct RealSample {
  Real x;
  Real value;
  Real radius;

  bool resolved() const { return abs(value) > radius; }
  bool positive() const { return value > 0; }
};

RealSample sample_real(const AlephParam& aleph, const Real& x, const PrecisionContext& ctx) {
  const EvalResult r = eval_Xi(aleph, Complex(x, Real(0)), ctx);
  return {x, r.value.value.real(), r.value.radius};
}

int digits_from(const Real& accuracy, int cap) {
  if (accuracy <= 0) return cap;
  const double d = -std::log10(to_double(accuracy));
  return std::clamp(static_cast<int>(std::floor(d)), 0, cap);
}

using PointKey = std::pair<Real, Real>;
using PointCache = std::map<PointKey, BoundedComplex>;

class ContourCounter {
 public:
  ContourCounter(const AlephParam& aleph, const PrecisionContext& ctx, PointCache& cache)
      : aleph_(aleph), ctx_(ctx), cache_(cache) {}

  BoxCount count(const Box& box) {
    phase_ = 0.0;
    min_modulus_.reset();
    max_radius_ = 0;
    samples_ = 0;
    const Real& x0 = box.re_lo;
    const Real& x1 = box.re_hi;
    const Real& y0 = box.im_lo;
    const Real& y1 = box.im_hi;
    edge(x0, y0, x1, y0);
    edge(x1, y0, x1, y1);
    edge(x1, y1, x0, y1);
    edge(x0, y1, x0, y0);

    BoxCount out;
    out.box = box;
    out.winding = phase_ / (2 * std::numbers::pi);
    out.min_modulus_on_contour = *min_modulus_;
    out.max_radius_on_contour = max_radius_;
    out.samples = samples_;
    const double hint = 1e-3 * to_double(box.diameter());
    if (*min_modulus_ <= 3 * max_radius_)
      throw Error(ErrorKind::ZeroOnContour, "|Xi| on the contour is within 3x its error radius", hint);
    out.count = static_cast<int>(std::lround(out.winding));
    if (std::abs(out.winding - out.count) >= 0.1 || out.count < 0)
      throw Error(ErrorKind::ZeroOnContour, "winding number not near a nonnegative integer", hint);
    return out;
  }

 private:
  const BoundedComplex& value_at(const Real& re, const Real& im) {
    PointKey key{re, im};
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      it = cache_.emplace(std::move(key), eval_Xi(aleph_, Complex(re, im), ctx_).value).first;
    }
    const BoundedComplex& v = it->second;
    const Real m = abs(v.value);
    if (!min_modulus_ || m < *min_modulus_) min_modulus_ = m;
    if (v.radius > max_radius_) max_radius_ = v.radius;
    ++samples_;
    return v;
  }

  // Samples are generated from the lower endpoint upward so an edge shared by
  // two boxes is sampled at identical points in either direction.
  void edge(const Real& xa, const Real& ya, const Real& xb, const Real& yb) {
    const bool forward = (xa < xb) || (xa == xb && ya < yb);
    const Real& lx = forward ? xa : xb;
    const Real& ly = forward ? ya : yb;
    const Real& hx = forward ? xb : xa;
    const Real& hy = forward ? yb : ya;
    const Real length = abs(hx - lx) + abs(hy - ly);
    const int n = std::max(4, static_cast<int>(std::ceil(to_double(length) / kContourSpacing)));
    std::vector<std::pair<Real, Real>> pts;
    pts.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) {
      if (k == 0) pts.emplace_back(lx, ly);
      else if (k == n) pts.emplace_back(hx, hy);
      else pts.emplace_back(lx + (hx - lx) * k / n, ly + (hy - ly) * k / n);
    }
    if (!forward) std::reverse(pts.begin(), pts.end());
    for (int k = 0; k < n; ++k) segment(pts[k], pts[k + 1], 0);
  }

  void segment(const std::pair<Real, Real>& a, const std::pair<Real, Real>& b, int depth) {
    const Complex fa = value_at(a.first, a.second).value;
    const Complex fb = value_at(b.first, b.second).value;
    const Complex ratio = fb * std::conj(fa);
    const double delta = to_double(atan2(ratio.imag(), ratio.real()));
    if (std::abs(delta) < std::numbers::pi / 2) {
      phase_ += delta;
      return;
    }
    if (depth >= ctx_.max_refinements())
      throw Error(ErrorKind::ZeroOnContour, "phase not resolved on contour segment",
                  1e-3 * to_double(abs(b.first - a.first) + abs(b.second - a.second)));
    // Midpoint of the canonical orientation, identical for either direction.
    const bool forward = (a.first < b.first) || (a.first == b.first && a.second < b.second);
    const auto& lo = forward ? a : b;
    const auto& hi = forward ? b : a;
    const std::pair<Real, Real> mid{(lo.first + hi.first) / 2, (lo.second + hi.second) / 2};
    segment(a, mid, depth + 1);
    segment(mid, b, depth + 1);
  }

  const AlephParam& aleph_;
  const PrecisionContext& ctx_;
  PointCache& cache_;
  double phase_ = 0.0;
  std::optional<Real> min_modulus_;
  Real max_radius_{0};
  int samples_ = 0;
};

struct NewtonOutcome {
  Complex location;
  Real residual;
  Real radius;
  Real last_step;
  bool converged = false;
};

NewtonOutcome complex_newton(const AlephParam& aleph, Complex z, const Box& region, const PrecisionContext& ctx) {
  const Real step_tol = pow10(-(ctx.target_digits() - 5));
  NewtonOutcome out;
  out.location = z;
  for (int iter = 0; iter < 60; ++iter) {
    const EvalResult f = eval_Xi(aleph, z, ctx);
    const EvalResult d = eval_Xi_derivative(aleph, z, 1, ctx);
    out.location = z;
    out.residual = abs(f.value.value);
    out.radius = f.value.radius;
    const Real dmod = abs(d.value.value);
    if (dmod <= d.value.radius) return out;
    const Complex step = f.value.value / d.value.value;
    const Real noise = f.value.radius / dmod;
    z -= step;
    out.last_step = abs(step);
    if (z.real() < region.re_lo || z.real() > region.re_hi || z.imag() < region.im_lo || z.imag() > region.im_hi)
      return out;
    if (out.last_step < step_tol || out.last_step < 4 * noise) {
      const EvalResult final_value = eval_Xi(aleph, z, ctx);
      out.location = z;
      out.residual = abs(final_value.value.value);
      out.radius = final_value.value.radius;
      out.converged = true;
      return out;
    }
  }
  return out;
}

class Locator {
 public:
  Locator(const AlephParam& aleph, const PrecisionContext& ctx) : aleph_(aleph), ctx_(ctx), counter_(aleph, ctx, cache_) {}

  std::vector<ComplexZero> run(const Box& box) {
    const BoxCount top = count_perturbed(box);
    descend(top.box, top.count, 0);
    std::sort(found_.begin(), found_.end(), [](const ComplexZero& a, const ComplexZero& b) {
      if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
      return a.location.imag() < b.location.imag();
    });
    return std::move(found_);
  }

  BoxCount count_perturbed(const Box& box) {
    try {
      return counter_.count(box);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::ZeroOnContour) throw;
    }
    const Real diam = box.diameter();
    for (std::size_t i = 0; i < kPerturbations.size(); ++i) {
      try {
        return counter_.count(box.expanded(diam * Real(kPerturbations[i])));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnContour || i + 1 == kPerturbations.size()) throw;
      }
    }
    throw Error(ErrorKind::ZeroOnContour, "unreachable");
  }

 private:
  void descend(const Box& box, int count, int depth) {
    if (count == 0) return;
    const Complex center((box.re_lo + box.re_hi) / 2, (box.im_lo + box.im_hi) / 2);
    const Real diam = box.diameter();
    if (count == 1) {
      const NewtonOutcome n = complex_newton(aleph_, center, box, ctx_);
      if (n.converged) {
        push(n, 1);
        return;
      }
    }
    if (diam < Real(1e-3)) {
      push(complex_newton(aleph_, center, box.expanded(diam), ctx_), count);
      return;
    }
    if (depth >= ctx_.max_refinements())
      throw Error(ErrorKind::SubdivisionLimit, "quadtree depth exceeded max_refinements");

    for (double shift : {0.0, kPerturbations[0], kPerturbations[1], kPerturbations[2]}) {
      const Real cx = center.real() + diam * Real(shift);
      const Real cy = center.imag() + diam * Real(shift);
      const std::array<Box, 4> children{Box{box.re_lo, cx, box.im_lo, cy}, Box{cx, box.re_hi, box.im_lo, cy},
                                        Box{box.re_lo, cx, cy, box.im_hi}, Box{cx, box.re_hi, cy, box.im_hi}};
      std::array<int, 4> counts{};
      try {
        int total = 0;
        for (int i = 0; i < 4; ++i) {
          counts[i] = counter_.count(children[i]).count;
          total += counts[i];
        }
        if (total != count) continue;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::ZeroOnContour) throw;
        continue;
      }
      for (int i = 0; i < 4; ++i) descend(children[i], counts[i], depth + 1);
      return;
    }
    throw Error(ErrorKind::ZeroOnContour, "could not split box without a zero on the cut", 1e-3 * to_double(diam));
  }

  void push(const NewtonOutcome& n, int multiplicity) {
    ComplexZero z;
    z.aleph = aleph_;
    z.location = n.location;
    z.residual = n.residual;
    z.multiplicity = multiplicity;
    z.certified_digits = digits_from(n.last_step, ctx_.target_digits());
    if (abs(z.location.imag()) < Real(kRealAxisThreshold)) {
      try {
        const Real x = z.location.real();
        const Real delta(1e-5);
        const RealZero r = refine_zero(aleph_, x - delta, x + delta, ctx_);
        z.location = Complex(r.location, Real(0));
        z.residual = abs(eval_Xi(aleph_, z.location, ctx_).value.value);
        z.certified_digits = r.certified_digits;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoSignChange && e.kind() != ErrorKind::PrecisionExhausted) throw;
      }
    }
    found_.push_back(std::move(z));
  }

  const AlephParam& aleph_;
  const PrecisionContext& ctx_;
  PointCache cache_;
  ContourCounter counter_;
  std::vector<ComplexZero> found_;
};

}  // namespace

Real Box::diameter() const {
  const Real w = re_hi - re_lo;
  const Real h = im_hi - im_lo;
  return sqrt(w * w + h * h);
}

Box Box::expanded(const Real& eps) const { return {re_lo - eps, re_hi + eps, im_lo - eps, im_hi + eps}; }

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::AllRealInBox: return "ALL_REAL_IN_BOX";
    case Verdict::NonRealPresent: return "NON_REAL_PRESENT";
  }
  return "UNKNOWN";
}

RealZero refine_zero(const AlephParam& aleph, const Real& lo_in, const Real& hi_in, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Real lo = lo_in < hi_in ? lo_in : hi_in;
  Real hi = lo_in < hi_in ? hi_in : lo_in;
  RealSample flo = sample_real(aleph, lo, ctx);
  RealSample fhi = sample_real(aleph, hi, ctx);
  if (!flo.resolved() || !fhi.resolved())
    throw Error(ErrorKind::PrecisionExhausted, "bracket endpoint not resolved above its error radius");
  if (flo.positive() == fhi.positive()) throw Error(ErrorKind::NoSignChange, "Xi has the same sign at both ends");

  // Illinois false position with a bisection step whenever the bracket has
  // not halved in three iterations; stops at width 1e-6 or when the
  // interpolated point stops moving.
  std::optional<Real> unresolved_mid;
  std::optional<Real> estimate;
  const Real width(kBracketWidth);
  Real scaled_lo = flo.value;
  Real scaled_hi = fhi.value;
  int retained = 0;  // +1 while lo is kept, -1 while hi is kept
  Real checkpoint = hi - lo;
  int since_halving = 0;
  while (hi - lo > width) {
    Real mid;
    if (since_halving >= 3) {
      mid = (lo + hi) / 2;
      since_halving = 0;
      checkpoint = hi - lo;
    } else {
      mid = (lo * scaled_hi - hi * scaled_lo) / (scaled_hi - scaled_lo);
      if (!(mid > lo && mid < hi)) mid = (lo + hi) / 2;
    }
    const RealSample fm = sample_real(aleph, mid, ctx);
    if (!fm.resolved()) {
      unresolved_mid = mid;
      break;
    }
    const bool moved_little = estimate && abs(mid - *estimate) < width / 10;
    estimate = mid;
    if (fm.positive() == flo.positive()) {
      lo = mid;
      flo = fm;
      scaled_lo = fm.value;
      if (retained == -1) scaled_hi /= 2;
      retained = -1;
    } else {
      hi = mid;
      fhi = fm;
      scaled_hi = fm.value;
      if (retained == 1) scaled_lo /= 2;
      retained = 1;
    }
    if (hi - lo <= checkpoint / 2) {
      checkpoint = hi - lo;
      since_halving = 0;
    } else {
      ++since_halving;
    }
    if (moved_little) break;
  }

  RealZero zero;
  zero.aleph = aleph;
  const Real step_tol = pow10(-(ctx.target_digits() - 5));
  Real x = unresolved_mid ? *unresolved_mid : estimate && hi - lo > width ? *estimate : (lo + hi) / 2;
  bool converged = false;
  Real accuracy = hi - lo;
  for (int iter = 0; iter < 40; ++iter) {
    const RealSample f = sample_real(aleph, x, ctx);
    const EvalResult d = eval_Xi_derivative(aleph, x, 1, ctx);
    const Real slope = d.value.value.real();
    if (abs(slope) <= d.value.radius) break;
    const Real step = f.value / slope;
    const Real noise = f.radius / abs(slope);
    const Real next = x - step;
    if (next <= lo || next >= hi) break;
    x = next;
    accuracy = abs(step) > noise ? abs(step) : noise;
    if (abs(step) < step_tol || abs(step) < 4 * noise) {
      converged = true;
      break;
    }
  }

  if (!converged) {
    // Newton left the bracket or stalled: continue bisecting to half the target digits.
    const Real fallback_width = pow10(-(ctx.target_digits() / 2));
    while (hi - lo > fallback_width) {
      const Real mid = (lo + hi) / 2;
      const RealSample fm = sample_real(aleph, mid, ctx);
      if (!fm.resolved()) break;
      if (fm.positive() == flo.positive()) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
    }
    x = (lo + hi) / 2;
    accuracy = hi - lo;
  }
  zero.location = x;
  zero.bracket_lo = lo;
  zero.bracket_hi = hi;
  zero.certified_digits = digits_from(accuracy, ctx.target_digits());
  return zero;
}

ZeroTable scan_real_zeros(const AlephParam& aleph, const Real& a, const Real& b, const PrecisionContext& ctx) {
  if (!(a >= 0) || !(a < b)) throw Error(ErrorKind::InvalidInterval, "scan range must satisfy 0 <= a < b");
  if (b > 1000) throw Error(ErrorKind::InvalidArgument, "scan range beyond 1000 is not supported");
  PrecisionScope scope(ctx);

  ZeroTable table;
  table.aleph = aleph;
  table.provenance = ctx.summary();

  std::vector<RealSample> grid;
  const Real step(kScanStep);
  for (int i = 0;; ++i) {
    const Real x = a + step * i;
    if (x >= b) {
      grid.push_back(sample_real(aleph, b, ctx));
      break;
    }
    grid.push_back(sample_real(aleph, x, ctx));
  }

  std::vector<std::pair<Real, Real>> brackets;
  auto flag = [&](const Real& lo, const Real& hi) {
    if (!table.flagged.empty() && table.flagged.back().hi >= lo) {
      table.flagged.back().hi = hi;
      return;
    }
    table.flagged.push_back({lo, hi});
  };

  const std::size_t n = grid.size();
  std::optional<std::size_t> last_resolved;
  for (std::size_t i = 0; i < n; ++i) {
    if (!grid[i].resolved()) {
      flag(grid[i > 0 ? i - 1 : i].x, grid[i + 1 < n ? i + 1 : i].x);
      continue;
    }
    if (last_resolved && grid[*last_resolved].positive() != grid[i].positive())
      brackets.emplace_back(grid[*last_resolved].x, grid[i].x);
    last_resolved = i;
  }

  // Same-sign local minima of |Xi| may hide a close pair of zeros: resample at halved steps.
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const RealSample& l = grid[i - 1];
    const RealSample& c = grid[i];
    const RealSample& r = grid[i + 1];
    if (!l.resolved() || !c.resolved() || !r.resolved()) continue;
    if (l.positive() != c.positive() || c.positive() != r.positive()) continue;
    if (!(abs(c.value) < abs(l.value) && abs(c.value) < abs(r.value))) continue;

    RealSample left = l, center = c, right = r;
    Real h = step / 2;
    for (int level = 0; level < kProbeLevels; ++level) {
      const RealSample ml = sample_real(aleph, center.x - h, ctx);
      const RealSample mr = sample_real(aleph, center.x + h, ctx);
      const std::array<const RealSample*, 5> pts{&left, &ml, &center, &mr, &right};
      bool found = false;
      for (int k = 0; k < 4; ++k) {
        if (pts[k]->resolved() && pts[k + 1]->resolved() && pts[k]->positive() != pts[k + 1]->positive()) {
          brackets.emplace_back(pts[k]->x, pts[k + 1]->x);
          found = true;
        }
      }
      if (found || !ml.resolved() || !mr.resolved()) break;
      // Re-center on the smallest |Xi| among the three inner samples.
      if (abs(ml.value) < abs(center.value) && abs(ml.value) <= abs(mr.value)) {
        right = center;
        center = ml;
      } else if (abs(mr.value) < abs(center.value)) {
        left = center;
        center = mr;
      } else {
        left = ml;
        right = mr;
      }
      h /= 2;
    }
  }

  std::sort(brackets.begin(), brackets.end());
  for (const auto& [lo, hi] : brackets) {
    try {
      table.real_zeros.push_back(refine_zero(aleph, lo, hi, ctx));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted && e.kind() != ErrorKind::NoSignChange) throw;
      flag(lo, hi);
    }
  }
  std::sort(table.real_zeros.begin(), table.real_zeros.end(),
            [](const RealZero& x, const RealZero& y) { return x.location < y.location; });
  for (std::size_t i = 0; i < table.real_zeros.size(); ++i) table.real_zeros[i].index = static_cast<int>(i) + 1;
  return table;
}

BoxCount count_zeros_in_box(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx) {
  if (!(box.re_lo < box.re_hi) || !(box.im_lo < box.im_hi))
    throw Error(ErrorKind::InvalidInterval, "box must have positive width and height");
  PrecisionScope scope(ctx);
  PointCache cache;
  return ContourCounter(aleph, ctx, cache).count(box);
}

BoxCount count_zeros_perturbed(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx) {
  if (!(box.re_lo < box.re_hi) || !(box.im_lo < box.im_hi))
    throw Error(ErrorKind::InvalidInterval, "box must have positive width and height");
  PrecisionScope scope(ctx);
  Locator locator(aleph, ctx);
  return locator.count_perturbed(box);
}

std::vector<ComplexZero> locate_complex_zeros(const AlephParam& aleph, const Box& box, const PrecisionContext& ctx) {
  if (!(box.re_lo < box.re_hi) || !(box.im_lo < box.im_hi))
    throw Error(ErrorKind::InvalidInterval, "box must have positive width and height");
  PrecisionScope scope(ctx);
  Locator locator(aleph, ctx);
  return locator.run(box);
}

RealityReport reality_certificate(const AlephParam& aleph, const Real& b, const Real& height,
                                  const PrecisionContext& ctx) {
  if (!(b > 0) || !(height > 0)) throw Error(ErrorKind::InvalidArgument, "certificate needs b > 0 and h > 0");
  PrecisionScope scope(ctx);
  RealityReport report;
  report.aleph = aleph;
  report.b = b;
  report.height = height;
  const Box base{Real(0), b, -height, height};

  Locator locator(aleph, ctx);
  const BoxCount counted = locator.count_perturbed(base);
  report.box = counted.box;
  report.epsilon = base.re_lo - counted.box.re_lo;
  report.n_box = counted.count;

  report.table = scan_real_zeros(aleph, Real(0), counted.box.re_hi, ctx);
  if (!report.table.flagged.empty())
    throw Error(ErrorKind::PrecisionExhausted, "real scan left unresolved subintervals");
  report.n_real = static_cast<int>(report.table.real_zeros.size());
  // Zeros in (0, eps] have mirror images in [-eps, 0) inside the grown box.
  for (const RealZero& z : report.table.real_zeros)
    if (z.location <= report.epsilon) ++report.n_real;

  if (report.n_box == report.n_real) {
    report.verdict = Verdict::AllRealInBox;
    report.consistent = true;
    return report;
  }
  report.verdict = Verdict::NonRealPresent;
  const Box upper{counted.box.re_lo, counted.box.re_hi, Real(kRealAxisThreshold), counted.box.im_hi};
  int upper_count = 0;
  for (ComplexZero& z : locate_complex_zeros(aleph, upper, ctx)) {
    if (z.location.imag() <= Real(kRealAxisThreshold)) continue;
    upper_count += z.multiplicity;
    report.non_real_upper.push_back(z);
  }
  report.table.complex_zeros = report.non_real_upper;
  report.consistent = report.n_box == report.n_real + 2 * upper_count;
  return report;
}

}  // namespace xizeros
