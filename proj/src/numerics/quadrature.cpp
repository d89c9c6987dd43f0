#include "xizeros/quadrature.hpp"

#include <algorithm>
#include <map>

namespace xizeros {

namespace {

// Newton iteration on P_n from the Chebyshev-like initial guesses; the
// recurrence is evaluated at the active precision so nodes are full accuracy.
GaussLegendreRule compute_rule(int n) {
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real p = pi();
  const Real eps = pow10(-static_cast<int>(Real::default_precision()) + 2);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real z = cos(p * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0(1), p1 = z;
      for (int k = 2; k <= n; ++k) {
        Real p2 = ((2 * k - 1) * z * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (z * p1 - p0) / (z * z - 1);
      const Real step = p1 / dp;
      z -= step;
      if (abs(step) < eps) break;
    }
    const Real w = 2 / ((1 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendreRule& gauss_legendre_rule(int degree) {
  if (degree < 2) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre degree must be at least 2");
  thread_local std::map<std::pair<unsigned, int>, GaussLegendreRule> cache;
  const std::pair<unsigned, int> key{Real::default_precision(), degree};
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute_rule(degree)).first;
  return it->second;
}

int rule_degree(const PrecisionContext& ctx) {
  const int extra = std::max(0, ctx.target_digits() - 30);
  return kGaussLegendreDegree + 4 * ((3 * extra + 15) / 16);
}

}  // namespace xizeros
