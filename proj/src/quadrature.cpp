#include "tas/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "tas/error.hpp"

namespace tas::quadrature {

namespace {

// Legendre P_m and its derivative at t via the three-term recurrence.
struct PDp {
  double p;
  double dp;
};

PDp legendre(int m, double t) {
  double p0 = 1.0;
  double p1 = t;
  if (m == 0) return {p0, 0.0};
  for (int k = 2; k <= m; ++k) {
    double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  double dp = m * (t * p1 - p0) / (t * t - 1.0);
  return {p1, dp};
}

}  // namespace

Rule1D gauss_legendre(int m) {
  if (m < 1) throw InvalidInputError("gauss_legendre: point count must be >= 1");
  Rule1D rule;
  rule.points.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.points[0] = 0.5;
    rule.weights[0] = 1.0;
    return rule;
  }
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the classical Chebyshev-based initial guess; the
    // guesses enumerate roots in descending t, i.e. ascending x = (1 - t)/2.
    double t = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(m, t);
      double dt = -p / dp;
      t += dt;
      if (std::abs(dt) < 1e-15) break;
    }
    auto [p, dp] = legendre(m, t);
    (void)p;
    rule.points[i] = 0.5 * (1.0 - t);
    rule.weights[i] = 1.0 / ((1.0 - t * t) * dp * dp);
  }
  return rule;
}

TriangleRule duffy_triangle(int m) {
  Rule1D g = gauss_legendre(m);
  TriangleRule rule;
  rule.x.reserve(m * m);
  rule.y.reserve(m * m);
  rule.w.reserve(m * m);
  // (u, v) in the unit square maps to (u, v(1-u)); the Jacobian factor (1-u)
  // concentrates points toward the collapsed vertex but keeps them interior.
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      double u = g.points[i];
      double v = g.points[j];
      rule.x.push_back(u);
      rule.y.push_back(v * (1.0 - u));
      rule.w.push_back(g.weights[i] * g.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

}  // namespace tas::quadrature
