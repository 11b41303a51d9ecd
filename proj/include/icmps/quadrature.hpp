// quadrature.hpp — Gauss–Legendre rules and a convergence-checked integrator.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "icmps/errors.hpp"

namespace icmps::quad {

using Eigen::VectorXd;

struct Rule {
  VectorXd nodes;
  VectorXd weights;
};

// Nodes and weights on [-1, 1], Newton iteration on the Legendre recurrence.
inline Rule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = w;
    r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[half - 1] = 0.0;
  return r;
}

inline Rule scaled(const Rule& base, double a, double b) {
  Rule r;
  const double mid = 0.5 * (a + b), span = 0.5 * (b - a);
  r.nodes = (base.nodes.array() * span + mid).matrix();
  r.weights = base.weights * span;
  return r;
}

// Composite rule: `panels` equal panels of a fixed-order rule on [a, b].
inline Rule composite(double a, double b, int panels, int order) {
  if (panels < 1) throw std::invalid_argument("composite: panels < 1");
  if (b < a) throw std::invalid_argument("composite: b < a");
  const Rule base = gauss_legendre(order);
  Rule r;
  r.nodes.resize(static_cast<Eigen::Index>(panels) * order);
  r.weights.resize(r.nodes.size());
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const Rule panel = scaled(base, a + p * h, a + (p + 1) * h);
    r.nodes.segment(static_cast<Eigen::Index>(p) * order, order) = panel.nodes;
    r.weights.segment(static_cast<Eigen::Index>(p) * order, order) =
        panel.weights;
  }
  return r;
}

// Integrates f over [a, b] with panel doubling until two refinements agree to
// rel_tol; throws AccuracyError if the sequence never settles.
inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double rel_tol = 1e-10) {
  double prev = 0.0;
  bool have_prev = false;
  for (int panels = 4; panels <= 4096; panels *= 2) {
    const Rule r = composite(a, b, panels, 16);
    double sum = 0.0;
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i)
      sum += r.weights[i] * f(r.nodes[i]);
    if (have_prev &&
        std::abs(sum - prev) <= rel_tol * std::max(1.0, std::abs(sum)))
      return sum;
    prev = sum;
    have_prev = true;
  }
  throw AccuracyError("integrate: panel refinement did not converge");
}

}  // namespace icmps::quad
