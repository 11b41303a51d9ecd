// chain_mapping.hpp — Maps a continuous bath weight onto a nearest-neighbour
// bosonic chain via discretized orthogonal-polynomial recurrences, and from
// there onto decoupled star modes.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "icmps/errors.hpp"
#include "icmps/linalg.hpp"
#include "icmps/quadrature.hpp"
#include "icmps/spectral.hpp"

namespace icmps::chain {

using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

struct DiscretizedMeasure {
  VectorXd points;   // ascending support points
  VectorXd weights;  // non-negative masses
};

// Composite Gauss–Legendre sampling of J(omega, beta) over its domain.  The
// thermal weight has a kink at omega = 0, so the two half-axes get their own
// panels.
inline DiscretizedMeasure discretize_measure(
    const spectral::ThermalizedWeight& w, int num_points) {
  if (num_points < 1) throw ConfigError("discretize_measure: num_points < 1");
  constexpr int kOrder = 16;
  const bool two_sided = w.omega_min < 0.0;
  DiscretizedMeasure m;
  if (two_sided) {
    const int panels = std::max(1, (num_points + 2 * kOrder - 1) / (2 * kOrder));
    const quad::Rule lo = quad::composite(w.omega_min, 0.0, panels, kOrder);
    const quad::Rule hi = quad::composite(0.0, w.omega_max, panels, kOrder);
    m.points.resize(lo.nodes.size() + hi.nodes.size());
    m.weights.resize(m.points.size());
    m.points << lo.nodes, hi.nodes;
    m.weights << lo.weights, hi.weights;
  } else {
    const int panels = std::max(1, (num_points + kOrder - 1) / kOrder);
    const quad::Rule r = quad::composite(0.0, w.omega_max, panels, kOrder);
    m.points = r.nodes;
    m.weights = r.weights;
  }
  for (Eigen::Index i = 0; i < m.points.size(); ++i)
    m.weights[i] *= std::max(0.0, eval_thermalized(w, m.points[i]));
  return m;
}

struct Coefficients {
  VectorXd omegas;  // chain site energies, size N+1
  VectorXd kappas;  // kappas[0] couples the system; kappas[1..N] are hoppings
};

// Discrete Stieltjes procedure with full reorthogonalization.  The measure
// must carry at least twice as many points as recurrence steps.
inline Coefficients stieltjes_recurrence(const DiscretizedMeasure& m, int N) {
  if (N < 0) throw ConfigError("stieltjes_recurrence: N < 0");
  const Eigen::Index q = m.points.size();
  if (q < 2 * static_cast<Eigen::Index>(N + 1))
    throw ConfigError("stieltjes_recurrence: need num_points >= 2*(N+1)");
  if ((m.weights.array() < 0.0).any())
    throw std::invalid_argument("stieltjes_recurrence: negative weight");

  Coefficients c;
  c.omegas.resize(N + 1);
  c.kappas.resize(N + 1);

  const double mass = m.weights.sum();
  const double kappa0 = std::sqrt(mass);
  if (!(kappa0 > 0.0) || !std::isfinite(kappa0))
    throw NumericalBreakdown("stieltjes: vanishing total weight", 0);
  c.kappas[0] = kappa0;

  MatrixXd basis(q, N + 1);  // orthonormal polynomial samples, sqrt(w)-scaled
  const VectorXd sqw = m.weights.array().sqrt();
  basis.col(0) = sqw / kappa0;
  VectorXd prev = VectorXd::Zero(q);
  for (int n = 0; n <= N; ++n) {
    const VectorXd xv = m.points.asDiagonal() * basis.col(n);
    c.omegas[n] = basis.col(n).dot(xv);
    if (n == N) break;
    VectorXd u = xv - c.omegas[n] * basis.col(n);
    if (n > 0) u -= c.kappas[n] * basis.col(n - 1);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j <= n; ++j) u -= basis.col(j).dot(u) * basis.col(j);
    const double norm = u.norm();
    if (!(norm > 1e-14 * kappa0) || !std::isfinite(norm))
      throw NumericalBreakdown("stieltjes: recurrence broke down", n + 1);
    c.kappas[n + 1] = norm;
    basis.col(n + 1) = u / norm;
  }
  return c;
}

inline MatrixXd build_tridiagonal(const Coefficients& c) {
  const Eigen::Index n = c.omegas.size();
  MatrixXd M = MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    M(i, i) = c.omegas[i];
    if (i + 1 < n) M(i, i + 1) = M(i + 1, i) = c.kappas[i + 1];
  }
  return M;
}

struct StarDecomposition {
  VectorXd lambdas;  // mode frequencies, ascending
  MatrixXd P;        // orthogonal, M = P^T diag(lambdas) P
  double kappa0{0.0};
};

// Eigenmodes of the chain's one-body matrix.  Each eigenvector's first
// non-zero component is made positive so the decomposition is deterministic.
inline StarDecomposition diagonalize_tridiagonal(const Coefficients& c) {
  const int n = static_cast<int>(c.omegas.size());
  auto [vals, vecs] = linalg::tridiagonal_eig(
      c.omegas, n > 1 ? VectorXd(c.kappas.tail(n - 1)) : VectorXd());
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (vecs(i, k) != 0.0) {
        if (vecs(i, k) < 0.0) vecs.col(k) = -vecs.col(k);
        break;
      }
    }
  }
  StarDecomposition dec;
  dec.lambdas = std::move(vals);
  dec.P = vecs.transpose();
  dec.kappa0 = c.kappas[0];
  return dec;
}

// Static system-mode couplings of the star picture.
inline VectorXd couplings_star(const StarDecomposition& dec) {
  return dec.kappa0 * dec.P.col(0);
}

// Time-dependent localized couplings of the interaction picture:
// d_n(t) = kappa0 * sum_k P_{k,0} P_{k,n} exp(-i lambda_k t).
inline VectorXcd couplings_ic(const StarDecomposition& dec, double t) {
  const Eigen::Index n = dec.P.rows();
  VectorXcd phased(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phased[k] = dec.P(k, 0) *
                std::exp(std::complex<double>(0.0, -dec.lambdas[k] * t));
  return dec.kappa0 * (dec.P.transpose().cast<std::complex<double>>() * phased);
}

}  // namespace icmps::chain
