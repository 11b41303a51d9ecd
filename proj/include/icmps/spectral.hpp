// spectral.hpp — Bath spectral densities and their finite-temperature
// (thermofield) extension to a two-sided frequency axis.
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "icmps/quadrature.hpp"

namespace icmps::spectral {

enum class Kind { Drude };

struct Model {
  Kind kind{Kind::Drude};
  double eta{1.0};      // coupling strength
  double omega_c{1.0};  // cutoff frequency
};

inline void validate(const Model& m) {
  if (!(m.eta >= 0.0) || !std::isfinite(m.eta))
    throw std::invalid_argument("spectral: eta must be finite and >= 0");
  if (!(m.omega_c > 0.0) || !std::isfinite(m.omega_c))
    throw std::invalid_argument("spectral: omega_c must be finite and > 0");
}

// J(omega) for omega > 0.
inline double eval_density(const Model& m, double omega) {
  validate(m);
  if (!(omega > 0.0))
    throw std::domain_error("eval_density: omega must be > 0");
  switch (m.kind) {
    case Kind::Drude:
      return m.eta * m.omega_c * omega /
             (m.omega_c * m.omega_c + omega * omega);
  }
  throw std::invalid_argument("eval_density: unknown kind");
}

// (4/pi) * Int_0^inf J(omega)/omega domega.  Evaluated by quadrature after
// mapping to [0, 1]; Drude gives 2*eta.
inline double reorganization_energy(const Model& m) {
  validate(m);
  if (m.eta == 0.0) return 0.0;
  const double wc = m.omega_c;
  const double val = quad::integrate(
      [&](double u) {
        const double w = wc * u / (1.0 - u);
        const double jac = wc / ((1.0 - u) * (1.0 - u));
        return eval_density(m, w) / w * jac;
      },
      1e-12, 1.0 - 1e-12, 1e-9);
  return 4.0 / M_PI * val;
}

// Two-sided thermal weight J(omega, beta); its square root is the coupling
// function handed to the chain mapping.  beta may be infinite (zero
// temperature), in which case the domain collapses to [0, omega_max].
struct ThermalizedWeight {
  Model model{};
  double beta{1.0};
  double omega_min{0.0};
  double omega_max{0.0};
};

inline double default_omega_max(const Model& m, double beta) {
  if (std::isinf(beta)) return 10.0 * m.omega_c;
  return std::max(10.0 * m.omega_c, 10.0 / beta + 5.0 * m.omega_c);
}

inline ThermalizedWeight make_thermalized(const Model& m, double beta,
                                          double omega_max = 0.0) {
  validate(m);
  if (!(beta > 0.0)) throw std::invalid_argument("thermalized: beta <= 0");
  ThermalizedWeight w;
  w.model = m;
  w.beta = beta;
  w.omega_max = omega_max > 0.0 ? omega_max : default_omega_max(m, beta);
  w.omega_min = std::isinf(beta) ? 0.0 : -w.omega_max;
  return w;
}

// sign(omega) * J(|omega|) * (1 + coth(beta*omega/2)) / 2, with the removable
// point at omega = 0 filled by its analytic limit.
inline double eval_thermalized(const ThermalizedWeight& w, double omega) {
  if (omega < w.omega_min || omega > w.omega_max)
    throw std::domain_error("eval_thermalized: omega outside domain");
  const Model& m = w.model;
  if (std::isinf(w.beta))
    return omega > 0.0 ? eval_density(m, omega) : 0.0;
  if (std::abs(omega) < 1e-8 * m.omega_c) {
    switch (m.kind) {
      case Kind::Drude:
        return m.eta / (w.beta * m.omega_c);
    }
  }
  const double coth = 1.0 / std::tanh(0.5 * w.beta * omega);
  const double sgn = omega > 0.0 ? 1.0 : -1.0;
  return sgn * eval_density(m, std::abs(omega)) * 0.5 * (1.0 + coth);
}

}  // namespace icmps::spectral
