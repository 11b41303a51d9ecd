// oracle.hpp — Dense reference propagation for small chains: exact
// eigendecomposition of the truncated Hamiltonian, plus a fixed-step
// integrator used to cross-check the eigensolve itself.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "icmps/chain_mapping.hpp"
#include "icmps/errors.hpp"
#include "icmps/gates.hpp"
#include "icmps/linalg.hpp"

namespace icmps::oracle {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// Spin + (N+1)-mode chain Hamiltonian on the full product space, spin factor
// slowest.  Refuses to build above two million basis states.
inline MatrixXcd dense_hamiltonian(double delta, const chain::Coefficients& c,
                                   int d_b) {
  if (d_b < 1) throw std::invalid_argument("dense_hamiltonian: d_b < 1");
  const int modes = static_cast<int>(c.omegas.size());
  double dim_check = 2.0;
  for (int i = 0; i < modes; ++i) {
    dim_check *= d_b;
    if (dim_check > 2e6)
      throw ConfigError("dense_hamiltonian: dimension exceeds 2e6");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(dim_check);

  auto embed = [&](const MatrixXcd& op, int site) {
    // site -1 is the spin; modes count from 0
    MatrixXcd out = site == -1 ? op : MatrixXcd::Identity(2, 2);
    for (int m = 0; m < modes; ++m) {
      const MatrixXcd& factor =
          m == site ? op : MatrixXcd::Identity(d_b, d_b);
      out = gates::kron(out, factor);
    }
    return out;
  };

  const MatrixXcd x = gates::boson_position(d_b);
  const MatrixXcd num = gates::boson_number(d_b);
  const MatrixXcd b = gates::boson_annihilation(d_b);

  MatrixXcd H = MatrixXcd::Zero(dim, dim);
  H += delta * embed(gates::pauli_x(), -1);
  H += c.kappas[0] * embed(gates::pauli_z(), -1) * embed(x, 0);
  for (int n = 0; n < modes; ++n) {
    H += c.omegas[n] * embed(num, n);
    if (n + 1 < modes) {
      const MatrixXcd hop = embed(b.adjoint(), n + 1) * embed(b, n);
      H += c.kappas[n + 1] * (hop + hop.adjoint());
    }
  }
  return H;
}

// Eigendecomposition-based propagator from |up> ⊗ vacuum.
struct ExactPropagator {
  VectorXd evals;
  MatrixXcd evecs;
  VectorXcd c0;        // evecs^dagger |psi(0)>
  Eigen::Index half{0};  // spin-up block size

  double population_up(double t) const {
    VectorXcd phased(c0.size());
    for (Eigen::Index k = 0; k < c0.size(); ++k)
      phased[k] = c0[k] * std::exp(cplx(0.0, -evals[k] * t));
    const VectorXcd psi = evecs.leftCols(c0.size()) * phased;
    return psi.head(half).squaredNorm();
  }
};

inline ExactPropagator make_propagator(const MatrixXcd& H) {
  linalg::HermitianEig eig = linalg::hermitian_eig(H);
  ExactPropagator p;
  p.evals = std::move(eig.values);
  p.evecs = std::move(eig.vectors);
  p.c0 = p.evecs.row(0).adjoint();  // initial state is basis vector 0
  p.half = p.evecs.rows() / 2;
  return p;
}

inline VectorXd exact_populations(const MatrixXcd& H,
                                  const std::vector<double>& times) {
  const ExactPropagator p = make_propagator(H);
  VectorXd out(static_cast<Eigen::Index>(times.size()));
  for (size_t i = 0; i < times.size(); ++i)
    out[static_cast<Eigen::Index>(i)] = p.population_up(times[i]);
  return out;
}

// Classic fixed-step RK4 on i d/dt psi = H psi; self-check for the
// eigendecomposition path.
inline VectorXd rk4_populations(const MatrixXcd& H,
                                const std::vector<double>& times, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_populations: dt <= 0");
  const Eigen::Index dim = H.rows();
  VectorXcd psi = VectorXcd::Zero(dim);
  psi[0] = 1.0;
  const cplx mi(0.0, -1.0);
  VectorXd out(static_cast<Eigen::Index>(times.size()));
  size_t next = 0;
  long step = 0;
  auto record = [&] {
    const double t = step * dt;
    while (next < times.size() && times[next] < t + 0.25 * dt) {
      if (std::abs(times[next] - t) > 0.25 * dt)
        throw std::invalid_argument(
            "rk4_populations: times must be multiples of dt");
      out[static_cast<Eigen::Index>(next)] = psi.head(dim / 2).squaredNorm();
      ++next;
    }
  };
  record();
  while (next < times.size()) {
    const VectorXcd k1 = mi * (H * psi);
    const VectorXcd k2 = mi * (H * (psi + 0.5 * dt * k1));
    const VectorXcd k3 = mi * (H * (psi + 0.5 * dt * k2));
    const VectorXcd k4 = mi * (H * (psi + dt * k3));
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    ++step;
    record();
  }
  return out;
}

}  // namespace icmps::oracle
