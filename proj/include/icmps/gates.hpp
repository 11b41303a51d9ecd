// gates.hpp — Two-site gate construction: generic Hermitian exponentials and
// the occupation-conserving fast path for boson hopping bonds.
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "icmps/linalg.hpp"
#include "icmps/mps.hpp"

namespace icmps::gates {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

inline MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline MatrixXcd boson_annihilation(int d) {
  MatrixXcd b = MatrixXcd::Zero(d, d);
  for (int n = 1; n < d; ++n) b(n - 1, n) = std::sqrt(double(n));
  return b;
}

inline MatrixXcd boson_position(int d) {  // b + b^dagger
  const MatrixXcd b = boson_annihilation(d);
  return b + b.adjoint();
}

inline VectorXd boson_number_diag(int d) {
  return VectorXd::LinSpaced(d, 0.0, double(d - 1));
}

inline MatrixXcd boson_number(int d) {
  return boson_number_diag(d).cast<cplx>().asDiagonal();
}

inline MatrixXcd pauli_x() {
  MatrixXcd s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

inline MatrixXcd pauli_z() {
  MatrixXcd s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// exp(-i h tau) as a dense two-site gate; h over sigma1*d2 + sigma2.
inline mps::TwoSiteGate gate_from_hamiltonian(const MatrixXcd& h, int d1,
                                              int d2, double tau) {
  if (h.rows() != d1 * d2 || h.cols() != d1 * d2)
    throw std::invalid_argument("gate_from_hamiltonian: size mismatch");
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (((h - h.adjoint()).cwiseAbs().maxCoeff()) > 1e-12 * scale)
    throw std::domain_error("gate_from_hamiltonian: h not Hermitian");
  linalg::HermitianEig eig = linalg::hermitian_eig(h);
  Eigen::VectorXcd phases(eig.values.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases[k] = std::exp(cplx(0.0, -eig.values[k] * tau));
  mps::TwoSiteGate g;
  g.d1 = d1;
  g.d2 = d2;
  g.dense = eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
  return g;
}

// exp(-i h tau) for h = wa n⊗1 + wb 1⊗n + kappa (b†⊗b + b⊗b†), which
// conserves the pair occupation: one small tridiagonal eigensolve per sector
// instead of a dense (d1 d2)-dimensional exponential.
inline mps::TwoSiteGate hopping_gate(double wa, double wb, double kappa,
                                     int d1, int d2, double tau) {
  if (d1 < 1 || d2 < 1)
    throw std::invalid_argument("hopping_gate: bad dimensions");
  mps::TwoSiteGate g;
  g.d1 = d1;
  g.d2 = d2;
  g.blocks.reserve(d1 + d2 - 1);
  for (int s = 0; s <= d1 + d2 - 2; ++s) {
    const int lo = std::max(0, s - (d2 - 1));
    const int hi = std::min(d1 - 1, s);
    const int n = hi - lo + 1;
    VectorXd diag(n), sub(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) {
      const int n1 = lo + i;
      diag[i] = wa * n1 + wb * (s - n1);
      if (i + 1 < n)
        sub[i] = kappa * std::sqrt(double(n1 + 1) * double(s - n1));
    }
    auto [vals, vecs] = linalg::tridiagonal_eig(diag, sub);
    Eigen::VectorXcd phases(n);
    for (int k = 0; k < n; ++k) phases[k] = std::exp(cplx(0.0, -vals[k] * tau));
    mps::TwoSiteGate::Block blk;
    blk.total = s;
    blk.lo = lo;
    blk.u = vecs.cast<cplx>() * phases.asDiagonal() *
            vecs.transpose().cast<cplx>();
    g.blocks.push_back(std::move(blk));
  }
  return g;
}

}  // namespace icmps::gates
