// mps.hpp — Vidal-gauge matrix product states and the two-site TEBD update.
//
// Site tensors are stored one matrix per physical index (left bond x right
// bond), with singular-value vectors on the internal bonds.  The two-site
// update contracts both outer singular values into the pair tensor, applies a
// gate (optionally exchanging the physical legs afterwards), splits with a
// truncated SVD and restores the gauge by dividing the outer values back out.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>
#include <vector>

#include "icmps/errors.hpp"
#include "icmps/linalg.hpp"

namespace icmps::mps {

using Eigen::MatrixXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

// A unitary acting on two neighbouring sites.  Either a dense matrix over the
// composite index sigma1*d2 + sigma2, or — for Hamiltonians that conserve the
// total occupation of the pair — one dense factor per occupation sector,
// which keeps large local dimensions affordable.
struct TwoSiteGate {
  int d1{0};
  int d2{0};
  MatrixXcd dense;

  struct Block {
    int total{0};    // conserved pair occupation
    int lo{0};       // smallest sigma1 in the sector
    MatrixXcd u;     // unitary over sigma1 = lo .. lo + rows - 1
  };
  std::vector<Block> blocks;

  bool blocked() const { return !blocks.empty(); }

  // theta rows indexed by sigma1*d2 + sigma2; applied in place.
  void apply(MatrixXcd& theta) const {
    if (!blocked()) {
      theta = dense * theta;
      return;
    }
    MatrixXcd buf;
    for (const Block& b : blocks) {
      const int n = static_cast<int>(b.u.rows());
      buf.resize(n, theta.cols());
      for (int i = 0; i < n; ++i) {
        const int s1 = b.lo + i;
        buf.row(i) = theta.row(s1 * d2 + (b.total - s1));
      }
      buf = b.u * buf;
      for (int i = 0; i < n; ++i) {
        const int s1 = b.lo + i;
        theta.row(s1 * d2 + (b.total - s1)) = buf.row(i);
      }
    }
  }

  // Materializes the full matrix (tests, small dimensions).
  MatrixXcd matrix() const {
    if (!blocked()) return dense;
    MatrixXcd g = MatrixXcd::Zero(d1 * d2, d1 * d2);
    for (const Block& b : blocks) {
      const int n = static_cast<int>(b.u.rows());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const int r = (b.lo + i) * d2 + (b.total - b.lo - i);
          const int c = (b.lo + j) * d2 + (b.total - b.lo - j);
          g(r, c) = b.u(i, j);
        }
    }
    return g;
  }
};

struct VidalMPS {
  std::vector<int> dims;                      // physical dimension per site
  std::vector<std::vector<MatrixXcd>> gamma;  // gamma[site][sigma]
  std::vector<VectorXd> svals;                // svals[b] sits between b, b+1

  int size() const { return static_cast<int>(dims.size()); }
  int bond_dim(int b) const { return static_cast<int>(svals.at(b).size()); }
};

inline VidalMPS product_state(const std::vector<int>& dims,
                              const std::vector<int>& occupation) {
  if (dims.empty()) throw std::invalid_argument("product_state: no sites");
  if (occupation.size() != dims.size())
    throw std::invalid_argument("product_state: occupation size mismatch");
  VidalMPS psi;
  psi.dims = dims;
  psi.gamma.resize(dims.size());
  for (size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1) throw std::invalid_argument("product_state: dim < 1");
    if (occupation[i] < 0 || occupation[i] >= dims[i])
      throw std::invalid_argument("product_state: occupation out of range");
    psi.gamma[i].resize(dims[i]);
    for (int s = 0; s < dims[i]; ++s)
      psi.gamma[i][s] =
          s == occupation[i] ? MatrixXcd::Ones(1, 1) : MatrixXcd::Zero(1, 1);
  }
  if (dims.size() > 1) psi.svals.assign(dims.size() - 1, VectorXd::Ones(1));
  return psi;
}

inline std::vector<int> bond_profile(const VidalMPS& psi) {
  std::vector<int> p;
  p.reserve(psi.svals.size());
  for (const auto& s : psi.svals) p.push_back(static_cast<int>(s.size()));
  return p;
}

struct TruncationOptions {
  double threshold{1e-3};  // singular values below this are discarded
  int max_bond{1000};      // hard cap applied after the threshold
  bool allow_randomized{true};
};

struct TruncationReport {
  double discarded{0.0};  // squared weight removed before renormalization
  int bond_dim{0};
  double svd_seconds{0.0};
};

namespace detail {

inline void check_invertible(const VectorXd& s) {
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] < 1e-14)
      throw GaugeError("two-site update: outer singular value below 1e-14");
}

}  // namespace detail

// Applies `gate` at `bond`; with swap = true the physical legs are exchanged
// after the gate (the pair dimensions trade places).  Returns the truncation
// bookkeeping for the refreshed bond.
inline TruncationReport apply_two_site_gate(VidalMPS& psi, int bond,
                                            const TwoSiteGate& gate, bool swap,
                                            const TruncationOptions& opt = {}) {
  const int L = psi.size();
  if (bond < 0 || bond >= L - 1)
    throw std::invalid_argument("apply_two_site_gate: bond out of range");
  const int d1 = psi.dims[bond], d2 = psi.dims[bond + 1];
  if (gate.d1 != d1 || gate.d2 != d2)
    throw std::invalid_argument("apply_two_site_gate: gate dimensions mismatch");

  const VectorXd sl =
      bond > 0 ? psi.svals[bond - 1] : VectorXd::Ones(1);
  const VectorXd& sm = psi.svals[bond];
  const VectorXd sr =
      bond + 2 < L ? psi.svals[bond + 1] : VectorXd::Ones(1);
  detail::check_invertible(sl);
  detail::check_invertible(sr);
  const int Dl = static_cast<int>(sl.size());
  const int Dm = static_cast<int>(sm.size());
  const int Dr = static_cast<int>(sr.size());

  // Pair tensor with both outer singular values contracted in, laid out for
  // the SVD as (sigma1, l) x (sigma2, r).
  MatrixXcd m1(d1 * Dl, Dm), m2(Dm, d2 * Dr);
  for (int s = 0; s < d1; ++s)
    m1.middleRows(s * Dl, Dl) =
        sl.asDiagonal() * psi.gamma[bond][s] * sm.asDiagonal();
  for (int s = 0; s < d2; ++s)
    m2.middleCols(s * Dr, Dr) = psi.gamma[bond + 1][s] * sr.asDiagonal();
  MatrixXcd theta;
  linalg::gemm('N', 'N', m1, m2, theta);

  // Physical-major layout for the gate.
  MatrixXcd phys(d1 * d2, Dl * Dr);
  for (int s1 = 0; s1 < d1; ++s1)
    for (int s2 = 0; s2 < d2; ++s2)
      for (int l = 0; l < Dl; ++l)
        for (int r = 0; r < Dr; ++r)
          phys(s1 * d2 + s2, l * Dr + r) = theta(s1 * Dl + l, s2 * Dr + r);
  gate.apply(phys);

  const int e1 = swap ? d2 : d1;  // dimensions after the optional exchange
  const int e2 = swap ? d1 : d2;
  theta.resize(e1 * Dl, e2 * Dr);
  for (int s1 = 0; s1 < d1; ++s1)
    for (int s2 = 0; s2 < d2; ++s2) {
      const int a = swap ? s2 : s1;
      const int b = swap ? s1 : s2;
      for (int l = 0; l < Dl; ++l)
        for (int r = 0; r < Dr; ++r)
          theta(a * Dl + l, b * Dr + r) = phys(s1 * d2 + s2, l * Dr + r);
    }

  linalg::TruncatedSvd svd = linalg::truncated_svd(
      theta, opt.threshold, opt.max_bond, Dm, opt.allow_randomized);
  const int keep = static_cast<int>(svd.s.size());
  svd.s /= svd.s.norm();

  psi.dims[bond] = e1;
  psi.dims[bond + 1] = e2;
  psi.svals[bond] = svd.s;
  psi.gamma[bond].assign(e1, MatrixXcd());
  psi.gamma[bond + 1].assign(e2, MatrixXcd());
  const VectorXd inv_l = sl.cwiseInverse();
  const VectorXd inv_r = sr.cwiseInverse();
  for (int s = 0; s < e1; ++s)
    psi.gamma[bond][s] = inv_l.asDiagonal() * svd.U.middleRows(s * Dl, Dl);
  for (int s = 0; s < e2; ++s)
    psi.gamma[bond + 1][s] = svd.Vt.middleCols(s * Dr, Dr) * inv_r.asDiagonal();

  return {svd.discarded, keep, svd.seconds};
}

namespace detail {

inline MatrixXcd site_env_overlaps(const VidalMPS& psi, int site) {
  const int L = psi.size();
  const int d = psi.dims[site];
  const VectorXd sl = site > 0 ? psi.svals[site - 1] : VectorXd::Ones(1);
  const VectorXd sr = site + 1 < L ? psi.svals[site] : VectorXd::Ones(1);
  MatrixXcd t(d, d);
  std::vector<MatrixXcd> a(d);
  for (int s = 0; s < d; ++s)
    a[s] = sl.asDiagonal() * psi.gamma[site][s] * sr.asDiagonal();
  for (int sp = 0; sp < d; ++sp)
    for (int s = 0; s < d; ++s)
      t(sp, s) = a[sp].cwiseProduct(a[s].conjugate()).sum();
  return t;  // the single-site density matrix: t(sp, s) = rho(sp, s)
}

}  // namespace detail

// <op> at `site` under the Vidal-gauge single-site environment (the outer
// singular values squared).  Real part returned; the imaginary residue of a
// Hermitian operator is at rounding level.
inline double local_expectation(const VidalMPS& psi, int site,
                                const MatrixXcd& op) {
  if (site < 0 || site >= psi.size())
    throw std::invalid_argument("local_expectation: site out of range");
  const int d = psi.dims[site];
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("local_expectation: operator size mismatch");
  const MatrixXcd t = detail::site_env_overlaps(psi, site);
  cplx val(0.0, 0.0);
  for (int sp = 0; sp < d; ++sp)
    for (int s = 0; s < d; ++s) val += op(sp, s) * t(s, sp);
  return val.real();
}

// Fast path for diagonal observables (occupations).
inline double local_expectation(const VidalMPS& psi, int site,
                                const VectorXd& diag_op) {
  if (site < 0 || site >= psi.size())
    throw std::invalid_argument("local_expectation: site out of range");
  const int d = psi.dims[site];
  if (diag_op.size() != d)
    throw std::invalid_argument("local_expectation: operator size mismatch");
  const int L = psi.size();
  const VectorXd sl = site > 0 ? psi.svals[site - 1] : VectorXd::Ones(1);
  const VectorXd sr = site + 1 < L ? psi.svals[site] : VectorXd::Ones(1);
  double val = 0.0;
  for (int s = 0; s < d; ++s) {
    const MatrixXcd a =
        sl.asDiagonal() * psi.gamma[site][s] * sr.asDiagonal();
    val += diag_op[s] * a.squaredNorm();
  }
  return val;
}

// <op> over the site pair at `bond`, op indexed by sigma1*d2 + sigma2.
inline double two_site_expectation(const VidalMPS& psi, int bond,
                                   const MatrixXcd& op) {
  const int L = psi.size();
  if (bond < 0 || bond >= L - 1)
    throw std::invalid_argument("two_site_expectation: bond out of range");
  const int d1 = psi.dims[bond], d2 = psi.dims[bond + 1];
  if (op.rows() != d1 * d2 || op.cols() != d1 * d2)
    throw std::invalid_argument("two_site_expectation: operator size mismatch");
  const VectorXd sl = bond > 0 ? psi.svals[bond - 1] : VectorXd::Ones(1);
  const VectorXd& sm = psi.svals[bond];
  const VectorXd sr = bond + 2 < L ? psi.svals[bond + 1] : VectorXd::Ones(1);
  const int Dl = static_cast<int>(sl.size());
  const int Dm = static_cast<int>(sm.size());
  const int Dr = static_cast<int>(sr.size());
  MatrixXcd m1(d1 * Dl, Dm), m2(Dm, d2 * Dr);
  for (int s = 0; s < d1; ++s)
    m1.middleRows(s * Dl, Dl) =
        sl.asDiagonal() * psi.gamma[bond][s] * sm.asDiagonal();
  for (int s = 0; s < d2; ++s)
    m2.middleCols(s * Dr, Dr) = psi.gamma[bond + 1][s] * sr.asDiagonal();
  MatrixXcd theta;
  linalg::gemm('N', 'N', m1, m2, theta);
  MatrixXcd phys(d1 * d2, Dl * Dr);
  for (int s1 = 0; s1 < d1; ++s1)
    for (int s2 = 0; s2 < d2; ++s2)
      for (int l = 0; l < Dl; ++l)
        for (int r = 0; r < Dr; ++r)
          phys(s1 * d2 + s2, l * Dr + r) = theta(s1 * Dl + l, s2 * Dr + r);
  return (phys.conjugate().cwiseProduct(op * phys)).sum().real();
}

// Exact <psi|psi> by a full transfer contraction.
inline double norm_sq(const VidalMPS& psi) {
  const int L = psi.size();
  MatrixXcd env = MatrixXcd::Ones(1, 1);
  for (int i = 0; i < L; ++i) {
    MatrixXcd next;
    for (int s = 0; s < psi.dims[i]; ++s) {
      MatrixXcd a = psi.gamma[i][s];
      if (i + 1 < L) a = a * psi.svals[i].asDiagonal();
      const MatrixXcd term = a.adjoint() * env * a;
      if (s == 0)
        next = term;
      else
        next += term;
    }
    env = std::move(next);
  }
  return env(0, 0).real();
}

}  // namespace icmps::mps
