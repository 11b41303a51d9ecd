// propagate.hpp — Second-order Trotter propagation of the spin–boson chain in
// three layouts: the static nearest-neighbour chain (C), the static star with
// a travelling spin site (S), and the interaction-picture chain with
// time-dependent localized couplings (IC).
#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "icmps/chain_mapping.hpp"
#include "icmps/errors.hpp"
#include "icmps/gates.hpp"
#include "icmps/mps.hpp"

namespace icmps::prop {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

enum class Scheme { C, S, IC };

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "C") return Scheme::C;
  if (s == "S") return Scheme::S;
  if (s == "IC") return Scheme::IC;
  throw ConfigError("scheme: expected one of C, S, IC, got '" + s + "'");
}

inline std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::C: return "C";
    case Scheme::S: return "S";
    case Scheme::IC: return "IC";
  }
  return "?";
}

struct SpinBosonSystem {
  double delta{1.0};  // H_s = delta * sigma_x, coupling operator sigma_z
};

struct SchemeConfig {
  Scheme scheme{Scheme::IC};
  int local_dim{10};
  double dt{5e-2};
  double t_final{M_PI};
  mps::TruncationOptions trunc{};
  int record_stride{1};
};

struct TrajectoryRecord {
  std::vector<double> times;  // absolute times, uniform spacing
  std::vector<double> population_up;
  std::vector<double> norm_sq;
  std::vector<int> max_bond;
  std::vector<double> discarded_cum;
  std::vector<double> wall_ms;   // wall clock since the previous row
  std::vector<double> svd_ms;    // SVD share of that wall clock
  std::vector<std::vector<int>> bond_profiles;
  std::vector<std::vector<double>> occupations;  // bath sites, array order
};

struct StepAccounting {
  double discarded{0.0};
  double svd_seconds{0.0};

  void absorb(const mps::TruncationReport& r) {
    discarded += r.discarded;
    svd_seconds += r.svd_seconds;
  }
};

namespace detail {

inline MatrixXcd spin_mode_h(const SpinBosonSystem& sys, int d_b, cplx d_coef,
                             double lambda, bool with_spin_term,
                             bool spin_left) {
  const MatrixXcd coupling = d_coef * gates::boson_annihilation(d_b) +
                             std::conj(d_coef) *
                                 gates::boson_annihilation(d_b).adjoint();
  const MatrixXcd id2 = MatrixXcd::Identity(2, 2);
  const MatrixXcd idb = MatrixXcd::Identity(d_b, d_b);
  MatrixXcd h;
  if (spin_left) {
    h = gates::kron(gates::pauli_z(), coupling) +
        lambda * gates::kron(id2, gates::boson_number(d_b));
    if (with_spin_term)
      h += sys.delta * gates::kron(gates::pauli_x(), idb);
  } else {
    h = gates::kron(coupling, gates::pauli_z()) +
        lambda * gates::kron(gates::boson_number(d_b), id2);
    if (with_spin_term)
      h += sys.delta * gates::kron(idb, gates::pauli_x());
  }
  return h;
}

}  // namespace detail

// --- C scheme: static chain, odd/even bond sweeps -------------------------

class ChainStepper {
 public:
  ChainStepper(const SpinBosonSystem& sys, const chain::Coefficients& c,
               int d_b, double dt, mps::TruncationOptions opt)
      : opt_(opt), n_bonds_(static_cast<int>(c.omegas.size())) {
    const int N = n_bonds_ - 1;  // chain has modes 0..N, bonds 0..N
    gates_.resize(n_bonds_);
    for (int b = 0; b < n_bonds_; ++b) {
      const double tau = (b % 2 == 1) ? 0.5 * dt : dt;
      if (b == 0) {
        MatrixXcd h = detail::spin_mode_h(sys, d_b, cplx(c.kappas[0], 0.0),
                                          N == 0 ? c.omegas[0] : 0.0, true,
                                          true);
        gates_[b] = gates::gate_from_hamiltonian(h, 2, d_b, tau);
      } else {
        const double wa = c.omegas[b - 1] * (b - 1 == 0 ? 1.0 : 0.5);
        const double wb = c.omegas[b] * (b == N ? 1.0 : 0.5);
        gates_[b] = gates::hopping_gate(wa, wb, c.kappas[b], d_b, d_b, tau);
      }
    }
  }

  void step(mps::VidalMPS& psi, StepAccounting& acc) const {
    for (int b = 1; b < n_bonds_; b += 2)
      acc.absorb(mps::apply_two_site_gate(psi, b, gates_[b], false, opt_));
    for (int b = 0; b < n_bonds_; b += 2)
      acc.absorb(mps::apply_two_site_gate(psi, b, gates_[b], false, opt_));
    for (int b = 1; b < n_bonds_; b += 2)
      acc.absorb(mps::apply_two_site_gate(psi, b, gates_[b], false, opt_));
  }

 private:
  mps::TruncationOptions opt_;
  int n_bonds_;
  std::vector<mps::TwoSiteGate> gates_;
};

// --- Swap sweep shared by the S and IC schemes -----------------------------
//
// Forward: the spin starts at site 0; each half-gate acts on (spin, mode j)
// and a fused leg exchange carries the spin one site to the right.  The last
// mode gets two half-gates back to back, then the mirrored backward sweep
// returns the spin to site 0.  Backward gates are supplied in (mode, spin)
// orientation, the exchange being folded into the same two-site update.

namespace detail {

inline void swap_sweep(mps::VidalMPS& psi,
                       const std::vector<mps::TwoSiteGate>& fwd,
                       const std::vector<mps::TwoSiteGate>& bwd_last_sl,
                       const std::vector<mps::TwoSiteGate>& bwd_rev,
                       const mps::TruncationOptions& opt,
                       StepAccounting& acc) {
  const int M = static_cast<int>(fwd.size());
  for (int j = 0; j + 1 < M; ++j)
    acc.absorb(mps::apply_two_site_gate(psi, j, fwd[j], true, opt));
  acc.absorb(mps::apply_two_site_gate(psi, M - 1, fwd[M - 1], false, opt));
  acc.absorb(
      mps::apply_two_site_gate(psi, M - 1, bwd_last_sl[M - 1], false, opt));
  for (int j = M - 2; j >= 0; --j)
    acc.absorb(mps::apply_two_site_gate(psi, j, bwd_rev[j], true, opt));
}

}  // namespace detail

// --- S scheme: star modes ordered by |lambda|, static gates ----------------

class StarStepper {
 public:
  StarStepper(const SpinBosonSystem& sys, const chain::StarDecomposition& dec,
              int d_b, double dt, mps::TruncationOptions opt)
      : opt_(opt) {
    const int M = static_cast<int>(dec.lambdas.size());
    order_.resize(M);
    std::iota(order_.begin(), order_.end(), 0);
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const double da = std::abs(dec.lambdas[a]), db = std::abs(dec.lambdas[b]);
      return da != db ? da < db : a < b;
    });
    const VectorXd g = chain::couplings_star(dec);
    fwd_.resize(M);
    rev_.resize(M);
    for (int j = 0; j < M; ++j) {
      const int k = order_[j];
      const MatrixXcd h_sl = detail::spin_mode_h(
          sys, d_b, cplx(g[k], 0.0), dec.lambdas[k], j == 0, true);
      const MatrixXcd h_rev = detail::spin_mode_h(
          sys, d_b, cplx(g[k], 0.0), dec.lambdas[k], j == 0, false);
      fwd_[j] = gates::gate_from_hamiltonian(h_sl, 2, d_b, 0.5 * dt);
      rev_[j] = gates::gate_from_hamiltonian(h_rev, d_b, 2, 0.5 * dt);
    }
  }

  const std::vector<int>& mode_order() const { return order_; }

  void step(mps::VidalMPS& psi, StepAccounting& acc) const {
    detail::swap_sweep(psi, fwd_, fwd_, rev_, opt_, acc);
  }

 private:
  mps::TruncationOptions opt_;
  std::vector<int> order_;  // star mode index at array position j+1
  std::vector<mps::TwoSiteGate> fwd_, rev_;
};

// --- IC scheme: chain order, couplings resampled twice per step ------------

class InteractionStepper {
 public:
  InteractionStepper(const SpinBosonSystem& sys,
                     const chain::StarDecomposition& dec, int d_b, double dt,
                     mps::TruncationOptions opt)
      : sys_(sys), dec_(dec), d_b_(d_b), dt_(dt), opt_(opt) {}

  void step(mps::VidalMPS& psi, double t, StepAccounting& acc) const {
    const int M = static_cast<int>(dec_.lambdas.size());
    const VectorXcd d_fwd = chain::couplings_ic(dec_, t + 0.25 * dt_);
    const VectorXcd d_bwd = chain::couplings_ic(dec_, t + 0.75 * dt_);
    std::vector<mps::TwoSiteGate> fwd(M), bwd_sl(M), bwd_rev(M);
    for (int j = 0; j < M; ++j) {
      const MatrixXcd hf =
          detail::spin_mode_h(sys_, d_b_, d_fwd[j], 0.0, j == 0, true);
      fwd[j] = gates::gate_from_hamiltonian(hf, 2, d_b_, 0.5 * dt_);
      if (j == M - 1) {
        const MatrixXcd hb =
            detail::spin_mode_h(sys_, d_b_, d_bwd[j], 0.0, j == 0, true);
        bwd_sl[j] = gates::gate_from_hamiltonian(hb, 2, d_b_, 0.5 * dt_);
      } else {
        const MatrixXcd hb =
            detail::spin_mode_h(sys_, d_b_, d_bwd[j], 0.0, j == 0, false);
        bwd_rev[j] = gates::gate_from_hamiltonian(hb, d_b_, 2, 0.5 * dt_);
      }
    }
    detail::swap_sweep(psi, fwd, bwd_sl, bwd_rev, opt_, acc);
  }

 private:
  SpinBosonSystem sys_;
  chain::StarDecomposition dec_;
  int d_b_;
  double dt_;
  mps::TruncationOptions opt_;
};

// --- Shared driver ----------------------------------------------------------

// Chain-Hamiltonian energy of the current state (diagnostics; meaningful for
// the C scheme where sites follow chain order).
inline double chain_energy(const mps::VidalMPS& psi,
                           const SpinBosonSystem& sys,
                           const chain::Coefficients& c, int d_b) {
  const int N = static_cast<int>(c.omegas.size()) - 1;
  double e = sys.delta * mps::local_expectation(psi, 0, gates::pauli_x());
  const MatrixXcd x = gates::boson_position(d_b);
  const MatrixXcd b = gates::boson_annihilation(d_b);
  const MatrixXcd id2 = MatrixXcd::Identity(2, 2);
  e += c.kappas[0] *
       mps::two_site_expectation(psi, 0, gates::kron(gates::pauli_z(), x));
  for (int n = 0; n <= N; ++n) {
    e += c.omegas[n] *
         mps::local_expectation(psi, n + 1, gates::boson_number_diag(d_b));
    if (n < N) {
      const MatrixXcd hop =
          gates::kron(b.adjoint(), b) + gates::kron(b, b.adjoint());
      e += c.kappas[n + 1] * mps::two_site_expectation(psi, n + 1, hop);
    }
  }
  return e;
}

inline TrajectoryRecord run(const SpinBosonSystem& sys,
                            const chain::Coefficients& coeffs,
                            const SchemeConfig& cfg) {
  if (!(cfg.dt > 0.0)) throw ConfigError("run: dt must be > 0");
  if (cfg.t_final < 0.0) throw ConfigError("run: t_final must be >= 0");
  if (cfg.local_dim < 2) throw ConfigError("run: local_dim must be >= 2");
  if (cfg.record_stride < 1) throw ConfigError("run: record_stride must be >= 1");
  const int n_modes = static_cast<int>(coeffs.omegas.size());
  const long steps = std::lround(cfg.t_final / cfg.dt);

  std::vector<int> dims(static_cast<size_t>(n_modes) + 1, cfg.local_dim);
  dims[0] = 2;
  mps::VidalMPS psi =
      mps::product_state(dims, std::vector<int>(dims.size(), 0));

  std::unique_ptr<ChainStepper> cs;
  std::unique_ptr<StarStepper> ss;
  std::unique_ptr<InteractionStepper> is;
  switch (cfg.scheme) {
    case Scheme::C:
      cs = std::make_unique<ChainStepper>(sys, coeffs, cfg.local_dim, cfg.dt,
                                          cfg.trunc);
      break;
    case Scheme::S:
      ss = std::make_unique<StarStepper>(
          sys, chain::diagonalize_tridiagonal(coeffs), cfg.local_dim, cfg.dt,
          cfg.trunc);
      break;
    case Scheme::IC:
      is = std::make_unique<InteractionStepper>(
          sys, chain::diagonalize_tridiagonal(coeffs), cfg.local_dim, cfg.dt,
          cfg.trunc);
      break;
  }

  const VectorXd p_up = (VectorXd(2) << 1.0, 0.0).finished();
  const VectorXd n_diag = gates::boson_number_diag(cfg.local_dim);
  TrajectoryRecord rec;
  StepAccounting acc;
  double svd_recorded = 0.0;
  auto last = std::chrono::steady_clock::now();
  auto record = [&](long step) {
    const auto now = std::chrono::steady_clock::now();
    rec.times.push_back(step * cfg.dt);
    rec.population_up.push_back(mps::local_expectation(psi, 0, p_up));
    rec.norm_sq.push_back(mps::norm_sq(psi));
    const std::vector<int> prof = mps::bond_profile(psi);
    rec.max_bond.push_back(
        prof.empty() ? 1 : *std::max_element(prof.begin(), prof.end()));
    rec.discarded_cum.push_back(acc.discarded);
    rec.wall_ms.push_back(
        std::chrono::duration<double, std::milli>(now - last).count());
    rec.svd_ms.push_back((acc.svd_seconds - svd_recorded) * 1e3);
    svd_recorded = acc.svd_seconds;
    rec.bond_profiles.push_back(prof);
    std::vector<double> occ(static_cast<size_t>(n_modes));
    for (int m = 0; m < n_modes; ++m)
      occ[static_cast<size_t>(m)] = mps::local_expectation(psi, m + 1, n_diag);
    rec.occupations.push_back(std::move(occ));
    last = std::chrono::steady_clock::now();
  };

  record(0);
  for (long k = 0; k < steps; ++k) {
    switch (cfg.scheme) {
      case Scheme::C: cs->step(psi, acc); break;
      case Scheme::S: ss->step(psi, acc); break;
      case Scheme::IC: is->step(psi, k * cfg.dt, acc); break;
    }
    if ((k + 1) % cfg.record_stride == 0) record(k + 1);
  }
  return rec;
}

}  // namespace icmps::prop
