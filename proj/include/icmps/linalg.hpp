// linalg.hpp — Thin LAPACK/BLAS wrappers: Hermitian eigensolves, economy and
// truncated SVDs.  The truncated SVD switches to a certified randomized
// subspace iteration for large blocks; the certificate bounds the weight the
// sketch can miss, so the reported discarded weight stays honest.
#pragma once

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <cblas.h>
#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <stdexcept>

#include "icmps/errors.hpp"

namespace icmps::linalg {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

inline lapack_complex_double* lp(cplx* p) { return p; }
inline const lapack_complex_double* lp(const cplx* p) { return p; }

// C = op(A) * op(B), ops in {'N','C'}.
inline void gemm(char opA, char opB, const MatrixXcd& A, const MatrixXcd& B,
                 MatrixXcd& C) {
  const auto ta = opA == 'N' ? CblasNoTrans : CblasConjTrans;
  const auto tb = opB == 'N' ? CblasNoTrans : CblasConjTrans;
  const int m = static_cast<int>(opA == 'N' ? A.rows() : A.cols());
  const int k = static_cast<int>(opA == 'N' ? A.cols() : A.rows());
  const int n = static_cast<int>(opB == 'N' ? B.cols() : B.rows());
  if (k != (opB == 'N' ? B.rows() : B.cols()))
    throw std::invalid_argument("gemm: inner dimensions do not match");
  C.resize(m, n);
  const cplx one(1.0, 0.0), zero(0.0, 0.0);
  cblas_zgemm(CblasColMajor, ta, tb, m, n, k, &one, A.data(),
              static_cast<int>(A.rows()), B.data(), static_cast<int>(B.rows()),
              &zero, C.data(), m);
}

// Replaces A (m x k, m >= k) by an orthonormal basis of its column space.
inline void orthonormalize_columns(MatrixXcd& A) {
  const int m = static_cast<int>(A.rows());
  const int k = static_cast<int>(A.cols());
  if (m < k) throw std::invalid_argument("orthonormalize_columns: m < k");
  std::vector<cplx> tau(static_cast<size_t>(std::max(1, k)));
  int info = LAPACKE_zgeqrf(LAPACK_COL_MAJOR, m, k, lp(A.data()), m,
                            lp(tau.data()));
  if (info != 0) throw AccuracyError("zgeqrf failed");
  info = LAPACKE_zungqr(LAPACK_COL_MAJOR, m, k, k, lp(A.data()), m,
                        lp(tau.data()));
  if (info != 0) throw AccuracyError("zungqr failed");
}

struct SvdEcon {
  MatrixXcd U;   // m x r orthonormal columns
  VectorXd s;    // r descending, non-negative
  MatrixXcd Vt;  // r x n orthonormal rows
};

// Economy SVD via divide-and-conquer, QR-based fallback if it stalls.
inline SvdEcon svd_econ(MatrixXcd A) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  const int r = std::min(m, n);
  SvdEcon out;
  out.U.resize(m, r);
  out.s.resize(r);
  out.Vt.resize(r, n);
  if (r == 0) return out;
  MatrixXcd work = A;
  int info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'S', m, n, lp(work.data()), m,
                            out.s.data(), lp(out.U.data()), m,
                            lp(out.Vt.data()), r);
  if (info != 0) {
    work = A;
    std::vector<double> superb(static_cast<size_t>(std::max(1, r - 1)));
    info = LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'S', 'S', m, n, lp(work.data()), m,
                          out.s.data(), lp(out.U.data()), m,
                          lp(out.Vt.data()), r, superb.data());
    if (info != 0) throw AccuracyError("SVD did not converge");
  }
  return out;
}

namespace detail {

// Rank-k sketch A ~ U s Vt via subspace iteration.  Deterministic: the test
// matrix is drawn from a generator seeded by the problem shape.
inline SvdEcon randomized_svd(const MatrixXcd& A, int k, int power_iters) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull ^
                      (static_cast<uint64_t>(m) * 1000003ull +
                       static_cast<uint64_t>(n) * 4099ull +
                       static_cast<uint64_t>(k)));
  std::normal_distribution<double> gauss(0.0, 1.0);
  const bool wide = m <= n;  // sketch the shorter side
  const int sm = wide ? m : n;
  MatrixXcd omega(wide ? n : m, k);
  for (Eigen::Index j = 0; j < omega.cols(); ++j)
    for (Eigen::Index i = 0; i < omega.rows(); ++i)
      omega(i, j) = cplx(gauss(rng), gauss(rng));

  MatrixXcd Q, Z;
  gemm(wide ? 'N' : 'C', 'N', A, omega, Q);  // sm x k
  orthonormalize_columns(Q);
  for (int it = 0; it < power_iters; ++it) {
    gemm(wide ? 'C' : 'N', 'N', A, Q, Z);
    orthonormalize_columns(Z);
    gemm(wide ? 'N' : 'C', 'N', A, Z, Q);
    orthonormalize_columns(Q);
  }

  MatrixXcd B;
  SvdEcon out;
  if (wide) {
    gemm('C', 'N', Q, A, B);  // k x n
    SvdEcon small = svd_econ(std::move(B));
    gemm('N', 'N', Q, small.U, out.U);
    out.s = std::move(small.s);
    out.Vt = std::move(small.Vt);
  } else {
    gemm('N', 'N', A, Q, B);  // m x k
    SvdEcon small = svd_econ(std::move(B));
    out.U = std::move(small.U);
    out.s = std::move(small.s);
    gemm('N', 'C', small.Vt, Q, out.Vt);
  }
  return out;
}

}  // namespace detail

struct TruncatedSvd {
  MatrixXcd U;
  VectorXd s;  // retained values, descending, not renormalized
  MatrixXcd Vt;
  double discarded = 0.0;  // ||A||_F^2 minus retained weight
  bool randomized = false;
  double seconds = 0.0;
};

// Singular values below max(threshold, 1e-14) are discarded, then the rank is
// capped at max_rank; at least one value is always retained.  rank_hint (a
// guess at the retained rank, e.g. the previous bond dimension) sizes the
// randomized sketch; pass 0 to let the routine decide.
inline TruncatedSvd truncated_svd(const MatrixXcd& A, double threshold,
                                  int max_rank, int rank_hint = 0,
                                  bool allow_randomized = true) {
  const auto t0 = std::chrono::steady_clock::now();
  if (max_rank < 1) throw std::invalid_argument("truncated_svd: max_rank < 1");
  const int minmn = static_cast<int>(std::min(A.rows(), A.cols()));
  const double fro2 = A.squaredNorm();
  constexpr double kFloor = 1e-14;
  const double cut = std::max(threshold, kFloor);

  SvdEcon dec;
  bool randomized = false;
  int k = std::min(minmn, std::max(rank_hint, 8) + 24);
  const bool try_sketch =
      allow_randomized && threshold > 0.0 && minmn >= 512 && 3 * k <= minmn;
  if (try_sketch) {
    while (true) {
      dec = detail::randomized_svd(A, k, 2);
      const double captured = dec.s.squaredNorm();
      const double miss = std::max(0.0, fro2 - captured);
      if (std::sqrt(miss) <= 0.25 * threshold) {
        randomized = true;
        break;
      }
      k *= 2;
      if (3 * k > minmn) break;  // sketch no longer pays off
    }
  }
  if (!randomized) dec = svd_econ(A);

  int kept = 0;
  while (kept < dec.s.size() && kept < max_rank && dec.s[kept] >= cut) ++kept;
  kept = std::max(kept, 1);

  TruncatedSvd out;
  out.U = dec.U.leftCols(kept);
  out.s = dec.s.head(kept);
  out.Vt = dec.Vt.topRows(kept);
  out.discarded = std::max(0.0, fro2 - out.s.squaredNorm());
  out.randomized = randomized;
  out.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return out;
}

struct HermitianEig {
  VectorXd values;   // ascending
  MatrixXcd vectors;  // column k pairs with values[k]
};

inline HermitianEig hermitian_eig(MatrixXcd A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw std::invalid_argument("hermitian_eig: not square");
  HermitianEig out;
  out.values.resize(n);
  if (n == 0) {
    out.vectors.resize(0, 0);
    return out;
  }
  int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', n, lp(A.data()), n,
                            out.values.data());
  if (info != 0) throw AccuracyError("zheevd failed");
  out.vectors = std::move(A);
  return out;
}

// Symmetric tridiagonal eigensolve; returns ascending values and orthonormal
// eigenvector columns.
inline std::pair<VectorXd, MatrixXd> tridiagonal_eig(VectorXd diag,
                                                     VectorXd sub) {
  const int n = static_cast<int>(diag.size());
  if (sub.size() != std::max(0, n - 1))
    throw std::invalid_argument("tridiagonal_eig: bad subdiagonal length");
  MatrixXd z = MatrixXd::Identity(n, n);
  if (n > 0) {
    int info = LAPACKE_dsteqr(LAPACK_COL_MAJOR, 'I', n, diag.data(),
                              sub.data(), z.data(), n);
    if (info != 0) throw AccuracyError("dsteqr failed");
  }
  return {std::move(diag), std::move(z)};
}

}  // namespace icmps::linalg
