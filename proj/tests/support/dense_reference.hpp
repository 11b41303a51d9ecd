// Dense state-vector simulator used as an independent cross-check for the
// MPS machinery.  Deliberately avoids every icmps header: gates arrive as
// plain Eigen matrices and all contractions are explicit loops.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace refsim {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

class DenseState {
 public:
  DenseState(std::vector<int> dims, const std::vector<int>& occupation)
      : dims_(std::move(dims)) {
    if (dims_.empty() || occupation.size() != dims_.size())
      throw std::invalid_argument("DenseState: bad dimensions");
    long total = 1;
    for (int d : dims_) total *= d;
    vec_ = VectorXcd::Zero(total);
    long idx = 0;
    for (size_t i = 0; i < dims_.size(); ++i) idx = idx * dims_[i] + occupation[i];
    vec_[idx] = 1.0;
  }

  const std::vector<int>& dims() const { return dims_; }
  const VectorXcd& vec() const { return vec_; }

  // Gate over sigma1*d2 + sigma2 at (site, site+1); with swap the two
  // physical legs trade places afterwards, exactly like the MPS update.
  void apply_two_site(int site, const MatrixXcd& gate, bool swap) {
    const int d1 = dims_.at(site), d2 = dims_.at(site + 1);
    if (gate.rows() != d1 * d2 || gate.cols() != d1 * d2)
      throw std::invalid_argument("DenseState: gate size mismatch");
    long left = 1, right = 1;
    for (int i = 0; i < site; ++i) left *= dims_[i];
    for (size_t i = site + 2; i < dims_.size(); ++i) right *= dims_[i];
    const int e1 = swap ? d2 : d1, e2 = swap ? d1 : d2;
    VectorXcd out = VectorXcd::Zero(vec_.size());
    VectorXcd block(d1 * d2);
    for (long l = 0; l < left; ++l)
      for (long r = 0; r < right; ++r) {
        for (int s1 = 0; s1 < d1; ++s1)
          for (int s2 = 0; s2 < d2; ++s2)
            block[s1 * d2 + s2] = vec_[((l * d1 + s1) * d2 + s2) * right + r];
        block = (gate * block).eval();
        for (int s1 = 0; s1 < d1; ++s1)
          for (int s2 = 0; s2 < d2; ++s2) {
            const int a = swap ? s2 : s1, b = swap ? s1 : s2;
            out[((l * e1 + a) * e2 + b) * right + r] = block[s1 * d2 + s2];
          }
      }
    vec_ = std::move(out);
    if (swap) std::swap(dims_[site], dims_[site + 1]);
  }

  double norm_sq() const { return vec_.squaredNorm(); }

  double local_expectation(int site, const MatrixXcd& op) const {
    const int d = dims_.at(site);
    if (op.rows() != d || op.cols() != d)
      throw std::invalid_argument("DenseState: operator size mismatch");
    long left = 1, right = 1;
    for (int i = 0; i < site; ++i) left *= dims_[i];
    for (size_t i = site + 1; i < dims_.size(); ++i) right *= dims_[i];
    std::complex<double> val(0.0, 0.0);
    VectorXcd block(d);
    for (long l = 0; l < left; ++l)
      for (long r = 0; r < right; ++r) {
        for (int s = 0; s < d; ++s) block[s] = vec_[(l * d + s) * right + r];
        val += block.dot(op * block);  // Eigen dot conjugates the left side
      }
    return val.real();
  }

 private:
  std::vector<int> dims_;
  VectorXcd vec_;
};

}  // namespace refsim
