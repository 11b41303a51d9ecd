#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "icmps/gates.hpp"
#include "support/test_rand.hpp"

namespace gates = icmps::gates;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using cplx = std::complex<double>;

TEST_CASE("boson operators have the textbook matrix elements") {
  const MatrixXcd b = gates::boson_annihilation(4);
  REQUIRE(std::abs(b(0, 1) - 1.0) < 1e-15);
  REQUIRE(std::abs(b(1, 2) - std::sqrt(2.0)) < 1e-15);
  REQUIRE(std::abs(b(2, 3) - std::sqrt(3.0)) < 1e-15);
  REQUIRE(b.cwiseAbs().sum() == Catch::Approx(1.0 + std::sqrt(2.0) + std::sqrt(3.0)));

  const MatrixXcd x = gates::boson_position(4);
  REQUIRE((x - x.adjoint()).cwiseAbs().maxCoeff() < 1e-15);

  const MatrixXcd n = gates::boson_number(4);
  const MatrixXcd comm = b * b.adjoint() - b.adjoint() * b;
  // [b, b^dagger] = 1 except in the last truncated row.
  for (int i = 0; i + 1 < 4; ++i) REQUIRE(std::abs(comm(i, i) - 1.0) < 1e-14);
  REQUIRE(std::abs(n(2, 2) - 2.0) < 1e-15);
}

TEST_CASE("kron follows the row-major composite ordering") {
  MatrixXcd a(2, 2), b(2, 2);
  a << 1, 2, 3, 4;
  b << 0, 5, 6, 7;
  const MatrixXcd k = gates::kron(a, b);
  REQUIRE(k.rows() == 4);
  REQUIRE(std::abs(k(0, 1) - 5.0) < 1e-15);   // a(0,0) * b(0,1)
  REQUIRE(std::abs(k(0, 3) - 10.0) < 1e-15);  // a(0,1) * b(0,1)
  REQUIRE(std::abs(k(3, 2) - 24.0) < 1e-15);  // a(1,1) * b(1,0)
}

TEST_CASE("gate_from_hamiltonian exponentiates correctly") {
  SECTION("zero Hamiltonian gives the identity") {
    const icmps::mps::TwoSiteGate g =
        gates::gate_from_hamiltonian(MatrixXcd::Zero(6, 6), 2, 3, 0.7);
    REQUIRE((g.dense - MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff() <
            1e-14);
  }

  SECTION("sigma_x for a full period gives minus the identity") {
    const MatrixXcd h =
        gates::kron(gates::pauli_x(), MatrixXcd::Identity(2, 2));
    const icmps::mps::TwoSiteGate g = gates::gate_from_hamiltonian(h, 2, 2, M_PI);
    REQUIRE((g.dense + MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() <
            1e-13);
  }

  SECTION("random Hermitian generator: unitary, invertible, matches Eigen") {
    std::mt19937 rng(51);
    const MatrixXcd h = testrand::hermitian(12, rng);
    const double tau = 0.37;
    const icmps::mps::TwoSiteGate g = gates::gate_from_hamiltonian(h, 3, 4, tau);
    REQUIRE((g.dense * g.dense.adjoint() - MatrixXcd::Identity(12, 12))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    const icmps::mps::TwoSiteGate ginv =
        gates::gate_from_hamiltonian(h, 3, 4, -tau);
    REQUIRE((g.dense * ginv.dense - MatrixXcd::Identity(12, 12))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    REQUIRE((g.dense - testrand::exp_minus_i(h, tau)).cwiseAbs().maxCoeff() <
            1e-12);
  }

  SECTION("rejects bad input") {
    REQUIRE_THROWS_AS(
        gates::gate_from_hamiltonian(MatrixXcd::Zero(5, 5), 2, 3, 0.1),
        std::invalid_argument);
    MatrixXcd h = MatrixXcd::Zero(4, 4);
    h(0, 1) = 1.0;  // not Hermitian
    REQUIRE_THROWS_AS(gates::gate_from_hamiltonian(h, 2, 2, 0.1),
                      std::domain_error);
  }
}

TEST_CASE("hopping_gate equals the dense exponential of the hopping bond") {
  const double wa = 0.45, wb = 1.2, kappa = 0.8, tau = 0.23;
  const int d1 = 4, d2 = 3;
  const MatrixXcd b1 = gates::boson_annihilation(d1);
  const MatrixXcd b2 = gates::boson_annihilation(d2);
  const MatrixXcd id1 = MatrixXcd::Identity(d1, d1);
  const MatrixXcd id2 = MatrixXcd::Identity(d2, d2);
  const MatrixXcd h = wa * gates::kron(gates::boson_number(d1), id2) +
                      wb * gates::kron(id1, gates::boson_number(d2)) +
                      kappa * (gates::kron(b1.adjoint(), b2) +
                               gates::kron(b1, b2.adjoint()));

  const icmps::mps::TwoSiteGate fast =
      gates::hopping_gate(wa, wb, kappa, d1, d2, tau);
  const icmps::mps::TwoSiteGate dense =
      gates::gate_from_hamiltonian(h, d1, d2, tau);
  REQUIRE(fast.blocked());
  REQUIRE((fast.matrix() - dense.dense).cwiseAbs().maxCoeff() < 1e-12);

  // The blocked apply path agrees with plain matrix multiplication.
  std::mt19937 rng(52);
  MatrixXcd theta = testrand::complex_gaussian(d1 * d2, 5, rng);
  MatrixXcd by_blocks = theta;
  fast.apply(by_blocks);
  const MatrixXcd by_dense = dense.dense * theta;
  REQUIRE((by_blocks - by_dense).cwiseAbs().maxCoeff() < 1e-12);

  REQUIRE_THROWS_AS(gates::hopping_gate(0.0, 0.0, 1.0, 0, 3, 0.1),
                    std::invalid_argument);
}
