#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "icmps/errors.hpp"
#include "icmps/oracle.hpp"

namespace oracle = icmps::oracle;
namespace chain = icmps::chain;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

namespace {

chain::Coefficients coeffs_of(std::initializer_list<double> omegas,
                              std::initializer_list<double> kappas) {
  chain::Coefficients c;
  c.omegas = Eigen::Map<const VectorXd>(omegas.begin(),
                                        static_cast<Eigen::Index>(omegas.size()));
  c.kappas = Eigen::Map<const VectorXd>(kappas.begin(),
                                        static_cast<Eigen::Index>(kappas.size()));
  return c;
}

}  // namespace

TEST_CASE("dense Hamiltonian is Hermitian and respects the dimension guard") {
  const chain::Coefficients c = coeffs_of({0.3, 0.7}, {0.9, 0.4});
  const MatrixXcd h = oracle::dense_hamiltonian(1.0, c, 4);
  REQUIRE(h.rows() == 32);
  REQUIRE((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);

  chain::Coefficients big;
  big.omegas = VectorXd::Ones(11);
  big.kappas = VectorXd::Ones(11);
  REQUIRE_THROWS_AS(oracle::dense_hamiltonian(1.0, big, 6),
                    icmps::ConfigError);
  REQUIRE_THROWS_AS(oracle::dense_hamiltonian(1.0, c, 0),
                    std::invalid_argument);
}

TEST_CASE("decoupled single mode has the analytic spectrum") {
  const double omega = 0.85, delta = 1.3;
  const chain::Coefficients c = coeffs_of({omega}, {0.0});
  const MatrixXcd h = oracle::dense_hamiltonian(delta, c, 5);
  const icmps::linalg::HermitianEig eig = icmps::linalg::hermitian_eig(h);

  std::vector<double> expect;
  for (int n = 0; n < 5; ++n) {
    expect.push_back(-delta + omega * n);
    expect.push_back(delta + omega * n);
  }
  std::sort(expect.begin(), expect.end());
  for (int i = 0; i < 10; ++i)
    REQUIRE(std::abs(eig.values[i] - expect[static_cast<size_t>(i)]) < 1e-12);
}

TEST_CASE("population starts at one and follows the free-spin law when decoupled") {
  const chain::Coefficients c = coeffs_of({0.6, 1.1}, {0.0, 0.5});
  const double delta = 0.9;
  const MatrixXcd h = oracle::dense_hamiltonian(delta, c, 3);
  const oracle::ExactPropagator p = oracle::make_propagator(h);
  REQUIRE(std::abs(p.population_up(0.0) - 1.0) < 1e-13);
  for (double t : {0.2, 0.9, 2.3}) {
    const double expect = std::cos(delta * t) * std::cos(delta * t);
    REQUIRE(std::abs(p.population_up(t) - expect) < 1e-12);
  }
}

TEST_CASE("ground-state energy agrees with shifted power iteration") {
  const chain::Coefficients c = coeffs_of({0.8, 0.5}, {0.7, 0.3});
  const MatrixXcd h = oracle::dense_hamiltonian(1.0, c, 6);
  const icmps::linalg::HermitianEig eig = icmps::linalg::hermitian_eig(h);

  // Power iteration on s*I - H converges to the lowest eigenvalue of H.
  const double shift = h.cwiseAbs().rowwise().sum().maxCoeff();
  const MatrixXcd m =
      shift * MatrixXcd::Identity(h.rows(), h.cols()) - h;
  VectorXcd v = VectorXcd::Ones(h.rows()).normalized();
  double mu = 0.0;
  for (int it = 0; it < 4000; ++it) {
    v = (m * v).normalized();
    if (it + 1 == 4000) mu = (v.adjoint() * m * v)(0, 0).real();
  }
  REQUIRE(std::abs((shift - mu) - eig.values[0]) < 1e-8);
}

TEST_CASE("exact_populations evaluates the propagator on a grid") {
  const chain::Coefficients c = coeffs_of({0.6}, {0.4});
  const MatrixXcd h = oracle::dense_hamiltonian(1.0, c, 4);
  const std::vector<double> times{0.0, 0.25, 0.5, 0.75};
  const VectorXd pops = oracle::exact_populations(h, times);
  const oracle::ExactPropagator p = oracle::make_propagator(h);
  for (size_t i = 0; i < times.size(); ++i)
    REQUIRE(std::abs(pops[static_cast<Eigen::Index>(i)] -
                     p.population_up(times[i])) < 1e-14);
}

TEST_CASE("RK4 integration cross-checks the eigendecomposition") {
  const chain::Coefficients c = coeffs_of({0.9, 0.4}, {0.8, 0.6});
  const MatrixXcd h = oracle::dense_hamiltonian(1.0, c, 5);
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(0.1 * i);
  const VectorXd exact = oracle::exact_populations(h, times);
  const VectorXd rk4 = oracle::rk4_populations(h, times, 1e-3);
  REQUIRE((exact - rk4).cwiseAbs().maxCoeff() < 1e-8);

  REQUIRE_THROWS_AS(oracle::rk4_populations(h, {0.0, 0.0505}, 0.1),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(oracle::rk4_populations(h, times, 0.0),
                    std::invalid_argument);
}
