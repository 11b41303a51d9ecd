#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "icmps/errors.hpp"
#include "icmps/quadrature.hpp"

namespace quad = icmps::quad;

namespace {

double monomial_integral(int k) {  // over [-1, 1]
  return k % 2 == 1 ? 0.0 : 2.0 / (k + 1);
}

}  // namespace

TEST_CASE("gauss_legendre is exact for polynomials of degree 2n-1") {
  for (int n = 1; n <= 8; ++n) {
    const quad::Rule r = quad::gauss_legendre(n);
    REQUIRE(r.nodes.size() == n);
    REQUIRE(std::abs(r.weights.sum() - 2.0) < 1e-14);
    for (int i = 0; i + 1 < n; ++i) REQUIRE(r.nodes[i] < r.nodes[i + 1]);
    for (int i = 0; i < n; ++i)
      REQUIRE(std::abs(r.nodes[i] + r.nodes[n - 1 - i]) < 1e-14);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i)
        acc += r.weights[i] * std::pow(r.nodes[i], k);
      REQUIRE(std::abs(acc - monomial_integral(k)) < 1e-13);
    }
  }
  REQUIRE_THROWS_AS(quad::gauss_legendre(0), std::invalid_argument);
}

TEST_CASE("scaled rule integrates over a shifted interval") {
  const quad::Rule r = quad::scaled(quad::gauss_legendre(4), 1.0, 3.0);
  double acc = 0.0;
  for (int i = 0; i < r.nodes.size(); ++i)
    acc += r.weights[i] * r.nodes[i] * r.nodes[i];
  REQUIRE(std::abs(acc - 26.0 / 3.0) < 1e-13);
  REQUIRE(std::abs(r.weights.sum() - 2.0) < 1e-14);
}

TEST_CASE("composite rule stitches panels") {
  const quad::Rule r = quad::composite(0.0, 10.0, 5, 16);
  REQUIRE(r.nodes.size() == 80);
  double acc = 0.0;
  for (int i = 0; i < r.nodes.size(); ++i)
    acc += r.weights[i] * std::cos(r.nodes[i]);
  REQUIRE(std::abs(acc - std::sin(10.0)) < 1e-12);
  for (int i = 0; i + 1 < r.nodes.size(); ++i)
    REQUIRE(r.nodes[i] < r.nodes[i + 1]);

  REQUIRE_THROWS_AS(quad::composite(0.0, 1.0, 0, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(quad::composite(1.0, 0.0, 1, 16), std::invalid_argument);
}

TEST_CASE("adaptive integrate hits smooth targets and reports failure") {
  const double val = quad::integrate([](double x) { return std::exp(-x); },
                                     0.0, 5.0, 1e-12);
  REQUIRE(std::abs(val - (1.0 - std::exp(-5.0))) < 1e-10);

  // A jump at an irrational point never reaches a 1e-15 relative tolerance.
  REQUIRE_THROWS_AS(
      quad::integrate([](double x) { return x > 0.70710678118 ? 1.0 : 0.0; },
                      0.0, 1.0, 1e-15),
      icmps::AccuracyError);
}
