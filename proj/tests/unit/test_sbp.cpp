#include <cmath>

#include "doctest.h"
#include "gravdg/errors.hpp"
#include "gravdg/sbp.hpp"

using namespace gravdg;

TEST_CASE("summation-by-parts algebra holds for every supported degree") {
  for (int k = 1; k <= kMaxDegree; ++k) {
    CAPTURE(k);
    const LobattoOperators ops = build_operators(k);
    const int n = ops.size();
    REQUIRE(static_cast<int>(ops.nodes.size()) == n);
    CHECK(ops.nodes.front() == -1.0);
    CHECK(ops.nodes.back() == 1.0);

    double wsum = 0.0;
    for (double w : ops.weights) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-14);

    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(ops.nodes[i] + ops.nodes[n - 1 - i]) < 1e-14);
      CHECK(std::abs(ops.weights[i] - ops.weights[n - 1 - i]) < 1e-14);
      CHECK(ops.weights[i] > 0.0);
    }

    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double b = (i == j) ? ops.boundary[i] : 0.0;
        CHECK(std::abs(ops.stiffness(i, j) + ops.stiffness(j, i) - b) < 1e-14);
        CHECK(std::abs(ops.stiffness(i, j) - ops.weights[i] * ops.diff(i, j)) < 1e-14);
      }

    // D differentiates polynomials up to degree k exactly.
    for (int p = 0; p <= k; ++p)
      for (int i = 0; i < n; ++i) {
        double d = 0.0;
        for (int j = 0; j < n; ++j) d += ops.diff(i, j) * std::pow(ops.nodes[j], p);
        const double exact = p == 0 ? 0.0 : p * std::pow(ops.nodes[i], p - 1);
        CHECK(std::abs(d - exact) < 1e-12 * std::max(1.0, static_cast<double>(p * k)));
      }

    // Quadrature exact to degree 2k - 1.
    for (int p = 0; p <= 2 * k - 1; ++p) {
      double q = 0.0;
      for (int i = 0; i < n; ++i) q += ops.weights[i] * std::pow(ops.nodes[i], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1);
      CHECK(std::abs(q - exact) < 1e-14);
    }
  }
}

TEST_CASE("degree-2 operators match the closed form") {
  const LobattoOperators ops = build_operators(2);
  CHECK(ops.nodes[1] == 0.0);
  CHECK(ops.weights[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(ops.weights[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(ops.diff(0, 0) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(ops.diff(0, 1) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ops.diff(0, 2) == doctest::Approx(-0.5).epsilon(1e-15));
}

TEST_CASE("lagrange basis interpolates nodal data") {
  const LobattoOperators ops = build_operators(4);
  const auto at_node = lagrange_basis(ops, ops.nodes[2]);
  for (int j = 0; j < ops.size(); ++j) CHECK(std::abs(at_node[j] - (j == 2 ? 1.0 : 0.0)) < 1e-14);
  const double X = 0.3;
  const auto l = lagrange_basis(ops, X);
  double v = 0.0;
  for (int j = 0; j < ops.size(); ++j) v += l[j] * std::pow(ops.nodes[j], 3);
  CHECK(std::abs(v - X * X * X) < 1e-14);
}

TEST_CASE("unsupported degrees are configuration errors") {
  CHECK_THROWS_AS(build_operators(0), ConfigError);
  CHECK_THROWS_AS(build_operators(kMaxDegree + 1), ConfigError);
}
