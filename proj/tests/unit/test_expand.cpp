#include <doctest.h>

#include <cmath>

#include "oracles/bridge.hpp"
#include "sigmak/errors.hpp"
#include "sigmak/expand.hpp"
#include "sigmak/symkit.hpp"

using namespace sigmak;

namespace {

std::vector<double> ball_plain(int count, double R) {
  std::vector<double> c;
  for (int j = 1; j <= count; ++j) c.push_back(oracle::ball_coefficient(j, R));
  return c;
}

}  // namespace

TEST_SUITE("expand") {

TEST_CASE("formal_solution layout") {
  const std::vector<double> c{0.5, 0.125};
  const PHSeries v = formal_solution(3, 4, c, 0.25);
  CHECK(v.leading_log() == 1);
  CHECK(v.coeff(0, 0) == 0.0);
  CHECK(v.coeff(1, 0) == 0.5);
  CHECK(v.coeff(2, 0) == 0.125);
  CHECK(v.coeff(3, 1) == 0.25);
  CHECK_THROWS_AS(formal_solution(3, 1, c), DomainError);
}

TEST_CASE("assemble_atilde leading terms") {
  for (int n = 3; n <= 7; ++n) {
    const auto eig = assemble_atilde(PHSeries::minus_log(n + 1), ball_geometry(n, 1.0));
    CHECK(eig.normal.coeff(0, 0) == doctest::Approx(n - 1.0));
    CHECK(eig.tangential.coeff(0, 0) == doctest::Approx(n - 1.0));
    CHECK(eig.tangential_multiplicity == n - 1);
  }
  // Tangential linear coefficient (n-2) kappa + H - 2 (n-2) c1 on the unit ball, n = 3.
  const std::vector<double> c1{0.5};
  const auto eig = assemble_atilde(formal_solution(3, 4, c1), ball_geometry(3, 1.0));
  CHECK(eig.tangential.coeff(1, 0) == doctest::Approx(2.0).epsilon(1e-14));
  // Half-space: both eigenvalue series are exactly n - 1.
  const auto flat = assemble_atilde(PHSeries::minus_log(5), BoundaryGeometry(4, {0, 0, 0}));
  for (int j = 0; j <= 5; ++j) {
    CHECK(flat.normal.coeff(j, 0) == (j == 0 ? 3.0 : 0.0));
    CHECK(flat.tangential.coeff(j, 0) == (j == 0 ? 3.0 : 0.0));
    CHECK(flat.normal.coeff(j, 1) == 0.0);
  }
  CHECK_THROWS_AS(assemble_atilde(PHSeries::minus_log(4), BoundaryGeometry(3, {0, 1})), UnsupportedGeometry);
  CHECK_THROWS_AS(assemble_atilde(PHSeries(4), ball_geometry(3, 1.0)), DomainError);
}

TEST_CASE("ftilde examples") {
  for (int n = 3; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      const PHSeries f = ftilde(PHSeries::minus_log(n + 1), BoundaryGeometry(n, std::vector<double>(n - 1, 0.0)), k);
      for (int j = 0; j <= n + 1; ++j) {
        CHECK(f.coeff(j, 0) == 0.0);
        CHECK(f.coeff(j, 1) == 0.0);
      }
      const PHSeries g = ftilde(PHSeries::minus_log(n + 1), ball_geometry(n, 1.0), k);
      CHECK(std::abs(g.coeff(0, 0)) < 1e-12 * std::pow(n, 2 * k));
      CHECK(std::abs(g.coeff(1, 0)) > 1e-3);
    }
  }
  CHECK_THROWS_AS(ftilde(PHSeries::minus_log(4), ball_geometry(3, 1.0), 4), DomainError);
}

TEST_CASE("ftilde of the exact ball expansion vanishes through order n") {
  for (int n = 3; n <= 8; ++n) {
    for (double R : {0.5, 1.0, 2.0}) {
      for (int k = 1; k <= n; ++k) {
        const int N = n + 1;
        const PHSeries f = ftilde(formal_solution(n, N, ball_plain(N, R)), ball_geometry(n, R), k);
        const double scale = std::pow(n - 1.0, k) * binomial(n, k) * std::pow(2.0 * k / R, n);
        for (int j = 0; j <= N; ++j) {
          CHECK(std::abs(f.coeff(j, 0)) <= 1e-12 * scale);
          CHECK(f.coeff(j, 1) == 0.0);
        }
      }
    }
  }
}

TEST_CASE("solve_coefficients on the unit ball, n = 3") {
  for (int k = 1; k <= 3; ++k) {
    const auto c = solve_coefficients(ball_geometry(3, 1.0), k);
    REQUIRE(c.c.size() == 2);
    CHECK(c.coefficient(1) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(c.coefficient(2) == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(std::abs(c.c_log) < 1e-12);
  }
}

TEST_CASE("solve_coefficients reproduces the closed forms and the exact ball") {
  for (int n = 3; n <= 8; ++n) {
    for (double kappa : {0.5, 1.0, 2.0}) {
      const BoundaryGeometry g(n, std::vector<double>(static_cast<std::size_t>(n - 1), kappa));
      for (int k = 1; k <= n; ++k) {
        const auto sol = solve_coefficients_detailed(g, k);
        CHECK(std::abs(sol.coeffs.coefficient(1) - c1_closed_form(g)) < 1e-8);
        CHECK(std::abs(sol.coeffs.coefficient(2) - c2_closed_form(g, k)) < 1e-8);
        for (int j = 1; j < n; ++j) {
          CHECK(sol.coeffs.coefficient(j) == doctest::Approx(oracle::ball_coefficient(j, 1.0 / kappa)).epsilon(1e-10));
        }
        CHECK(std::abs(sol.coeffs.c_log) < 1e-9);
        CHECK(sol.diagnostics.log_slot_vanishes);
        CHECK(sol.diagnostics.truncation == n + 1);
        // First nonzero slot is at order n + 1.
        const PHSeries& r = sol.diagnostics.residual;
        double top = 1.0;
        for (int j = 0; j <= n + 1; ++j) top = std::max(top, std::abs(r.coeff(j, 0)));
        for (int j = 0; j <= n; ++j) {
          CHECK(std::abs(r.coeff(j, 0)) <= 1e-9 * top);
          CHECK(std::abs(r.coeff(j, 1)) <= 1e-9 * top);
        }
      }
    }
  }
}

TEST_CASE("order coefficient is affine in the unknown") {
  for (int n = 3; n <= 6; ++n) {
    const auto g = ball_geometry(n, 1.0);
    for (int k = 1; k <= n; ++k) {
      std::vector<double> lower;
      for (int i = 1; i <= n; ++i) {
        const double f0 = ftilde_order_coefficient(g, k, lower, i, 0.0);
        const double f1 = ftilde_order_coefficient(g, k, lower, i, 1.0);
        const double f3 = ftilde_order_coefficient(g, k, lower, i, 3.7);
        const double predicted = f0 + 3.7 * (f1 - f0);
        CHECK(std::abs(f3 - predicted) <= 1e-9 * std::max({1.0, std::abs(f0), std::abs(f3)}));
        CHECK(std::abs(f1 - f0) > 1e-6);
        if (i < n) lower.push_back(oracle::ball_coefficient(i, 1.0));
      }
    }
  }
}

TEST_CASE("solve_coefficients errors") {
  CHECK_THROWS_AS(solve_coefficients(BoundaryGeometry(3, {0, 1}), 1), UnsupportedGeometry);
  CHECK_THROWS_AS(solve_coefficients(ball_geometry(3, 1.0), 0), DomainError);
  CHECK_THROWS_AS(solve_coefficients(ball_geometry(3, 1.0), 1, 2), DomainError);
  CHECK_THROWS_AS(solve_coefficients(ball_geometry(4, 1.0), 1, 7), DomainError);
  // A longer truncation does not change the answer.
  const auto a = solve_coefficients(ball_geometry(4, 1.0), 2);
  const auto b = solve_coefficients(ball_geometry(4, 1.0), 2, 6);
  for (int j = 1; j < 4; ++j) CHECK(a.coefficient(j) == doctest::Approx(b.coefficient(j)).epsilon(1e-12));
}

}  // TEST_SUITE
