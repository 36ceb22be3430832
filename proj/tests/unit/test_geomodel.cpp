#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/bridge.hpp"
#include "sigmak/errors.hpp"
#include "sigmak/geomodel.hpp"

using namespace sigmak;

TEST_SUITE("geomodel") {

TEST_CASE("BoundaryGeometry validation") {
  CHECK_THROWS_AS(BoundaryGeometry(2, {1.0}), DomainError);
  CHECK_THROWS_AS(BoundaryGeometry(3, {1.0}), DomainError);
  CHECK_THROWS_AS(BoundaryGeometry(3, {1.0, INFINITY}), DomainError);
  CHECK(BoundaryGeometry(3, {0.0, 0.0}).is_umbilic());
  CHECK_FALSE(BoundaryGeometry(3, {0.0, 1.0}).is_umbilic());
  CHECK_THROWS_AS((void)BoundaryGeometry(3, {0.0, 1.0}).umbilic_curvature(), UnsupportedGeometry);
  CHECK(BoundaryGeometry(4, {2.0, 2.0, 2.0}).umbilic_curvature() == 2.0);
}

TEST_CASE("derived_invariants") {
  const auto ball = derived_invariants(BoundaryGeometry(3, {1, 1}));
  CHECK(ball.mean_curvature == 2.0);
  CHECK(ball.pi_sq == 2.0);
  CHECK(ball.pi0_sq == 0.0);
  const auto mixed = derived_invariants(BoundaryGeometry(3, {0, 1}));
  CHECK(mixed.mean_curvature == 1.0);
  CHECK(mixed.pi_sq == 1.0);
  CHECK(mixed.pi0_sq == doctest::Approx(0.5).epsilon(1e-15));
  const auto flat = derived_invariants(BoundaryGeometry(5, {0, 0, 0, 0}));
  CHECK(flat.mean_curvature == 0.0);
  CHECK(flat.pi_sq == 0.0);
  CHECK(flat.pi0_sq == 0.0);

  std::mt19937_64 rng(oracle::kSeed + 20);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> k(static_cast<std::size_t>(n - 1));
    for (auto& x : k) x = u(rng);
    const auto inv = derived_invariants(BoundaryGeometry(n, k));
    CHECK(inv.pi0_sq >= 0.0);
    CHECK(inv.pi0_sq ==
          doctest::Approx(inv.pi_sq - inv.mean_curvature * inv.mean_curvature / (n - 1)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("c1_closed_form") {
  CHECK(c1_closed_form(BoundaryGeometry(3, {1, 1})) == 0.5);
  CHECK(c1_closed_form(BoundaryGeometry(6, {0, 0, 0, 0, 0})) == 0.0);
  for (int n = 3; n <= 8; ++n) {
    for (double R : {0.5, 1.0, 3.0}) CHECK(c1_closed_form(ball_geometry(n, R)) == doctest::Approx(0.5 / R));
  }
}

TEST_CASE("c2_closed_form") {
  for (int k = 1; k <= 3; ++k) CHECK(c2_closed_form(BoundaryGeometry(3, {1, 1}), k) == doctest::Approx(0.125).epsilon(1e-14));
  // Ball of radius R: the exact solution gives 1/(8 R^2) in every dimension.
  for (int n = 3; n <= 8; ++n) {
    for (double R : {0.5, 1.0, 2.0}) {
      for (int k = 1; k < n; ++k) {
        const auto g = ball_geometry(n, R);
        CHECK(c2_closed_form(g, k) == doctest::Approx(oracle::ball_coefficient(2, R)).epsilon(1e-13));
        CHECK(c2_closed_form(g, k) == c2_closed_form(g, k + 1));
      }
    }
  }
  const BoundaryGeometry mixed(3, {0, 1});
  CHECK(c2_closed_form(mixed, 2) - c2_closed_form(mixed, 1) == doctest::Approx(-1.0 / 192.0).epsilon(1e-13));
  CHECK_THROWS_AS(c2_closed_form(mixed, 0), DomainError);
  CHECK_THROWS_AS(c2_closed_form(mixed, 4), DomainError);
}

TEST_CASE("c2 is affine in k with slope set by the trace-free part") {
  std::mt19937_64 rng(oracle::kSeed + 21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + trial % 6;
    std::vector<double> k(static_cast<std::size_t>(n - 1));
    for (auto& x : k) x = u(rng);
    const BoundaryGeometry g(n, k);
    const double pi0 = derived_invariants(g).pi0_sq;
    const double slope = -(n - 2.0) / (12.0 * std::pow(n - 1.0, 3)) * pi0;
    for (int kk = 1; kk < n; ++kk) {
      CHECK(c2_closed_form(g, kk + 1) - c2_closed_form(g, kk) == doctest::Approx(slope).epsilon(1e-9).scale(1.0));
    }
    CHECK(slope <= 0.0);

    // Shifting every curvature changes H but not the trace-free part, so the
    // k-difference is unchanged.
    std::vector<double> shifted = k;
    for (auto& x : shifted) x += 0.7;
    const BoundaryGeometry h(n, shifted);
    CHECK(c2_closed_form(h, n) - c2_closed_form(h, 1) ==
          doctest::Approx(c2_closed_form(g, n) - c2_closed_form(g, 1)).epsilon(1e-9).scale(1.0));

    // kappa -> 2 kappa: c1 doubles, c2 quadruples.
    std::vector<double> doubled = k;
    for (auto& x : doubled) x *= 2.0;
    const BoundaryGeometry g2(n, doubled);
    CHECK(c1_closed_form(g2) == doctest::Approx(2.0 * c1_closed_form(g)).scale(1.0));
    CHECK(c2_closed_form(g2, 2) == doctest::Approx(4.0 * c2_closed_form(g, 2)).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("ball_geometry") {
  const auto g = ball_geometry(3, 1.0);
  CHECK(std::vector<double>(g.kappas().begin(), g.kappas().end()) == std::vector<double>{1.0, 1.0});
  const auto h = ball_geometry(4, 2.0);
  CHECK(std::vector<double>(h.kappas().begin(), h.kappas().end()) == std::vector<double>{0.5, 0.5, 0.5});
  CHECK(derived_invariants(h).mean_curvature == 1.5);
  CHECK_THROWS_AS(ball_geometry(3, 0.0), DomainError);
  CHECK_THROWS_AS(ball_geometry(3, -1.0), DomainError);
  CHECK_THROWS_AS(ball_geometry(2, 1.0), DomainError);
}

}  // TEST_SUITE
