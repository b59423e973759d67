#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "fqmm/error.hpp"
#include "fqmm/reference.hpp"
#include "fqmm/wigner.hpp"
#include "test_util.hpp"

using namespace fqmm;

namespace {

constexpr double kPi = std::numbers::pi;
const double kSigma = std::sqrt(0.5);

GridExtents small_grid(std::size_t n = 96) { return {-6.0, 6.0, -6.0, 6.0, n, n}; }

double gaussian(double q, double p) { return std::exp(-((q - 1.2) * (q - 1.2) + 2.0 * (p + 0.4) * (p + 0.4))); }

// F(t, q, p) = f0(characteristic_map(q, p, t, shift)) with an analytic f0.
double transported(double t, double q, double p, double shift) {
  const auto z = characteristic_map(q, p, t, shift);
  return gaussian(z.q, z.p);
}

}  // namespace

TEST_CASE("characteristic map examples") {
  SUBCASE("identity at t = 0") {
    const auto z = characteristic_map(1.5, -0.25, 0.0, 0.75);
    CHECK(z.q == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(z.p == doctest::Approx(-0.25).epsilon(1e-15));
  }
  SUBCASE("half turn reflects through the centre") {
    // Centre (-0.5, 0): (1, 0) -> (-2, 0).
    const auto z = characteristic_map(1.0, 0.0, kPi, 0.5);
    CHECK(z.q == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(std::abs(z.p) < 1e-14);
  }
  SUBCASE("quarter turn") {
    const auto z = characteristic_map(1.0, 0.0, kPi / 2, 0.0);
    CHECK(std::abs(z.q) < 1e-15);
    CHECK(z.p == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("centre is fixed") {
    for (double t : {0.3, 1.7, 4.0}) {
      const auto z = characteristic_map(-0.375, 0.0, t, 0.375);
      CHECK(z.q == doctest::Approx(-0.375).epsilon(1e-15));
      CHECK(std::abs(z.p) < 1e-15);
    }
  }
  SUBCASE("distance to the centre is preserved") {
    const auto z = characteristic_map(2.0, 1.0, 0.9, -0.25);
    CHECK(std::hypot(z.q - 0.25, z.p) == doctest::Approx(std::hypot(1.75, 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("closed form solves the transport equation") {
  // d_t F = (q + shift) d_p F - p d_q F, checked by centred differences.
  const double h = 1e-4;
  const double shift = 0.375;
  double worst = 0.0;
  double worst_reversed = 0.0;
  for (double t : {0.2, 1.1, 2.5}) {
    for (double q : {-1.0, 0.4, 1.6}) {
      for (double p : {-0.8, 0.1, 0.9}) {
        const double dt = (transported(t + h, q, p, shift) - transported(t - h, q, p, shift)) / (2 * h);
        const double dq = (transported(t, q + h, p, shift) - transported(t, q - h, p, shift)) / (2 * h);
        const double dp = (transported(t, q, p + h, shift) - transported(t, q, p - h, shift)) / (2 * h);
        const double rhs = (q + shift) * dp - p * dq;
        worst = std::max(worst, std::abs(dt - rhs));
        worst_reversed = std::max(worst_reversed, std::abs(-dt - rhs));
      }
    }
  }
  CHECK(worst < 1e-6);
  // The opposite rotation sense does not solve it.
  CHECK(worst_reversed > 1e-2);
}

TEST_CASE("closed-form evolution") {
  const auto g = small_grid();
  const auto f0 = coherent_wigner(g, 1.0, 0.5, kSigma);

  SUBCASE("t = 0 and full periods return the initial state") {
    for (double t : {0.0, 2 * kPi, 4 * kPi, -2 * kPi}) {
      const auto f = evolve_closed_form(f0, {1.0, 0.25, t});
      CHECK(l2_distance(f, f0) < 1e-10);
    }
  }
  SUBCASE("half turn maps the centroid through the centre") {
    const double shift = 0.25;
    const auto f = evolve_closed_form(f0, {1.0, shift, kPi}, Interpolation::Bicubic);
    const auto [q, p] = f.centroid();
    CHECK(q == doctest::Approx(-1.0 - 2 * shift).epsilon(1e-4));
    CHECK(p == doctest::Approx(-0.5).epsilon(1e-4));
  }
  SUBCASE("centroid moves clockwise") {
    // Started on the positive q side of the centre, the centroid first moves to
    // negative p.
    const auto f = evolve_closed_form(coherent_wigner(g, 2.0, 0.0, kSigma), {1.0, 0.0, 0.3}, Interpolation::Bicubic);
    CHECK(f.centroid().second < -0.1);
  }
  SUBCASE("mass is conserved while the state stays on the grid") {
    for (double t : {0.5, 1.5, 3.0}) {
      const auto f = evolve_closed_form(f0, {1.0, -0.5, t}, Interpolation::Bicubic);
      CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-6));
    }
  }
  SUBCASE("parallel kernel matches the serial reference") {
    const auto big = coherent_wigner(small_grid(256), 0.5, -0.5, kSigma);
    for (auto method : {Interpolation::Bilinear, Interpolation::Bicubic}) {
      const EvolutionParams params{1.0, 0.625, 0.7};
      CHECK(evolve_closed_form(big, params, method).values() == serial::evolve_closed_form(big, params, method).values());
    }
  }
}

TEST_CASE("interpolation") {
  const GridExtents g{-1.0, 1.0, -2.0, 2.0, 40, 50};
  WignerGrid f(g);
  for (std::size_t i = 0; i < g.nq; ++i)
    for (std::size_t j = 0; j < g.np; ++j) f.at(i, j) = 0.5 + 2.0 * g.q(i) - 0.75 * g.p(j) + g.q(i) * g.p(j);

  SUBCASE("nodes are reproduced") {
    for (auto method : {Interpolation::Bilinear, Interpolation::Bicubic}) {
      CHECK(interpolate(f, g.q(7), g.p(11), method) == doctest::Approx(f.at(7, 11)).epsilon(1e-14));
    }
  }
  SUBCASE("bilinear functions are exact in the interior") {
    for (auto method : {Interpolation::Bilinear, Interpolation::Bicubic}) {
      const double q = 0.137, p = -0.618;
      CHECK(interpolate(f, q, p, method) == doctest::Approx(0.5 + 2.0 * q - 0.75 * p + q * p).epsilon(1e-13));
    }
  }
  SUBCASE("outside the node hull is zero") {
    CHECK(interpolate(f, 1.5, 0.0, Interpolation::Bilinear) == 0.0);
    CHECK(interpolate(f, 0.0, -2.5, Interpolation::Bicubic) == 0.0);
  }
}

TEST_CASE("semi-Lagrangian solver") {
  SUBCASE("converges to the closed form under refinement") {
    const EvolutionParams params{1.0, 0.25, 1.0};
    double previous = 1e300;
    for (std::size_t n : {64, 128, 256}) {
      const auto g = small_grid(n);
      const auto f0 = coherent_wigner(g, 1.0, 0.5, kSigma);
      const double dt = 0.8 * g.dq();
      const auto exact = evolve_closed_form(f0, params, Interpolation::Bicubic);
      const double err = l2_distance(evolve_numeric(f0, params, dt, Interpolation::Bicubic), exact);
      CHECK(err < previous / 3.0);
      previous = err;
    }
  }
  SUBCASE("constants are preserved away from the boundary") {
    const auto g = small_grid(64);
    const WignerGrid one(g, 1.0);
    const auto f = evolve_numeric(one, {1.0, 0.0, 0.5}, 0.05, Interpolation::Bicubic);
    for (std::size_t i = 20; i < 44; ++i)
      for (std::size_t j = 20; j < 44; ++j) CHECK(f.at(i, j) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("t = 0 is the identity") {
    const auto f0 = coherent_wigner(small_grid(), 0.0, 0.0, kSigma);
    CHECK(evolve_numeric(f0, {1.0, 0.5, 0.0}, 0.1).values() == f0.values());
  }
  SUBCASE("dt must be positive") {
    const auto f0 = coherent_wigner(small_grid(), 0.0, 0.0, kSigma);
    CHECK_THROWS_AS(evolve_numeric(f0, {1.0, 0.5, 1.0}, 0.0), PreconditionError);
  }
}

TEST_CASE("coherent initial state") {
  const auto g = small_grid(128);
  const auto f = coherent_wigner(g, 0.5, -1.0, kSigma);
  CHECK(f.integral() == doctest::Approx(1.0).epsilon(1e-14));
  const auto [q, p] = f.centroid();
  CHECK(q == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(p == doctest::Approx(-1.0).epsilon(1e-10));
  // Purity of a coherent state: int f^2 = 1/(4 pi sigma^2) = 1/(2 pi) for sigma^2 = 1/2.
  CHECK(f.integral_of_square() == doctest::Approx(1.0 / (2 * kPi)).epsilon(1e-6));
  CHECK_THROWS_AS(coherent_wigner(g, 5.0, 0.0, kSigma), PreconditionError);
  CHECK_THROWS_AS(coherent_wigner(g, 0.0, 0.0, -1.0), PreconditionError);
}

TEST_CASE("grid extents validation") {
  CHECK_THROWS_AS((GridExtents{1.0, -1.0, -1.0, 1.0, 8, 8}.validate()), PreconditionError);
  CHECK_THROWS_AS((GridExtents{-1.0, 1.0, -1.0, 1.0, 1, 8}.validate()), PreconditionError);
  CHECK_NOTHROW(small_grid().validate());
}

TEST_CASE("rotation centre set") {
  SUBCASE("n_max = 1") {
    const auto c = center_set(1.0, 1);
    REQUIRE(c.size() == 2);
    CHECK(c[0].eigenvalue == -0.5);
    CHECK(c[0].center_q == 0.5);
    CHECK(c[1].eigenvalue == 0.5);
    CHECK(c[1].center_q == -0.5);
  }
  SUBCASE("n_max = 3 with lambda = 2") {
    const auto c = center_set(2.0, 3);
    REQUIRE(c.size() == 2 + 4 + 8);
    CHECK(c[2].eigenvalue == -0.75);
    CHECK(c[2].center_q == 1.5);
    CHECK(c.back().eigenvalue == 0.875);
    CHECK(c.back().center_q == -1.75);
    for (const auto& r : c) CHECK(r.center_q == -2.0 * r.eigenvalue);
  }
}

TEST_CASE("circle fit") {
  std::vector<PhasePoint> pts;
  for (int i = 0; i < 7; ++i) {
    const double a = 0.4 + 2 * kPi * i / 7;
    pts.push_back({-0.3 + 1.25 * std::cos(a), 0.2 + 1.25 * std::sin(a)});
  }
  const auto fit = fit_circle(pts);
  CHECK(fit.center_q == doctest::Approx(-0.3).epsilon(1e-12));
  CHECK(fit.center_p == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(fit.radius == doctest::Approx(1.25).epsilon(1e-12));
  CHECK_THROWS_AS(fit_circle({{0, 0}, {1, 1}}), PreconditionError);
}

TEST_CASE("centroid trajectory circles the displacement centre") {
  const auto g = small_grid(128);
  const auto f0 = coherent_wigner(g, 1.5, 0.0, kSigma);
  for (double e : {-0.75, 0.125, 0.5}) {
    std::vector<PhasePoint> traj;
    for (int s = 0; s < 6; ++s) {
      const auto [q, p] = evolve_closed_form(f0, {1.0, e, 2 * kPi * s / 6}, Interpolation::Bicubic).centroid();
      traj.push_back({q, p});
    }
    const auto fit = fit_circle(traj);
    CHECK(std::abs(fit.center_q + e) < g.dq());
    CHECK(std::abs(fit.center_p) < g.dp());
    CHECK(fit.radius == doctest::Approx(1.5 + e).epsilon(1e-3));
  }
}

TEST_CASE("displaced oscillator spectrum") {
  SUBCASE("eps = 0 gives n + 1/2") {
    const auto r = displaced_spectrum_check(0.0, 1024, 12);
    REQUIRE(r.eigenvalues.size() == 12);
    for (std::size_t n = 0; n < 12; ++n) CHECK(r.eigenvalues[n] == doctest::Approx(n + 0.5).epsilon(1e-6));
    CHECK(std::abs(r.shift) < 1e-5);
  }
  SUBCASE("eps = 0.5 shifts every level by -eps^2/2") {
    const auto r = displaced_spectrum_check(0.5, 1024, 20);
    CHECK(std::abs(r.shift + 0.125) < 1e-4);
    CHECK(r.max_deviation < 1e-4);
  }
  SUBCASE("shift is even in eps") {
    const auto a = displaced_spectrum_check(0.75, 768, 10);
    const auto b = displaced_spectrum_check(-0.75, 768, 10);
    CHECK(a.shift == doctest::Approx(b.shift).epsilon(1e-9));
    CHECK(a.shift == doctest::Approx(-0.28125).epsilon(1e-4));
  }
  SUBCASE("grid size is checked") {
    CHECK_THROWS_AS(displaced_spectrum_check(0.5, 256, 10), PreconditionError);
  }
}
