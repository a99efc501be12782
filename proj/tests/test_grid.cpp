#include <cmath>
#include <numbers>

#include "doctest.h"
#include "wbfv/errors.hpp"
#include "wbfv/grid.hpp"
#include "wbfv/quadrature.hpp"

using namespace wbfv;

TEST_CASE("1-D grid geometry") {
  const Grid1D g = build_grid_1d(-1.0, 3.0, 16, 2);
  CHECK(g.nx == 16);
  CHECK(g.ng == 2);
  CHECK(g.dx == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.left(0) == doctest::Approx(-1.0));
  CHECK(g.right(15) == doctest::Approx(3.0));
  CHECK(g.center(0) == doctest::Approx(-1.0 + 0.125));
  // ghosts continue the uniform spacing
  CHECK(g.center(-1) == doctest::Approx(g.center(0) - g.dx));
  CHECK(g.length() == doctest::Approx(4.0));

  CHECK_THROWS_AS(build_grid_1d(1.0, 1.0, 8, 2), ConstructionError);
  CHECK_THROWS_AS(build_grid_1d(0.0, 1.0, 0, 2), ConstructionError);
}

TEST_CASE("Cartesian 2-D metric is exact") {
  const Grid2D g = build_cartesian_2d(0.0, 1.0, 0.0, 2.0, 8, 16, 2);
  CHECK(g.kind == GridKind::cartesian);
  const double cell = g.dxi * g.deta;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      CHECK(g.volume(i, j) == cell); // bitwise for affine maps
      CHECK(g.jacobian(i, j) > 0.0);
    }
  CHECK(g.domain_volume() == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(g.center_x(0, 0) == doctest::Approx(0.0625));
  CHECK(g.center_y(0, 0) == doctest::Approx(0.0625));
  CHECK(g.cell_x_lo(0) == doctest::Approx(0.0));
  CHECK(g.cell_y_lo(16) == doctest::Approx(2.0));
}

TEST_CASE("polar grid metric approximates sector volumes") {
  const Grid2D g = build_polar_2d(1.0, 2.0, 16, 64, 2);
  CHECK(g.kind == GridKind::curvilinear);
  CHECK(g.eta_closed);
  double total = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      CHECK(g.jacobian(i, j) > 0.0);
      total += g.volume(i, j);
    }
  // second order accurate metric; full annulus area is 3 pi
  CHECK(total == doctest::Approx(3.0 * std::numbers::pi).epsilon(2e-3));

  // one ring compared against the exact sector area
  const double dr = g.dxi, r0 = 1.0;
  const double dth = g.deta;
  const double exact = 0.5 * ((r0 + dr) * (r0 + dr) - r0 * r0) * dth;
  CHECK(g.volume(0, 3) == doctest::Approx(exact).epsilon(2e-3));

  CHECK_THROWS_AS(build_polar_2d(2.0, 1.0, 8, 16, 2), ConstructionError);
  CHECK_THROWS_AS(build_polar_2d(-0.5, 1.0, 8, 16, 2), ConstructionError);
}

TEST_CASE("interface quadrature: weights, normals, measures") {
  SUBCASE("cartesian midpoint") {
    const Grid2D g = build_cartesian_2d(0.0, 2.0, 0.0, 1.0, 4, 4, 2);
    const InterfaceTable t = interface_quadrature(g, 2);
    REQUIRE(t.mq == 1);
    CHECK(t.weights[0] == 1.0);
    const int f = t.xf(1, 2);
    CHECK(t.xf_nx[f] == doctest::Approx(1.0));
    CHECK(t.xf_ny[f] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(t.xf_measure[f] == doctest::Approx(0.25));
    const int fy = t.yf(1, 2);
    CHECK(t.yf_nx[fy] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(t.yf_ny[fy] == doctest::Approx(1.0));
    CHECK(t.yf_measure[fy] == doctest::Approx(0.5));
  }
  SUBCASE("cartesian three point") {
    const Grid2D g = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 4, 4, 2);
    const InterfaceTable t = interface_quadrature(g, 3);
    REQUIRE(t.mq == 3);
    CHECK(t.weights[0] + t.weights[1] + t.weights[2] ==
          doctest::Approx(1.0).epsilon(1e-15));
    // quadrature points stay on the face and straddle its midpoint
    const int f = t.xf(2, 1);
    const double x0 = t.xf_px[static_cast<size_t>(f) * 3 + 0];
    const double x1 = t.xf_px[static_cast<size_t>(f) * 3 + 1];
    const double y0 = t.xf_py[static_cast<size_t>(f) * 3 + 0];
    const double y2 = t.xf_py[static_cast<size_t>(f) * 3 + 2];
    CHECK(x0 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(x1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(y0 == doctest::Approx(0.375 - std::sqrt(3.0 / 5.0) * 0.125));
    CHECK(y2 == doctest::Approx(0.375 + std::sqrt(3.0 / 5.0) * 0.125));
  }
  SUBCASE("polar normals are unit and outward in radius") {
    const Grid2D g = build_polar_2d(1.0, 2.0, 8, 32, 2);
    const InterfaceTable t = interface_quadrature(g, 2);
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i <= g.nx; ++i) {
        const int f = t.xf(i, j);
        const double nx = t.xf_nx[f], ny = t.xf_ny[f];
        CHECK(std::abs(std::hypot(nx, ny) - 1.0) < 1e-14);
        // constant-xi faces point radially outward: n . x > 0
        const double px = t.xf_px[f], py = t.xf_py[f];
        CHECK(nx * px + ny * py > 0.0);
      }
  }
  SUBCASE("curvilinear grids reject the three point rule") {
    const Grid2D g = build_polar_2d(1.0, 2.0, 8, 32, 2);
    CHECK_THROWS_AS(interface_quadrature(g, 3), ConstructionError);
    CHECK_THROWS_AS(interface_quadrature(g, 5), ConstructionError);
  }
}

TEST_CASE("Gauss rules integrate their design degree") {
  // three point rule is exact through degree 5
  auto quintic = [](double x) {
    return ((((6.0 * x - 5.0) * x + 4.0) * x - 3.0) * x + 2.0) * x - 1.0;
  };
  // exact average over [a, b] via the antiderivative of the quintic
  auto exact_avg = [](double a, double b) {
    auto I = [](double x) {
      double x2 = x * x, x3 = x2 * x;
      return x3 * x3 - x2 * x3 + x2 * x2 - x3 + x2 - x;
    };
    return (I(b) - I(a)) / (b - a);
  };
  const double got = gauss_average(quintic, 0.3, 0.9, 3);
  CHECK(got == doctest::Approx(exact_avg(0.3, 0.9)).epsilon(1e-14));

  SUBCASE("weights of every rule sum to one") {
    for (int n : {1, 3, 5, 7}) {
      const GaussRule r = gauss_rule(n);
      double s = 0.0;
      for (int k = 0; k < r.n; ++k) s += r.weights[k];
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(gauss_rule(4), ConstructionError);
  }
  SUBCASE("five point rule handles degree 9") {
    auto f = [](double x) { return std::pow(x, 9) - 2.0 * std::pow(x, 6); };
    auto I = [](double x) {
      return std::pow(x, 10) / 10.0 - 2.0 * std::pow(x, 7) / 7.0;
    };
    const double want = (I(1.2) - I(0.2)) / 1.0; // interval length 1
    CHECK(gauss_average(f, 0.2, 1.2, 5) == doctest::Approx(want).epsilon(1e-13));
  }
  SUBCASE("2-D tensor average") {
    auto f = [](double x, double y) { return (x * x * x) * (y * y) + x + 2.0; };
    // averages over [0,1]x[0,2]: <x^3> = 1/4, <y^2> = 4/3, <x> = 1/2
    const double want = 0.25 * (4.0 / 3.0) + 0.5 + 2.0;
    CHECK(gauss_average_2d(f, 0.0, 1.0, 0.0, 2.0, 3) ==
          doctest::Approx(want).epsilon(1e-14));
  }
}
