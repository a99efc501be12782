#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <vector>

#include "doctest.h"
#include "wbfv/errors.hpp"
#include "wbfv/quadrature.hpp"
#include "wbfv/refdata.hpp"

using namespace wbfv;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / "wbfv_refdata_tests";
  fs::create_directories(p);
  return p;
}

} // namespace

TEST_CASE("cubic spline interpolation") {
  SUBCASE("exact on cubic data") {
    auto f = [](double x) { return ((0.5 * x - 1.0) * x + 2.0) * x - 0.3; };
    std::vector<double> x, y;
    for (int k = 0; k <= 10; ++k) {
      x.push_back(-1.0 + 0.37 * k);
      y.push_back(f(x.back()));
    }
    const CubicSpline s(x, y);
    for (double q : {-0.99, -0.4, 0.0, 0.8, 1.93, 2.69}) {
      CHECK(s(q) == doctest::Approx(f(q)).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)s(-1.01), CoverageError);
    CHECK_THROWS_AS((void)s(2.71), CoverageError);
  }
  SUBCASE("fourth order on smooth data") {
    auto f = [](double x) { return std::sin(x); };
    auto err = [&](int n) {
      std::vector<double> x, y;
      for (int k = 0; k <= n; ++k) {
        x.push_back(3.0 * k / n);
        y.push_back(f(x.back()));
      }
      const CubicSpline s(x, y);
      double worst = 0.0;
      for (int k = 0; k < 200; ++k) {
        const double q = 3.0 * (k + 0.5) / 200.0;
        worst = std::max(worst, std::abs(s(q) - f(q)));
      }
      return worst;
    };
    const double e1 = err(16), e2 = err(32);
    CHECK(e1 / e2 > 12.0); // asymptotic ratio 16
  }
  SUBCASE("short-sample fallbacks") {
    const CubicSpline line({0.0, 1.0}, {1.0, 3.0});
    CHECK(line(0.25) == doctest::Approx(1.5).epsilon(1e-14));
    const CubicSpline para({0.0, 1.0, 2.0}, {0.0, 1.0, 4.0});
    CHECK(para(1.5) == doctest::Approx(2.25).epsilon(1e-13));
    CHECK_THROWS_AS(CubicSpline({0.0, 0.0}, {1.0, 2.0}), ConstructionError);
    CHECK_THROWS_AS(CubicSpline({1.0}, {2.0}), ConstructionError);
  }
}

TEST_CASE("tabulated profile save/load round trip is bitwise") {
  std::vector<double> s;
  std::vector<double> a, b;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 12; ++k) {
    s.push_back(0.1 * k + 1.0 / 3.0);
    a.push_back(dist(rng));
    b.push_back(0.1 + dist(rng) * 1e-14); // awkward magnitudes
  }
  const TabulatedProfile1D prof(s, {a, b}, {"rho", "ener"});
  const fs::path path = scratch_dir() / "profile.txt";
  prof.save(path.string());
  const TabulatedProfile1D back = TabulatedProfile1D::load(path.string());
  REQUIRE(back.nvars() == 2);
  REQUIRE(back.samples() == 12);
  CHECK(back.names()[0] == "rho");
  CHECK(back.names()[1] == "ener");
  CHECK(back.s_min() == s.front());
  CHECK(back.s_max() == s.back());
  double v1[2], v2[2];
  for (double q : {0.34, 0.71, 1.2, 1.43}) {
    prof.value(q, v1);
    back.value(q, v2);
    CHECK(v1[0] == v2[0]);
    CHECK(v1[1] == v2[1]);
  }
  CHECK_THROWS_AS(TabulatedProfile1D::load("/nonexistent/profile.txt"),
                  IoError);
}

TEST_CASE("tabulated reference: aligned 1-D averages and coverage") {
  const System sys = System::euler1d(Eos::ideal(1.4));
  // cubic profiles so the spline is exact and the averages analytic
  auto frho = [](double s) { return 1.0 + 0.1 * s * s * s; };
  auto fmom = [](double s) { return 0.2 * s; };
  auto fE = [](double s) { return 2.0 + 0.5 * s * s; };
  std::vector<double> s;
  std::vector<double> r, m, e;
  for (int k = 0; k <= 60; ++k) {
    const double q = -1.0 + 0.05 * k; // covers [-1, 2]
    s.push_back(q);
    r.push_back(frho(q));
    m.push_back(fmom(q));
    e.push_back(fE(q));
  }
  auto prof = std::make_shared<TabulatedProfile1D>(
      s, std::vector<std::vector<double>>{r, m, e});

  const Grid1D g = build_grid_1d(0.0, 1.0, 8, 2);
  auto ref = reference_from_table(sys, prof, g, 3);
  double out[3];
  for (int i = -2; i < 10; ++i) {
    ref->cell_average(i, 0, 0.0, out);
    const double xl = g.left(i), xr = xl + g.dx;
    CHECK(out[0] == doctest::Approx(gauss_average(frho, xl, xr, 3))
                        .epsilon(1e-13));
    CHECK(out[1] == doctest::Approx(gauss_average(fmom, xl, xr, 3))
                        .epsilon(1e-13));
    CHECK(out[2] == doctest::Approx(gauss_average(fE, xl, xr, 3))
                        .epsilon(1e-13));
  }
  ref->point_value(0.4, 0.0, 0.0, 0, 0, out);
  CHECK(out[0] == doctest::Approx(frho(0.4)).epsilon(1e-13));

  // a grid whose ghosts leave the tabulated range is rejected up front
  const Grid1D far = build_grid_1d(1.5, 3.0, 8, 2);
  CHECK_THROWS_AS(reference_from_table(sys, prof, far, 3), CoverageError);
}

TEST_CASE("tabulated reference: angled 2-D extension") {
  const System sys = System::euler2d(Eos::ideal(1.4));
  const double alpha = std::atan(1.0); // 45 degrees
  const double ca = std::cos(alpha), sa = std::sin(alpha);
  auto frho = [](double s) { return 1.0 + 0.25 * s; };
  auto fmom = [](double s) { return 0.3 * s - 0.1; }; // along grad s
  auto fE = [](double s) { return 2.0 + s * s; };
  std::vector<double> s;
  std::vector<double> r, m, e;
  for (int k = 0; k <= 80; ++k) {
    const double q = -1.0 + 0.05 * k; // covers [-1, 3]
    s.push_back(q);
    r.push_back(frho(q));
    m.push_back(fmom(q));
    e.push_back(fE(q));
  }
  auto prof = std::make_shared<TabulatedProfile1D>(
      s, std::vector<std::vector<double>>{r, m, e});

  const Grid2D g = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 6, 6, 2);
  auto ref =
      reference_from_table(sys, prof, ProfileGeometry::angled(alpha), g, 3);
  double out[4];

  // the tabulated momentum maps onto (cos a, sin a)
  ref->point_value(0.3, 0.4, 0.0, 0, 0, out);
  const double sq = 0.3 * ca + 0.4 * sa;
  CHECK(out[0] == doctest::Approx(frho(sq)).epsilon(1e-13));
  CHECK(out[1] == doctest::Approx(fmom(sq) * ca).epsilon(1e-13));
  CHECK(out[2] == doctest::Approx(fmom(sq) * sa).epsilon(1e-13));
  CHECK(out[3] == doctest::Approx(fE(sq)).epsilon(1e-13));

  // cell averages match a tensor quadrature of the angled profile
  ref->cell_average(2, 3, 0.0, out);
  auto rho_xy = [&](double x, double y) { return frho(x * ca + y * sa); };
  auto E_xy = [&](double x, double y) {
    const double v = x * ca + y * sa;
    return fE(v);
  };
  const double xl = g.cell_x_lo(2), yl = g.cell_y_lo(3);
  CHECK(out[0] == doctest::Approx(gauss_average_2d(rho_xy, xl, xl + g.dxi, yl,
                                                   yl + g.deta, 3))
                      .epsilon(1e-12));
  CHECK(out[3] == doctest::Approx(gauss_average_2d(E_xy, xl, xl + g.dxi, yl,
                                                   yl + g.deta, 3))
                      .epsilon(1e-12));
}

TEST_CASE("tabulated reference: radial extension") {
  const System sys = System::euler2d(Eos::ideal(1.4));
  auto frho = [](double s) { return 2.0 - 0.3 * s; };
  std::vector<double> s;
  std::vector<double> r, m, e;
  for (int k = 0; k <= 80; ++k) {
    const double q = 0.05 * k; // radii [0, 4]
    s.push_back(q);
    r.push_back(frho(q));
    m.push_back(0.1 * q); // radial momentum
    e.push_back(3.0);
  }
  auto prof = std::make_shared<TabulatedProfile1D>(
      s, std::vector<std::vector<double>>{r, m, e});
  const Grid2D g = build_cartesian_2d(0.5, 1.5, 0.5, 1.5, 4, 4, 2);
  auto ref = reference_from_table(sys, prof,
                                  ProfileGeometry::radial(0.25, 0.25), g, 2);
  double out[4];
  const double px = 1.0, py = 0.75;
  const double rad = std::hypot(px - 0.25, py - 0.25);
  ref->point_value(px, py, 0.0, 0, 0, out);
  CHECK(out[0] == doctest::Approx(frho(rad)).epsilon(1e-13));
  // momentum points away from the center
  CHECK(out[1] == doctest::Approx(0.1 * rad * (px - 0.25) / rad).epsilon(1e-12));
  CHECK(out[2] == doctest::Approx(0.1 * rad * (py - 0.25) / rad).epsilon(1e-12));
}

TEST_CASE("snapshot save/load round trip is bitwise") {
  Snapshot snap;
  snap.time = 0.1 + 1.0 / 3.0;
  snap.nx = 3;
  snap.ny = 2;
  snap.nvars = 2;
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int k = 0; k < 12; ++k) snap.data.push_back(dist(rng) * 1e-7);
  snap.data[3] = 1.0 / 3.0;
  snap.data[5] = 6.02214076e23;

  const fs::path path = scratch_dir() / "snap.txt";
  save_snapshot(snap, path.string());
  const Snapshot back = load_snapshot(path.string());
  CHECK(back.time == snap.time);
  CHECK(back.nx == 3);
  CHECK(back.ny == 2);
  CHECK(back.nvars == 2);
  REQUIRE(back.data.size() == snap.data.size());
  for (size_t k = 0; k < snap.data.size(); ++k)
    CHECK(back.data[k] == snap.data[k]);

  CHECK_THROWS_AS(load_snapshot("/nonexistent/snap.txt"), IoError);
}

TEST_CASE("snapshot series round trip") {
  std::vector<Snapshot> snaps(3);
  for (int n = 0; n < 3; ++n) {
    snaps[n].time = 0.25 * n;
    snaps[n].nx = 2;
    snaps[n].ny = 2;
    snaps[n].nvars = 1;
    snaps[n].data = {1.0 + n, 2.0 + n, 3.0 + n, 4.0 + n};
  }
  const fs::path dir = scratch_dir() / "series";
  const std::string index = save_snapshot_series(dir.string(), "frame", snaps);
  const std::vector<Snapshot> back = load_snapshot_series(index);
  REQUIRE(back.size() == 3);
  for (int n = 0; n < 3; ++n) {
    CHECK(back[n].time == snaps[n].time);
    CHECK(back[n].data == snaps[n].data);
  }
}

TEST_CASE("snapshot coarsening") {
  const Grid2D fine = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 8, 8, 2);
  const Grid2D coarse = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 4, 4, 2);
  Snapshot snap;
  snap.time = 0.5;
  snap.nx = 8;
  snap.ny = 8;
  snap.nvars = 2;
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int k = 0; k < 8 * 8 * 2; ++k) snap.data.push_back(dist(rng));

  SUBCASE("block means, exactly conservative") {
    const Snapshot c = coarsen_snapshot(snap, fine, coarse);
    REQUIRE(c.nx == 4);
    REQUIRE(c.ny == 4);
    CHECK(c.time == 0.5);
    for (int v = 0; v < 2; ++v) {
      double sf = 0.0, sc = 0.0;
      for (int j = 0; j < 8; ++j)
        for (int i = 0; i < 8; ++i) sf += snap.cell(i, j)[v];
      for (int j = 0; j < 4; ++j)
        for (int i = 0; i < 4; ++i) sc += c.cell(i, j)[v];
      // uniform cells: conservation is mean preservation
      CHECK(std::abs(sf / 64.0 - sc / 16.0) <= 1e-13);
    }
    // spot check one block
    const double want = 0.25 * (snap.cell(2, 4)[1] + snap.cell(3, 4)[1] +
                                snap.cell(2, 5)[1] + snap.cell(3, 5)[1]);
    CHECK(c.cell(1, 2)[1] == doctest::Approx(want).epsilon(1e-15));
  }
  SUBCASE("identity ratio returns the data unchanged") {
    const Snapshot c = coarsen_snapshot(snap, fine, fine);
    CHECK(c.data == snap.data);
  }
  SUBCASE("non-nested grids are rejected") {
    const Grid2D bad = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 3, 3, 2);
    CHECK_THROWS_AS(coarsen_snapshot(snap, fine, bad), ConstructionError);
    const Grid2D shifted = build_cartesian_2d(0.1, 1.1, 0.0, 1.0, 4, 4, 2);
    CHECK_THROWS_AS(coarsen_snapshot(snap, fine, shifted), ConstructionError);
  }
}

TEST_CASE("snapshot-backed reference") {
  const System sys = System::euler2d(Eos::ideal(1.4));
  const Grid2D fine = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 16, 16, 2);
  const Grid2D solver = build_cartesian_2d(0.0, 1.0, 0.0, 1.0, 8, 8, 2);

  // data polynomial in space (degree <= 1) and cubic in time, so both the
  // spatial handling and the degree-3 time interpolation are exact
  auto value = [](double x, double y, double t, int v) {
    const double base = 1.0 + 0.5 * x - 0.25 * y + 0.1 * v;
    const double tp = ((t - 0.3) * t + 0.5) * t + 1.0; // cubic in t
    return base * tp;
  };
  auto cell_avg = [&](const Grid2D& g, int i, int j, double t, int v) {
    return gauss_average_2d(
        [&](double x, double y) { return value(x, y, t, v); }, g.cell_x_lo(i),
        g.cell_x_lo(i + 1), g.cell_y_lo(j), g.cell_y_lo(j + 1), 3);
  };

  std::vector<Snapshot> snaps;
  for (int n = 0; n <= 4; ++n) {
    Snapshot s;
    s.time = 0.25 * n;
    s.nx = 16;
    s.ny = 16;
    s.nvars = 4;
    s.data.resize(16 * 16 * 4);
    for (int j = 0; j < 16; ++j)
      for (int i = 0; i < 16; ++i)
        for (int v = 0; v < 4; ++v)
          s.cell(i, j)[v] = cell_avg(fine, i, j, s.time, v);
    snaps.push_back(std::move(s));
  }

  SnapshotReference ref(sys, solver, fine, snaps, 3);
  CHECK(ref.time_dependent());

  SUBCASE("snapshot times reproduce coarsened averages bitwise") {
    const Snapshot c = coarsen_snapshot(snaps[2], fine, solver);
    ref.prepare(0.5);
    double out[4];
    for (int j = 0; j < 8; ++j)
      for (int i = 0; i < 8; ++i) {
        ref.cell_average(i, j, 0.5, out);
        for (int v = 0; v < 4; ++v) CHECK(out[v] == c.cell(i, j)[v]);
      }
  }

  SUBCASE("cubic-in-time data interpolates exactly between frames") {
    const double t = 0.37;
    ref.prepare(t);
    double out[4];
    for (int j : {0, 3, 7})
      for (int i : {0, 4, 7}) {
        ref.cell_average(i, j, t, out);
        for (int v = 0; v < 4; ++v)
          CHECK(out[v] ==
                doctest::Approx(cell_avg(solver, i, j, t, v)).epsilon(1e-12));
      }
  }

  SUBCASE("point values reproduce the linear-in-space field") {
    const double t = 0.5;
    ref.prepare(t);
    double out[4];
    ref.point_value(0.5, 0.375, t, 4, 3, out);
    for (int v = 0; v < 4; ++v)
      CHECK(out[v] == doctest::Approx(value(0.5, 0.375, t, v)).epsilon(1e-11));
  }

  SUBCASE("ghost cell averages are rejected for discrete data") {
    ref.prepare(0.5);
    double out[4];
    CHECK_THROWS_AS(ref.cell_average(-1, 0, 0.5, out), CoverageError);
  }
}
