#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "doctest.h"
#include "wbfv/cases.hpp"
#include "wbfv/errors.hpp"
#include "wbfv/runner.hpp"

using namespace wbfv;

namespace {

// small grids per case so construction stays cheap; the radiative column
// needs enough cells that the ghost layers stay inside the tabulated range
int tiny_nx(const CaseInfo& info) {
  if (info.id == "radiative_hydrostatic_2d") return 16;
  if (info.id == "keplerian_disk") return 16;
  return 8;
}

} // namespace

TEST_CASE("case registry") {
  const std::set<std::string> expected = {
      "isothermal_1d",       "isothermal_1d_perturbed",
      "hydrostatic_riemann", "radiative_hydrostatic_2d",
      "double_gresho",       "euler_wave_2d",
      "euler_wave_2d_perturbed", "keplerian_disk",
      "mhd_vortex_stationary",   "mhd_vortex_moving_reference",
      "mhd_vortex_numref"};
  std::set<std::string> got;
  for (const CaseInfo& c : case_registry()) {
    CHECK(got.insert(c.id).second); // ids are unique
    CHECK(!c.summary.empty());
    CHECK(c.default_nx >= 4);
    if (c.two_dimensional) {
      CHECK(c.default_ny >= 4);
      CHECK(!c.grids.empty());
    } else {
      CHECK(c.default_ny == 0);
    }
    CHECK(c.default_t_end > 0.0);
    const int o = c.default_order;
    CHECK((o == 1 || o == 2 || o == 3 || o == 7));
    if (c.has_eta) CHECK(c.default_eta > 0.0);
  }
  CHECK(got == expected);

  CHECK(case_info("double_gresho").id == "double_gresho");
  CHECK_THROWS_AS(case_info("no_such_case"), ConstructionError);

  using std::numbers::pi;
  const double turnover = 2.0 * pi / (std::sqrt(std::exp(1.0)) * 0.1);
  CHECK(case_info("mhd_vortex_stationary").default_t_end ==
        doctest::Approx(10.0 * turnover).epsilon(1e-14));
}

TEST_CASE("every case assembles at reduced size") {
  for (const CaseInfo& info : case_registry()) {
    CAPTURE(info.id);
    CaseOptions o;
    o.nx = tiny_nx(info);
    if (info.id == "mhd_vortex_numref") o.well_balanced = false;
    const Problem p = build_case(info.id, o);
    CHECK(p.case_id == info.id);
    CHECK(p.two_dimensional == info.two_dimensional);
    CHECK(p.nvars() == p.sys.nvars());
    if (info.two_dimensional) {
      REQUIRE(p.grid2);
      CHECK(!p.grid1);
      CHECK(p.ncells() == p.grid2->nx * p.grid2->ny);
    } else {
      REQUIRE(p.grid1);
      CHECK(!p.grid2);
      CHECK(p.grid1->nx == *o.nx);
    }
    REQUIRE(p.initial);
    if (info.id != "mhd_vortex_numref") {
      REQUIRE(p.reference);
      CHECK(p.scheme.well_balanced);
    }
    CHECK(p.t_end == info.default_t_end);
    if (!p.frozen.empty())
      CHECK(static_cast<int>(p.frozen.size()) == p.ncells());
  }
}

TEST_CASE("option validation") {
  CaseOptions o;
  SUBCASE("unsupported order") {
    o.order = 4;
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
    o.order = 0;
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
  }
  SUBCASE("unknown grid variant") {
    o.grid = "spherical";
    CHECK_THROWS_AS(build_case("euler_wave_2d", o), ConstructionError);
    o.grid = "polar";
    CHECK_THROWS_AS(build_case("double_gresho", o), ConstructionError);
  }
  SUBCASE("grids too small") {
    o.nx = 2;
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
    o.nx = 8;
    o.ny = 2;
    CHECK_THROWS_AS(build_case("mhd_vortex_stationary", o), ConstructionError);
  }
  SUBCASE("negative end time") {
    o.nx = 8;
    o.t_end = -0.5;
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
  }
  SUBCASE("perturbation amplitude on an unperturbed case") {
    o.nx = 8;
    o.eta = 0.05;
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
    CHECK_NOTHROW(build_case("isothermal_1d_perturbed", o));
  }
  SUBCASE("snapshot series only where consumed") {
    o.nx = 8;
    o.snapshot_index = "series/index.txt";
    CHECK_THROWS_AS(build_case("isothermal_1d", o), ConstructionError);
  }
  SUBCASE("snapshot-backed case needs the series in well-balanced mode") {
    o.nx = 8;
    CHECK_THROWS_AS(build_case("mhd_vortex_numref", o), ConstructionError);
    o.well_balanced = false;
    CHECK_NOTHROW(build_case("mhd_vortex_numref", o));
  }
  SUBCASE("keplerian Cartesian grid rejects odd cell counts") {
    o.grid = "cartesian";
    o.nx = 5;
    o.ny = 6;
    CHECK_THROWS_AS(build_case("keplerian_disk", o), ConstructionError);
  }
}

TEST_CASE("curvilinear geometry lowers the default order only") {
  CaseOptions o;
  o.nx = 8;
  o.grid = "polar";
  const Problem clamped = build_case("euler_wave_2d", o);
  CHECK(clamped.scheme.order == 2);
  o.order = 1;
  const Problem first = build_case("euler_wave_2d", o);
  CHECK(first.scheme.order == 1);
  o.grid.reset();
  o.order = 3;
  const Problem cart = build_case("euler_wave_2d", o);
  CHECK(cart.scheme.order == 3);
}

TEST_CASE("radiative hydrostatic profile") {
  const TabulatedProfile1D prof = radiative_hydrostatic_profile();
  REQUIRE(prof.nvars() == 3);
  CHECK(prof.names()[0] == "rho");
  CHECK(prof.names()[1] == "mom");
  CHECK(prof.names()[2] == "ener");
  CHECK(prof.s_min() == -0.3);
  CHECK(prof.s_max() == 1.7142135624);

  const double root2 = std::sqrt(2.0);
  auto temperature = [&](double s) { return 1.0 - 0.1 * root2 * s; };

  SUBCASE("anchor state") {
    double v[3];
    prof.value(0.0, v);
    CHECK(v[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v[1] == 0.0);
    // gas energy T/(gamma-1) plus radiation 3 T^4, zero potential offset
    CHECK(v[2] == doctest::Approx(1.0 / 0.4 + 3.0).epsilon(1e-12));
  }
  SUBCASE("hydrostatic balance dp/ds = -sqrt(2) rho") {
    auto pressure_at = [&](double s) {
      double v[3];
      prof.value(s, v);
      const double T = temperature(s);
      return v[0] * T + T * T * T * T;
    };
    const double h = 1e-3;
    for (double s : {-0.2, 0.1, 0.5, 0.9, 1.4}) {
      double v[3];
      prof.value(s, v);
      const double dpds = (pressure_at(s + h) - pressure_at(s - h)) / (2 * h);
      CHECK(std::abs(dpds + root2 * v[0]) <= 1e-6);
    }
  }
  SUBCASE("stored energy is gas + radiation + potential") {
    const int n = prof.samples();
    const double lo = prof.s_min(), hi = prof.s_max();
    for (int k : {17, n / 3, n / 2, n - 5}) {
      const double s = lo + (hi - lo) * k / (n - 1);
      double v[3];
      prof.value(s, v);
      const double T = temperature(s);
      const double T4 = T * T * T * T;
      const double want = v[0] * T / 0.4 + 3.0 * T4 + v[0] * root2 * s;
      CHECK(v[2] == doctest::Approx(want).epsilon(1e-12));
    }
  }
  SUBCASE("construction guards") {
    CHECK_THROWS_AS(radiative_hydrostatic_profile(3), ConstructionError);
    CHECK_THROWS_AS(radiative_hydrostatic_profile(100, 0.1, 1.0),
                    ConstructionError);
    CHECK_THROWS_AS(radiative_hydrostatic_profile(100, -1.0, 0.0),
                    ConstructionError);
  }
}

TEST_CASE("disk distance metric") {
  CaseOptions o;
  o.grid = "cartesian";
  o.nx = 16;
  o.ny = 16;
  Problem p = build_case("keplerian_disk", o);
  REQUIRE(!p.frozen.empty());
  const bool has_frozen =
      std::any_of(p.frozen.begin(), p.frozen.end(), [](auto f) { return f; });
  const bool has_live =
      std::any_of(p.frozen.begin(), p.frozen.end(), [](auto f) { return !f; });
  CHECK(has_frozen);
  CHECK(has_live);

  RunControl ctl;
  ctl.max_steps = 0;
  p.t_end = 0.0;
  const RunResult r = run_problem(p, ctl);
  const double d0 = disk_distance_metric(p, r.initial_avgs);
  CHECK(d0 > 0.0);

  SUBCASE("linear in the density deviation") {
    std::vector<double> scaled = r.initial_avgs;
    const int nv = p.nvars();
    for (int c = 0; c < p.ncells(); ++c)
      scaled[static_cast<std::size_t>(c) * nv] =
          1.0 + 2.0 * (scaled[static_cast<std::size_t>(c) * nv] - 1.0);
    CHECK(disk_distance_metric(p, scaled) ==
          doctest::Approx(2.0 * d0).epsilon(1e-12));
  }
  SUBCASE("frozen cells do not contribute") {
    std::vector<double> poked = r.initial_avgs;
    const int nv = p.nvars();
    for (int c = 0; c < p.ncells(); ++c)
      if (p.frozen[static_cast<std::size_t>(c)]) {
        poked[static_cast<std::size_t>(c) * nv] = 999.0;
        break;
      }
    CHECK(disk_distance_metric(p, poked) == d0);
  }
}

TEST_CASE("gresho vortex velocity error shrinks with resolution") {
  auto initial_metric = [](int nx) {
    CaseOptions o;
    o.nx = nx;
    Problem p = build_case("double_gresho", o);
    p.t_end = 0.0;
    const RunResult r = run_problem(p);
    CHECK(r.steps == 0);
    return gresho_disk_velocity_error(p, r.final_avgs, 0.0);
  };
  const double e16 = initial_metric(16);
  const double e32 = initial_metric(32);
  CHECK(e16 > 0.0);
  CHECK(e32 > 0.0);
  CHECK(e16 / e32 > 2.0); // cell averaging error, second order
}

TEST_CASE("runs are deterministic") {
  CaseOptions o;
  o.nx = 16;
  o.t_end = 0.05;
  Problem a = build_case("isothermal_1d_perturbed", o);
  Problem b = build_case("isothermal_1d_perturbed", o);
  const RunResult ra = run_problem(a);
  const RunResult rb = run_problem(b);
  CHECK(ra.steps == rb.steps);
  CHECK(ra.steps > 0);
  REQUIRE(ra.final_avgs.size() == rb.final_avgs.size());
  CHECK(ra.final_avgs == rb.final_avgs);
  CHECK(ra.l1_error == rb.l1_error);
}
