#include "wbfv/cases.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "wbfv/eos.hpp"
#include "wbfv/errors.hpp"

namespace wbfv {

namespace {

constexpr double kGamma = 1.4;
constexpr double kPi = std::numbers::pi_v<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi_v<double>;

constexpr double kGreshoU0 = 0.2;
constexpr double kGreshoV0 = 0.4;

double wrap(double a, double period) {
  const double w = a - period * std::floor(a / period);
  return (w == period) ? 0.0 : w;
}

double wrap_delta(double d, double period) {
  return d - period * std::round(d / period);
}

BcKind extrapolation_for_order(int order) {
  if (order <= 1) return BcKind::extrapolate_constant;
  if (order == 2) return BcKind::extrapolate_linear;
  return BcKind::extrapolate_parabolic;
}

GravityField sine_potential() {
  return GravityField::make(
      [](double x, double) { return std::sin(kTwoPi * x); },
      [](double x, double, double& gx, double& gy) {
        gx = kTwoPi * std::cos(kTwoPi * x);
        gy = 0.0;
      });
}

GravityField linear_potential_1d(double slope) {
  return GravityField::make(
      [slope](double x, double) { return slope * x; },
      [slope](double, double, double& gx, double& gy) {
        gx = slope;
        gy = 0.0;
      });
}

GravityField diagonal_potential() {
  return GravityField::make(
      [](double x, double y) { return x + y; },
      [](double, double, double& gx, double& gy) {
        gx = 1.0;
        gy = 1.0;
      });
}

GravityField point_mass_potential() {
  return GravityField::make(
      [](double x, double y) { return -1.0 / std::hypot(x, y); },
      [](double x, double y, double& gx, double& gy) {
        const double r = std::hypot(x, y);
        const double r3 = r * r * r;
        gx = x / r3;
        gy = y / r3;
      });
}

// --- state functions ------------------------------------------------------

void isothermal_sine_state(double x, double eta, double* q) {
  const double phi = std::sin(kTwoPi * x);
  const double rho = std::exp(-phi);
  const double pr = rho + eta * std::exp(-100.0 * (x - 0.5) * (x - 0.5));
  q[0] = rho;
  q[1] = 0.0;
  q[2] = pr / (kGamma - 1.0) + rho * phi;
}

// One Gresho vortex, its center advected with the background velocity and
// wrapped onto the [0,1] x [0,2] torus. Adds the rotation to (u, v) and
// overwrites the pressure inside the support.
void add_gresho_vortex(double x, double y, double cx, double cy, double& u,
                       double& v, double& pr) {
  const double dx = wrap_delta(x - cx, 1.0);
  const double dy = wrap_delta(y - cy, 2.0);
  const double r = std::hypot(dx, dy);
  if (r < 0.2) {
    u -= 5.0 * dy;
    v += 5.0 * dx;
    pr = 5.0 + 12.5 * r * r;
  } else if (r < 0.4) {
    const double s = (2.0 - 5.0 * r) / r;
    u -= s * dy;
    v += s * dx;
    pr = 9.0 - 4.0 * std::log(0.2) + 12.5 * r * r - 20.0 * r +
         4.0 * std::log(r);
  }
}

void gresho_state(double x, double y, double t, bool both, double* q) {
  double u = kGreshoU0;
  double v = kGreshoV0;
  double pr = 3.0 + 4.0 * std::log(2.0);
  const double cx = wrap(0.5 + kGreshoU0 * t, 1.0);
  add_gresho_vortex(x, y, cx, wrap(0.5 + kGreshoV0 * t, 2.0), u, v, pr);
  if (both)
    add_gresho_vortex(x, y, cx, wrap(1.5 + kGreshoV0 * t, 2.0), u, v, pr);
  q[0] = 1.0;
  q[1] = u;
  q[2] = v;
  q[3] = pr / (kGamma - 1.0) + 0.5 * (u * u + v * v);
}

// Traveling-wave solution of the Euler system in the diagonal potential; the
// total energy includes the potential part rho * (x + y).
void euler_wave_state(double x, double y, double t, double eta, double* q) {
  const double arg = kPi * (x + y - 2.0 * t);
  const double rho = 1.0 + 0.2 * std::sin(arg);
  double pr = 4.5 + 2.0 * t - x - y + std::cos(arg) / (5.0 * kPi);
  if (eta != 0.0) {
    const double dx = x - 0.5;
    const double dy = y - 0.5;
    pr += eta * std::exp(-100.0 * (dx * dx + dy * dy));
  }
  q[0] = rho;
  q[1] = rho;
  q[2] = rho;
  q[3] = pr / (kGamma - 1.0) + rho * (1.0 + x + y);
}

void keplerian_state(double x, double y, bool blob, double* q) {
  const double r = std::hypot(x, y);
  const double vk = std::sqrt(1.0 / r);
  const double u = -y / r * vk;
  const double v = x / r * vk;
  double rho = 1.0;
  if (blob) {
    const double dx = x - 1.2;
    const double dy = y - 1.0;
    if (dx * dx + dy * dy < 0.15 * 0.15) rho = 2.0;
  }
  q[0] = rho;
  q[1] = rho * u;
  q[2] = rho * v;
  q[3] = 1.0 / (kGamma - 1.0) + rho * (0.5 * (u * u + v * v) - 1.0 / r);
}

AnalyticReference::StateFn mhd_vortex_fn(double kp, double mp, double u0,
                                         double v0) {
  return [=](double x, double y, double t, double* q) {
    const double hx = x - t * u0;
    const double hy = y - t * v0;
    const double r2 = hx * hx + hy * hy;
    const double ex = std::exp(0.5 * (1.0 - r2));
    const double u = u0 - kp * ex * hy;
    const double v = v0 + kp * ex * hx;
    const double bx = -mp * ex * hy;
    const double by = mp * ex * hx;
    const double pr =
        1.0 + (0.5 * mp * mp * (1.0 - r2) - 0.5 * kp * kp) * ex * ex;
    q[0] = 1.0;
    q[1] = u;
    q[2] = v;
    q[3] = bx;
    q[4] = by;
    q[5] = pr / (kGamma - 1.0) + 0.5 * (u * u + v * v) +
           0.5 * (bx * bx + by * by);
  };
}

double mhd_turnover_time(double kp) {
  return kTwoPi / (std::sqrt(std::exp(1.0)) * kp);
}

// --- adaptive scalar ODE driver (Dormand-Prince 5(4)) ----------------------

// Advances p' = f(s, p) from (s, p) to s = target in place.
template <class F>
void advance_ode(F&& f, double& s, double& p, double target, double tol) {
  const double dir = (target >= s) ? 1.0 : -1.0;
  double h = dir * std::max(1e-8, std::abs(target - s) / 4.0);
  int guard = 0;
  while (dir * (target - s) > 0.0) {
    if (++guard > 100000)
      throw ConvergenceError("profile integration did not reach the target");
    if (dir * (s + h - target) > 0.0) h = target - s;
    const double k1 = f(s, p);
    const double k2 = f(s + h / 5.0, p + h * (k1 / 5.0));
    const double k3 = f(s + 3.0 * h / 10.0, p + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2));
    const double k4 = f(s + 4.0 * h / 5.0,
                        p + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3));
    const double k5 =
        f(s + 8.0 * h / 9.0,
          p + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 +
                   64448.0 / 6561.0 * k3 - 212.0 / 729.0 * k4));
    const double k6 =
        f(s + h, p + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 +
                          46732.0 / 5247.0 * k3 + 49.0 / 176.0 * k4 -
                          5103.0 / 18656.0 * k5));
    const double p5 =
        p + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                 2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
    const double k7 = f(s + h, p5);
    const double p4 =
        p + h * (5179.0 / 57600.0 * k1 + 7571.0 / 16695.0 * k3 +
                 393.0 / 640.0 * k4 - 92097.0 / 339200.0 * k5 +
                 187.0 / 2100.0 * k6 + k7 / 40.0);
    const double err = std::abs(p5 - p4);
    const double allowed = tol * (1.0 + std::abs(p));
    if (err <= allowed) {
      s += h;
      p = p5;
      if (dir * (target - s) <= 0.0) {
        s = target;
        break;
      }
    }
    const double shrink =
        (err > 0.0) ? 0.9 * std::pow(allowed / err, 0.2) : 5.0;
    h *= std::clamp(shrink, 0.2, 5.0);
    if (std::abs(h) < 1e-14)
      throw ConvergenceError("profile integration step size underflow");
  }
}

// --- option resolution ------------------------------------------------------

struct Resolved {
  int order = 3;
  bool wb = true;
  FluxKind flux = FluxKind::llf;
  double cfl = 0.0;
  int nx = 0, ny = 0;
  double t_end = 0.0;
  double eta = 0.0;
  std::string grid;
  std::string snapshot_index;
};

Resolved resolve(const CaseInfo& info, const CaseOptions& o) {
  Resolved r;
  r.order = o.order.value_or(info.default_order);
  if (r.order != 1 && r.order != 2 && r.order != 3 && r.order != 7)
    throw ConstructionError("case " + info.id + ": unsupported order " +
                            std::to_string(r.order) +
                            " (available: 1, 2, 3, 7)");
  r.wb = o.well_balanced.value_or(true);
  r.flux = o.flux.value_or(info.default_flux);
  r.cfl = o.cfl.value_or(0.0);

  if (o.grid) {
    if (std::find(info.grids.begin(), info.grids.end(), *o.grid) ==
        info.grids.end())
      throw ConstructionError("case " + info.id + ": no grid variant '" +
                              *o.grid + "'");
    r.grid = *o.grid;
  } else {
    r.grid = info.grids.empty() ? std::string() : info.grids.front();
  }
  // The curvilinear cell geometry is second-order accurate; lower the
  // default order instead of rejecting it when none was requested.
  if (r.grid == "polar" && !o.order && r.order > 2) r.order = 2;

  r.nx = o.nx.value_or(info.default_nx);
  if (r.nx < 4)
    throw ConstructionError("case " + info.id + ": nx must be at least 4");
  if (info.two_dimensional) {
    if (o.ny) {
      r.ny = *o.ny;
    } else if (o.nx) {
      const long scaled =
          static_cast<long>(*o.nx) * info.default_ny / info.default_nx;
      if (scaled * info.default_nx !=
          static_cast<long>(*o.nx) * info.default_ny)
        throw ConstructionError("case " + info.id +
                                ": ny does not scale from nx; pass --ny");
      r.ny = static_cast<int>(scaled);
    } else {
      r.ny = info.default_ny;
    }
    if (r.ny < 4)
      throw ConstructionError("case " + info.id + ": ny must be at least 4");
  }

  r.t_end = o.t_end.value_or(info.default_t_end);
  if (!(r.t_end >= 0.0))
    throw ConstructionError("case " + info.id + ": t_end must be >= 0");

  if (o.eta && !info.has_eta)
    throw ConstructionError("case " + info.id +
                            " takes no perturbation amplitude");
  r.eta = o.eta.value_or(info.default_eta);

  r.snapshot_index = o.snapshot_index;
  if (!r.snapshot_index.empty() && !info.needs_snapshots)
    throw ConstructionError("case " + info.id +
                            " does not consume snapshot references");
  return r;
}

void apply_scheme(Problem& p, const Resolved& r) {
  p.scheme.order = r.order;
  p.scheme.flux = r.flux;
  p.scheme.well_balanced = r.wb;
  p.scheme.two_sided_reference = false;
  p.scheme.cfl = r.cfl;
}

std::shared_ptr<ReferenceSolution> analytic_1d(const Problem& p,
                                               AnalyticReference::StateFn fn,
                                               bool time_dependent) {
  return std::shared_ptr<ReferenceSolution>(
      make_analytic_reference(p.sys, *p.grid1, std::move(fn), time_dependent));
}

std::shared_ptr<ReferenceSolution> analytic_2d(const Problem& p,
                                               AnalyticReference::StateFn fn,
                                               bool time_dependent) {
  return std::shared_ptr<ReferenceSolution>(
      make_analytic_reference(p.sys, *p.grid2, std::move(fn), time_dependent));
}

// --- case builders ----------------------------------------------------------

Problem build_isothermal(const Resolved& r, bool perturbed) {
  Problem p(System::euler1d(Eos::ideal(kGamma), sine_potential()));
  p.grid1 = std::make_shared<Grid1D>(
      build_grid_1d(0.0, 1.0, r.nx, ghost_layers_for_order(r.order, false)));
  p.bc1 = {BcKind::periodic, BcKind::periodic};
  p.reference = analytic_1d(
      p, [](double x, double, double, double* q) { isothermal_sine_state(x, 0.0, q); },
      false);
  if (perturbed) {
    const double eta = r.eta;
    p.initial = analytic_1d(
        p,
        [eta](double x, double, double, double* q) {
          isothermal_sine_state(x, eta, q);
        },
        false);
    p.error_against = ErrorAgainst::none;
  } else {
    p.initial = p.reference;
    p.error_against = ErrorAgainst::initial_averages;
  }
  return p;
}

Problem build_hydrostatic_riemann(const Resolved& r) {
  Problem p(System::euler1d(Eos::ideal(kGamma), linear_potential_1d(-10.0)));
  p.grid1 = std::make_shared<Grid1D>(
      build_grid_1d(0.0, 0.25, r.nx, ghost_layers_for_order(r.order, false)));
  const BcKind ex = extrapolation_for_order(r.order);
  p.bc1 = {ex, ex};
  p.reference = analytic_1d(
      p,
      [](double x, double, double, double* q) {
        const double rho = std::exp(10.0 * x);
        q[0] = rho;
        q[1] = 0.0;
        q[2] = rho / (kGamma - 1.0) + rho * (-10.0 * x);
      },
      false);
  p.initial = analytic_1d(
      p,
      [](double x, double, double, double* q) {
        double rho, pr;
        if (x < 0.125) {
          rho = std::exp(5.0 * x);
          pr = 2.0 * rho;
        } else {
          rho = std::exp(10.0 * x);
          pr = rho;
        }
        q[0] = rho;
        q[1] = 0.0;
        q[2] = pr / (kGamma - 1.0) + rho * (-10.0 * x);
      },
      false);
  p.error_against = ErrorAgainst::none;
  return p;
}

Problem build_radiative_hydrostatic(const Resolved& r) {
  Problem p(System::euler2d(Eos::ideal_radiation(kGamma), diagonal_potential()));
  p.grid2 = std::make_shared<Grid2D>(build_cartesian_2d(
      0.0, 1.0, 0.0, 1.0, r.nx, r.ny, ghost_layers_for_order(r.order, true)));
  // The tabulated profile extends past the domain, so ghost cells can be
  // filled with reference data; extrapolated ghosts would perturb the
  // hydrostatic balance at the boundary.
  p.bc2 = BoundarySpec2D::all(BcKind::dirichlet_ref);
  auto profile =
      std::make_shared<const TabulatedProfile1D>(radiative_hydrostatic_profile());
  p.reference =
      std::shared_ptr<ReferenceSolution>(reference_from_table(
          p.sys, profile, ProfileGeometry::angled(kPi / 4.0), *p.grid2, r.order));
  p.initial = p.reference;
  p.error_against = ErrorAgainst::initial_averages;
  return p;
}

Problem build_double_gresho(const Resolved& r) {
  Problem p(System::euler2d(Eos::ideal(kGamma)));
  p.grid2 = std::make_shared<Grid2D>(build_cartesian_2d(
      0.0, 1.0, 0.0, 2.0, r.nx, r.ny, ghost_layers_for_order(r.order, true)));
  p.bc2 = BoundarySpec2D::all(BcKind::periodic);
  p.reference = analytic_2d(
      p,
      [](double x, double y, double t, double* q) {
        gresho_state(x, y, t, false, q);
      },
      true);
  p.initial = analytic_2d(
      p,
      [](double x, double y, double t, double* q) {
        gresho_state(x, y, t, true, q);
      },
      true);
  p.error_against = ErrorAgainst::exact_at_end;
  return p;
}

Problem build_euler_wave(const Resolved& r, bool perturbed) {
  Problem p(System::euler2d(Eos::ideal(kGamma), diagonal_potential()));
  const int ng = ghost_layers_for_order(r.order, true);
  if (r.grid == "polar") {
    p.grid2 = std::make_shared<Grid2D>(
        build_polar_2d(1.0, 2.0, r.nx, r.ny, ng, 0.0, kPi / 2.0));
    p.bc2 = BoundarySpec2D::all(extrapolation_for_order(r.order));
  } else {
    p.grid2 = std::make_shared<Grid2D>(
        build_cartesian_2d(0.0, 1.0, 0.0, 1.0, r.nx, r.ny, ng));
    p.bc2 = BoundarySpec2D::all(BcKind::dirichlet_ref);
  }
  p.reference = analytic_2d(
      p,
      [](double x, double y, double t, double* q) {
        euler_wave_state(x, y, t, 0.0, q);
      },
      true);
  if (perturbed) {
    const double eta = r.eta;
    p.initial = analytic_2d(
        p,
        [eta](double x, double y, double, double* q) {
          euler_wave_state(x, y, 0.0, eta, q);
        },
        false);
    p.error_against = ErrorAgainst::none;
  } else {
    p.initial = p.reference;
    p.error_against = ErrorAgainst::exact_at_end;
  }
  return p;
}

Problem build_keplerian(const Resolved& r, const CaseOptions& o) {
  Problem p(System::euler2d(Eos::ideal(kGamma), point_mass_potential()));
  const int ng = ghost_layers_for_order(r.order, true);
  if (r.grid == "polar") {
    p.grid2 = std::make_shared<Grid2D>(build_polar_2d(1.0, 2.0, r.nx, r.ny, ng));
    p.bc2 = {BcKind::dirichlet_ref, BcKind::dirichlet_ref, BcKind::periodic,
             BcKind::periodic};
  } else {
    // The default resolution of the masked Cartesian variant matches the
    // polar cell size: 128^2 over [-2,2]^2.
    int nx = o.nx.value_or(128);
    int ny = o.ny.value_or(o.nx.value_or(128));
    if (nx % 2 != 0 || ny % 2 != 0)
      throw ConstructionError(
          "keplerian_disk on the Cartesian grid needs even cell counts (a "
          "cell center would hit the potential singularity)");
    p.grid2 = std::make_shared<Grid2D>(
        build_cartesian_2d(-2.0, 2.0, -2.0, 2.0, nx, ny, ng));
    p.bc2 = BoundarySpec2D::all(BcKind::dirichlet_ref);
    p.frozen.assign(static_cast<std::size_t>(nx) * ny, 0);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (std::hypot(p.grid2->center_x(i, j), p.grid2->center_y(i, j)) < 1.0)
          p.frozen[static_cast<std::size_t>(j) * nx + i] = 1;
  }
  p.reference = analytic_2d(
      p,
      [](double x, double y, double, double* q) {
        keplerian_state(x, y, false, q);
      },
      false);
  p.initial = analytic_2d(
      p,
      [](double x, double y, double, double* q) {
        keplerian_state(x, y, true, q);
      },
      false);
  p.error_against = ErrorAgainst::none;
  return p;
}

Problem build_mhd_vortex(const Resolved& r, int which) {
  Problem p(System::mhd2d(Eos::ideal(kGamma)));
  const int ng = std::max(ghost_layers_for_order(r.order, true),
                          which == 2 ? 2 : 0);
  p.grid2 = std::make_shared<Grid2D>(
      build_cartesian_2d(-5.0, 5.0, -5.0, 5.0, r.nx, r.ny, ng));
  switch (which) {
  case 0: // stationary vortex, reference equals the initial data
    p.bc2 = BoundarySpec2D::all(BcKind::periodic);
    p.reference = analytic_2d(p, mhd_vortex_fn(0.1, 0.1, 0.0, 0.0), false);
    p.initial = p.reference;
    p.error_against = ErrorAgainst::initial_averages;
    break;
  case 1: // reference drifts away from the (stationary) solution
    p.bc2 = BoundarySpec2D::all(BcKind::periodic);
    p.reference = analytic_2d(p, mhd_vortex_fn(0.1, 0.1, 1.0, 1.0), true);
    p.initial = analytic_2d(p, mhd_vortex_fn(0.1, 0.1, 0.0, 0.0), false);
    p.error_against = ErrorAgainst::initial_averages;
    break;
  default: { // advected vortex, reference from a stored snapshot series
    p.bc2 = BoundarySpec2D::all(extrapolation_for_order(r.order));
    p.initial = analytic_2d(p, mhd_vortex_fn(0.1, 0.1, 0.1, 0.1), true);
    p.error_against = ErrorAgainst::exact_at_end;
    if (!r.snapshot_index.empty()) {
      auto snaps = load_snapshot_series(r.snapshot_index);
      const Grid2D fine = build_cartesian_2d(-5.0, 5.0, -5.0, 5.0,
                                             snaps.front().nx,
                                             snaps.front().ny, 2);
      p.reference = std::make_shared<SnapshotReference>(
          p.sys, *p.grid2, fine, std::move(snaps), 3,
          BoundarySpec2D::all(BcKind::extrapolate_parabolic));
    } else if (r.wb) {
      throw ConstructionError(
          "mhd_vortex_numref in well-balanced mode needs a snapshot series "
          "(run the standard method with snapshot saving first)");
    }
    break;
  }
  }
  return p;
}

} // namespace

TabulatedProfile1D radiative_hydrostatic_profile(int samples, double s_lo,
                                                 double s_hi) {
  if (samples < 4)
    throw ConstructionError("profile needs at least 4 samples");
  if (!(s_lo < 0.0 && s_hi > 0.0))
    throw ConstructionError("profile range must bracket the anchor s = 0");

  const double root2 = std::sqrt(2.0);
  auto temperature = [root2](double s) { return 1.0 - 0.1 * root2 * s; };
  auto density = [&](double s, double pr) {
    const double T = temperature(s);
    const double T4 = T * T * T * T;
    return (pr - T4) / T;
  };
  auto dpds = [&](double s, double pr) { return -root2 * density(s, pr); };
  const double tol = 1e-12;

  std::vector<double> s(samples), pres(samples);
  for (int k = 0; k < samples; ++k)
    s[k] = s_lo + (s_hi - s_lo) * k / (samples - 1);

  int k0 = 0;
  while (k0 < samples && s[k0] < 0.0) ++k0;
  {
    double sc = 0.0, pc = 2.0; // rho = T = 1 at the anchor gives p = 2
    for (int k = k0; k < samples; ++k) {
      advance_ode(dpds, sc, pc, s[k], tol);
      pres[k] = pc;
    }
  }
  {
    double sc = 0.0, pc = 2.0;
    for (int k = k0 - 1; k >= 0; --k) {
      advance_ode(dpds, sc, pc, s[k], tol);
      pres[k] = pc;
    }
  }

  std::vector<std::vector<double>> vars(3, std::vector<double>(samples));
  for (int k = 0; k < samples; ++k) {
    const double T = temperature(s[k]);
    const double rho = density(s[k], pres[k]);
    if (!(T > 0.0) || !(rho > 0.0))
      throw ConstructionError("hydrostatic profile leaves the physical "
                              "regime inside the requested range");
    const double T4 = T * T * T * T;
    const double eps = T / (kGamma - 1.0) + 3.0 * T4 / rho;
    vars[0][k] = rho;
    vars[1][k] = 0.0;
    vars[2][k] = rho * eps + rho * (root2 * s[k]);
  }
  return TabulatedProfile1D(std::move(s), std::move(vars),
                            {"rho", "mom", "ener"});
}

const std::vector<CaseInfo>& case_registry() {
  static const std::vector<CaseInfo> reg = {
      {.id = "isothermal_1d",
       .summary = "1-D isothermal hydrostatic atmosphere in a sine potential",
       .two_dimensional = false,
       .default_nx = 128,
       .default_ny = 0,
       .default_t_end = 2.0,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {},
       .needs_snapshots = false},
      {.id = "isothermal_1d_perturbed",
       .summary = "pressure pulse on the 1-D isothermal atmosphere",
       .two_dimensional = false,
       .default_nx = 256,
       .default_ny = 0,
       .default_t_end = 0.2,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = true,
       .default_eta = 0.1,
       .grids = {},
       .needs_snapshots = false},
      {.id = "hydrostatic_riemann",
       .summary = "Riemann problem on a piecewise isothermal atmosphere",
       .two_dimensional = false,
       .default_nx = 128,
       .default_ny = 0,
       .default_t_end = 0.02,
       .default_order = 3,
       .default_flux = FluxKind::roe,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {},
       .needs_snapshots = false},
      {.id = "radiative_hydrostatic_2d",
       .summary = "tabulated hydrostatic column, gas plus radiation pressure",
       .two_dimensional = true,
       .default_nx = 64,
       .default_ny = 64,
       .default_t_end = 2.0,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian"},
       .needs_snapshots = false},
      {.id = "double_gresho",
       .summary = "advected Gresho vortex pair, one vortex in the reference",
       .two_dimensional = true,
       .default_nx = 64,
       .default_ny = 128,
       .default_t_end = 5.0,
       .default_order = 2,
       .default_flux = FluxKind::roe,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian"},
       .needs_snapshots = false},
      {.id = "euler_wave_2d",
       .summary = "traveling Euler wave in a diagonal potential",
       .two_dimensional = true,
       .default_nx = 64,
       .default_ny = 64,
       .default_t_end = 0.1,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian", "polar"},
       .needs_snapshots = false},
      {.id = "euler_wave_2d_perturbed",
       .summary = "pressure pulse on the traveling Euler wave",
       .two_dimensional = true,
       .default_nx = 64,
       .default_ny = 64,
       .default_t_end = 0.1,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = true,
       .default_eta = 0.1,
       .grids = {"cartesian"},
       .needs_snapshots = false},
      {.id = "keplerian_disk",
       .summary = "advected density spot on a Keplerian disk",
       .two_dimensional = true,
       .default_nx = 32,
       .default_ny = 256,
       .default_t_end = 2.5,
       .default_order = 2,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"polar", "cartesian"},
       .needs_snapshots = false},
      {.id = "mhd_vortex_stationary",
       .summary = "stationary MHD vortex held for ten turnover times",
       .two_dimensional = true,
       .default_nx = 32,
       .default_ny = 32,
       .default_t_end = 10.0 * mhd_turnover_time(0.1),
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian"},
       .needs_snapshots = false},
      {.id = "mhd_vortex_moving_reference",
       .summary = "stationary MHD vortex with a drifting reference",
       .two_dimensional = true,
       .default_nx = 128,
       .default_ny = 128,
       .default_t_end = 0.2,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian"},
       .needs_snapshots = false},
      {.id = "mhd_vortex_numref",
       .summary = "advected MHD vortex against a stored snapshot series",
       .two_dimensional = true,
       .default_nx = 128,
       .default_ny = 128,
       .default_t_end = 5.0,
       .default_order = 3,
       .default_flux = FluxKind::llf,
       .has_eta = false,
       .default_eta = 0.0,
       .grids = {"cartesian"},
       .needs_snapshots = true},
  };
  return reg;
}

const CaseInfo& case_info(const std::string& id) {
  for (const CaseInfo& c : case_registry())
    if (c.id == id) return c;
  std::string known;
  for (const CaseInfo& c : case_registry()) {
    if (!known.empty()) known += ", ";
    known += c.id;
  }
  throw ConstructionError("unknown case '" + id + "' (known: " + known + ")");
}

Problem build_case(const std::string& id, const CaseOptions& opt) {
  const CaseInfo& info = case_info(id);
  const Resolved r = resolve(info, opt);

  Problem p = [&]() -> Problem {
    if (id == "isothermal_1d") return build_isothermal(r, false);
    if (id == "isothermal_1d_perturbed") return build_isothermal(r, true);
    if (id == "hydrostatic_riemann") return build_hydrostatic_riemann(r);
    if (id == "radiative_hydrostatic_2d") return build_radiative_hydrostatic(r);
    if (id == "double_gresho") return build_double_gresho(r);
    if (id == "euler_wave_2d") return build_euler_wave(r, false);
    if (id == "euler_wave_2d_perturbed") return build_euler_wave(r, true);
    if (id == "keplerian_disk") return build_keplerian(r, opt);
    if (id == "mhd_vortex_stationary") return build_mhd_vortex(r, 0);
    if (id == "mhd_vortex_moving_reference") return build_mhd_vortex(r, 1);
    return build_mhd_vortex(r, 2); // mhd_vortex_numref
  }();

  p.case_id = id;
  p.two_dimensional = info.two_dimensional;
  p.t_end = r.t_end;
  apply_scheme(p, r);

  if (p.scheme.flux == FluxKind::roe &&
      (p.sys.kind == SystemKind::mhd2d ||
       p.sys.eos.kind() != Eos::Kind::ideal))
    throw ConstructionError("case " + id +
                            ": the roe flux needs the ideal-gas Euler system");
  return p;
}

double disk_distance_metric(const Problem& p, const std::vector<double>& avgs) {
  if (!p.two_dimensional)
    throw ConstructionError("disk metric needs a 2-D problem");
  const Grid2D& g = *p.grid2;
  const int nv = p.nvars();
  if (avgs.size() != static_cast<std::size_t>(g.nx) * g.ny * nv)
    throw ConstructionError("disk metric: averages do not match the grid");
  double acc = 0.0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * g.nx + i;
      if (!p.frozen.empty() && p.frozen[c]) continue;
      const double rho = avgs[c * nv];
      const double r = std::hypot(g.center_x(i, j), g.center_y(i, j));
      acc += g.volume(i, j) * std::abs(rho - 1.0) * r;
    }
  return acc;
}

double gresho_disk_velocity_error(const Problem& p,
                                  const std::vector<double>& avgs, double t) {
  if (p.case_id != "double_gresho")
    throw ConstructionError("the disk velocity error applies to double_gresho");
  const Grid2D& g = *p.grid2;
  const int nv = p.nvars();
  if (avgs.size() != static_cast<std::size_t>(g.nx) * g.ny * nv)
    throw ConstructionError("disk velocity error: averages do not match the grid");
  const double cx = wrap(0.5 + kGreshoU0 * t, 1.0);
  const double cy = wrap(0.5 + kGreshoV0 * t, 2.0);
  double acc = 0.0;
  double qe[4];
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.center_x(i, j);
      const double y = g.center_y(i, j);
      if (std::hypot(wrap_delta(x - cx, 1.0), wrap_delta(y - cy, 2.0)) >= 0.4)
        continue;
      p.initial->cell_average(i, j, t, qe);
      const double* q = avgs.data() + (static_cast<std::size_t>(j) * g.nx + i) * nv;
      const double wn =
          std::hypot(q[1] / q[0] - kGreshoU0, q[2] / q[0] - kGreshoV0);
      const double we =
          std::hypot(qe[1] / qe[0] - kGreshoU0, qe[2] / qe[0] - kGreshoV0);
      acc += g.volume(i, j) * std::abs(wn - we);
    }
  return acc;
}

} // namespace wbfv
