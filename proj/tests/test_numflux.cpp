#include <cmath>
#include <limits>
#include <random>

#include "doctest.h"
#include "wbfv/errors.hpp"
#include "wbfv/numflux.hpp"

#if WBFV_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace wbfv;

namespace {

bool within_ulps(double a, double b, int n) {
  if (a == b) return true;
  double lo = a, hi = a;
  for (int k = 0; k < n; ++k) {
    lo = std::nextafter(lo, -std::numeric_limits<double>::infinity());
    hi = std::nextafter(hi, std::numeric_limits<double>::infinity());
  }
  return b >= lo && b <= hi;
}

struct RandomStates {
  std::mt19937 rng{2024};
  std::uniform_real_distribution<double> rho{0.2, 3.0};
  std::uniform_real_distribution<double> vel{-2.0, 2.0};
  std::uniform_real_distribution<double> prs{0.2, 5.0};
  std::uniform_real_distribution<double> mag{-1.5, 1.5};
  std::uniform_real_distribution<double> ang{0.0, 6.283185307179586};

  void make(const System& sys, double phi, double* q) {
    double prim[6];
    prim[0] = rho(rng);
    switch (sys.kind) {
    case SystemKind::euler1d:
      prim[1] = vel(rng);
      prim[2] = prs(rng);
      break;
    case SystemKind::euler2d:
      prim[1] = vel(rng);
      prim[2] = vel(rng);
      prim[3] = prs(rng);
      break;
    case SystemKind::mhd2d:
      prim[1] = vel(rng);
      prim[2] = vel(rng);
      prim[3] = mag(rng);
      prim[4] = mag(rng);
      prim[5] = prs(rng);
      break;
    }
    sys.prim_to_cons(prim, phi, q);
  }
};

} // namespace

TEST_CASE("local Lax-Friedrichs on the Sod states") {
  const System sys = System::euler1d(Eos::ideal(1.4));
  const double qL[3] = {1.0, 0.0, 2.5};
  const double qR[3] = {0.125, 0.0, 0.25};
  double f[3];
  numerical_flux(sys, FluxKind::llf, qL, qR, 0.0, 1.0, 0.0, f);

  // dissipation speed is the left sound speed sqrt(1.4); the central part
  // contributes only to momentum
  const double a = std::sqrt(1.4);
  CHECK(f[0] == doctest::Approx(0.5 * a * 0.875).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(0.55).epsilon(1e-14));
  CHECK(f[2] == doctest::Approx(0.5 * a * 2.25).epsilon(1e-14));
  // five-digit reference values
  CHECK(f[0] == doctest::Approx(0.51766).epsilon(2e-5));
  CHECK(f[1] == doctest::Approx(0.55).epsilon(2e-5));
  CHECK(f[2] == doctest::Approx(1.33112).epsilon(2e-5));
}

TEST_CASE("numerical fluxes are consistent on 1000 random states") {
  RandomStates gen;
  const System systems[] = {
      System::euler1d(Eos::ideal(1.4)),
      System::euler2d(Eos::ideal(5.0 / 3.0)),
      System::euler2d(Eos::ideal_radiation(1.4)),
      System::mhd2d(Eos::ideal(1.4)),
  };
  std::uniform_real_distribution<double> phid(-2.0, 2.0);
  int checked = 0;
  for (const System& sys : systems) {
    const int nv = sys.nvars();
    for (int k = 0; k < 250; ++k) {
      double q[6], fexact[6], fnum[6];
      const double phi =
          (sys.kind == SystemKind::mhd2d) ? 0.0 : phid(gen.rng);
      gen.make(sys, phi, q);
      double nx = 1.0, ny = 0.0;
      if (sys.two_dimensional()) {
        const double th = gen.ang(gen.rng);
        nx = std::cos(th);
        ny = std::sin(th);
      }
      sys.flux(q, phi, nx, ny, fexact);
      numerical_flux(sys, FluxKind::llf, q, q, phi, nx, ny, fnum);
      for (int v = 0; v < nv; ++v) CHECK(within_ulps(fexact[v], fnum[v], 4));
      if (sys.kind != SystemKind::mhd2d &&
          sys.eos.kind() == Eos::Kind::ideal) {
        numerical_flux(sys, FluxKind::roe, q, q, phi, nx, ny, fnum);
        for (int v = 0; v < nv; ++v) CHECK(within_ulps(fexact[v], fnum[v], 4));
      }
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("local Lax-Friedrichs antisymmetry is bitwise") {
  RandomStates gen;
  const System sys = System::euler2d(Eos::ideal(1.4));
  for (int k = 0; k < 50; ++k) {
    double qL[4], qR[4], f1[4], f2[4];
    gen.make(sys, 0.5, qL);
    gen.make(sys, 0.5, qR);
    const double th = gen.ang(gen.rng);
    const double nx = std::cos(th), ny = std::sin(th);
    numerical_flux(sys, FluxKind::llf, qL, qR, 0.5, nx, ny, f1);
    numerical_flux(sys, FluxKind::llf, qR, qL, 0.5, -nx, -ny, f2);
    for (int v = 0; v < 4; ++v) CHECK(f1[v] == -f2[v]);
  }
}

TEST_CASE("Roe flux upwinds supersonic streams exactly") {
  const System sys = System::euler1d(Eos::ideal(1.4));
  // both states move right at Mach >> 1
  const double primL[3] = {1.0, 10.0, 1.0};
  const double primR[3] = {0.7, 9.0, 0.8};
  double qL[3], qR[3], f[3], fL[3];
  sys.prim_to_cons(primL, 0.0, qL);
  sys.prim_to_cons(primR, 0.0, qR);
  numerical_flux(sys, FluxKind::roe, qL, qR, 0.0, 1.0, 0.0, f);
  sys.flux(qL, 0.0, 1.0, 0.0, fL);
  for (int v = 0; v < 3; ++v)
    CHECK(f[v] == doctest::Approx(fL[v]).epsilon(1e-12));

  // mirrored: supersonic to the left picks the right flux
  const double primL2[3] = {1.0, -10.0, 1.0};
  const double primR2[3] = {0.7, -9.0, 0.8};
  double fR[3];
  sys.prim_to_cons(primL2, 0.0, qL);
  sys.prim_to_cons(primR2, 0.0, qR);
  numerical_flux(sys, FluxKind::roe, qL, qR, 0.0, 1.0, 0.0, f);
  sys.flux(qR, 0.0, 1.0, 0.0, fR);
  for (int v = 0; v < 3; ++v)
    CHECK(f[v] == doctest::Approx(fR[v]).epsilon(1e-12));
}

TEST_CASE("Roe flux rejects unsupported configurations") {
  double q[6] = {1.0, 0.0, 0.0, 0.0, 0.0, 2.5};
  double f[6];
  const System rad = System::euler2d(Eos::ideal_radiation(1.4));
  CHECK_THROWS_AS(
      numerical_flux(rad, FluxKind::roe, q, q, 0.0, 1.0, 0.0, f),
      ConstructionError);
  const System mhd = System::mhd2d(Eos::ideal(1.4));
  q[5] = 3.0;
  CHECK_THROWS_AS(
      numerical_flux(mhd, FluxKind::roe, q, q, 0.0, 1.0, 0.0, f),
      ConstructionError);
}

#if WBFV_HAVE_EIGEN

namespace {

// Independent Roe flux: assemble the Euler flux Jacobian at the
// root-density-weighted average state, take |A| = R |Lambda| R^-1 by a
// numeric eigendecomposition, and form the classic Roe formula. Rotation
// handles general normals.
void oracle_roe(const System& sys, const double* qL, const double* qR,
                double nx, double ny, double* out) {
  const bool oneD = (sys.kind == SystemKind::euler1d);
  const double gamma = sys.eos.gamma();

  auto load = [&](const double* q, double& rho, double& un, double& ut,
                  double& E) {
    rho = q[0];
    const double mx = q[1], my = oneD ? 0.0 : q[2];
    un = (mx * nx + my * ny) / rho;
    ut = (-mx * ny + my * nx) / rho;
    E = oneD ? q[2] : q[3];
  };
  double rhoL, unL, utL, EL, rhoR, unR, utR, ER;
  load(qL, rhoL, unL, utL, EL);
  load(qR, rhoR, unR, utR, ER);
  const double pL = (gamma - 1.0) * (EL - 0.5 * rhoL * (unL * unL + utL * utL));
  const double pR = (gamma - 1.0) * (ER - 0.5 * rhoR * (unR * unR + utR * utR));
  const double HL = (EL + pL) / rhoL, HR = (ER + pR) / rhoR;

  const double sL = std::sqrt(rhoL), sR = std::sqrt(rhoR);
  const double u = (sL * unL + sR * unR) / (sL + sR);
  const double v = (sL * utL + sR * utR) / (sL + sR);
  const double H = (sL * HL + sR * HR) / (sL + sR);

  // x-direction Jacobian at the averaged (rho, u, v, H) state, rotated frame
  Eigen::Matrix4d A;
  const double g1 = gamma - 1.0;
  const double V2 = u * u + v * v;
  A << 0, 1, 0, 0,                                      //
      0.5 * g1 * V2 - u * u, (3.0 - gamma) * u, -g1 * v, g1, //
      -u * v, v, u, 0,                                  //
      u * (0.5 * g1 * V2 - H), H - g1 * u * u, -g1 * u * v, gamma * u;

  Eigen::EigenSolver<Eigen::Matrix4d> es(A);
  const Eigen::Matrix4cd R = es.eigenvectors();
  const Eigen::Vector4cd lam = es.eigenvalues();
  Eigen::Matrix4cd absL = Eigen::Matrix4cd::Zero();
  for (int k = 0; k < 4; ++k) absL(k, k) = std::abs(lam(k).real());
  const Eigen::Matrix4d absA = (R * absL * R.inverse()).real();

  Eigen::Vector4d dU;
  dU << rhoR - rhoL, rhoR * unR - rhoL * unL, rhoR * utR - rhoL * utL, ER - EL;
  const Eigen::Vector4d D = absA * dU;

  // rotated exact fluxes
  auto fluxr = [&](double rho, double un, double ut, double E, double p,
                   Eigen::Vector4d& F) {
    F << rho * un, rho * un * un + p, rho * un * ut, (E + p) * un;
  };
  Eigen::Vector4d FL, FR;
  fluxr(rhoL, unL, utL, EL, pL, FL);
  fluxr(rhoR, unR, utR, ER, pR, FR);
  const Eigen::Vector4d Fr = 0.5 * (FL + FR) - 0.5 * D;

  // rotate momentum back
  out[0] = Fr(0);
  if (oneD) {
    out[1] = Fr(1) * nx;
    out[2] = Fr(3);
  } else {
    out[1] = Fr(1) * nx - Fr(2) * ny;
    out[2] = Fr(1) * ny + Fr(2) * nx;
    out[3] = Fr(3);
  }
}

} // namespace

TEST_CASE("Roe flux matches an independent eigendecomposition oracle") {
  RandomStates gen;

  SUBCASE("Sod states") {
    const System sys = System::euler1d(Eos::ideal(1.4));
    const double qL[3] = {1.0, 0.0, 2.5};
    const double qR[3] = {0.125, 0.0, 0.25};
    double f[3], g[3];
    numerical_flux(sys, FluxKind::roe, qL, qR, 0.0, 1.0, 0.0, f);
    oracle_roe(sys, qL, qR, 1.0, 0.0, g);
    for (int v = 0; v < 3; ++v)
      CHECK(f[v] == doctest::Approx(g[v]).epsilon(1e-12));
  }

  SUBCASE("random 1-D states") {
    const System sys = System::euler1d(Eos::ideal(1.4));
    for (int k = 0; k < 100; ++k) {
      double qL[3], qR[3], f[3], g[3];
      gen.make(sys, 0.0, qL);
      gen.make(sys, 0.0, qR);
      try {
        numerical_flux(sys, FluxKind::roe, qL, qR, 0.0, 1.0, 0.0, f);
      } catch (const StateError&) {
        continue; // imaginary averaged sound speed: oracle undefined too
      }
      oracle_roe(sys, qL, qR, 1.0, 0.0, g);
      for (int v = 0; v < 3; ++v) {
        const double scale = std::max({1.0, std::abs(f[v]), std::abs(g[v])});
        CHECK(std::abs(f[v] - g[v]) <= 1e-9 * scale);
      }
    }
  }

  SUBCASE("random 2-D states and normals") {
    const System sys = System::euler2d(Eos::ideal(1.4));
    for (int k = 0; k < 100; ++k) {
      double qL[4], qR[4], f[4], g[4];
      gen.make(sys, 0.0, qL);
      gen.make(sys, 0.0, qR);
      const double th = gen.ang(gen.rng);
      const double nx = std::cos(th), ny = std::sin(th);
      try {
        numerical_flux(sys, FluxKind::roe, qL, qR, 0.0, nx, ny, f);
      } catch (const StateError&) {
        continue;
      }
      oracle_roe(sys, qL, qR, nx, ny, g);
      for (int v = 0; v < 4; ++v) {
        const double scale = std::max({1.0, std::abs(f[v]), std::abs(g[v])});
        CHECK(std::abs(f[v] - g[v]) <= 1e-9 * scale);
      }
    }
  }
}

#endif // WBFV_HAVE_EIGEN
