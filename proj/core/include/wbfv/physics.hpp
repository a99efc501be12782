#pragma once

#include <functional>

#include "wbfv/eos.hpp"
#include "wbfv/errors.hpp"

namespace wbfv {

// Static gravitational potential phi(x, y). Evaluated only while setting up
// per-grid tables (cell centers, quadrature points), never in inner loops.
struct GravityField {
  bool present = false;
  std::function<double(double, double)> phi;
  std::function<void(double, double, double&, double&)> grad;

  static GravityField none() { return {}; }
  static GravityField make(std::function<double(double, double)> phi,
                           std::function<void(double, double, double&, double&)> grad) {
    GravityField g;
    g.present = true;
    g.phi = std::move(phi);
    g.grad = std::move(grad);
    return g;
  }
  double at(double x, double y) const { return present ? phi(x, y) : 0.0; }
};

enum class SystemKind { euler1d, euler2d, mhd2d };

// Conservative variable layouts:
//   euler1d: (rho, rho u, E)            E = rho eps + rho u^2/2 + rho phi
//   euler2d: (rho, rho u, rho v, E)     E = rho eps + rho |v|^2/2 + rho phi
//   mhd2d:   (rho, rho u, rho v, Bx, By, E)
//            E = rho eps + rho |v|^2/2 + |B|^2/2      (no gravity for MHD)
//
// The total energy of the Euler systems includes the gravitational potential
// energy, so pressure recovery needs phi at the evaluation point and the
// gravity source term acts on momentum only.
struct System {
  SystemKind kind;
  Eos eos;
  GravityField gravity;

  static System euler1d(Eos eos, GravityField g = GravityField::none()) {
    return {SystemKind::euler1d, eos, std::move(g)};
  }
  static System euler2d(Eos eos, GravityField g = GravityField::none()) {
    return {SystemKind::euler2d, eos, std::move(g)};
  }
  static System mhd2d(Eos eos) {
    return {SystemKind::mhd2d, eos, GravityField::none()};
  }

  int nvars() const {
    switch (kind) {
    case SystemKind::euler1d: return 3;
    case SystemKind::euler2d: return 4;
    case SystemKind::mhd2d: return 6;
    }
    return 0;
  }
  bool two_dimensional() const { return kind != SystemKind::euler1d; }

  // Exact flux in direction n = (nx, ny), |n| = 1 (1-D systems use nx = +-1,
  // ny = 0). phi_pt is the gravitational potential at the evaluation point.
  void flux(const double* q, double phi_pt, double nx, double ny,
            double* out) const;

  // Largest signal speed |v.n| + c (fast magnetosonic speed for MHD).
  double max_signal_speed(const double* q, double phi_pt, double nx,
                          double ny) const;

  // Gas pressure of a conservative state.
  double pressure(const double* q, double phi_pt) const;

  void cons_to_prim(const double* q, double phi_pt, double* prim) const;
  void prim_to_cons(const double* prim, double phi_pt, double* q) const;

  // Throws StateError naming `where` if the state has non-positive density
  // or pressure or is not finite.
  void validate(const double* q, double phi_pt, const char* where) const;
};

// Pointwise gravity source s(q) = (0, -rho d(phi)/dx, [-rho d(phi)/dy,] 0):
// momentum components only; the energy source vanishes because E includes
// the potential energy. Linear in q.
void gravity_source(const System& sys, const double* q, double gx, double gy,
                    double* out);

} // namespace wbfv
