#include "wbfv/physics.hpp"

#include <cmath>
#include <string>

namespace wbfv {

double System::pressure(const double* q, double phi_pt) const {
  switch (kind) {
  case SystemKind::euler1d: {
    const double rho = q[0];
    const double eint = q[2] - 0.5 * q[1] * q[1] / rho - rho * phi_pt;
    return eos.pressure(rho, eint / rho);
  }
  case SystemKind::euler2d: {
    const double rho = q[0];
    const double eint =
        q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / rho - rho * phi_pt;
    return eos.pressure(rho, eint / rho);
  }
  case SystemKind::mhd2d: {
    const double rho = q[0];
    const double eint = q[5] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / rho -
                        0.5 * (q[3] * q[3] + q[4] * q[4]);
    return eos.pressure(rho, eint / rho);
  }
  }
  return 0.0;
}

void System::flux(const double* q, double phi_pt, double nx, double ny,
                  double* out) const {
  switch (kind) {
  case SystemKind::euler1d: {
    const double rho = q[0], m = q[1], E = q[2];
    const double u = m / rho;
    const double p = pressure(q, phi_pt);
    out[0] = m * nx;
    out[1] = (m * u + p) * nx;
    out[2] = (E + p) * u * nx;
    return;
  }
  case SystemKind::euler2d: {
    const double rho = q[0], mx = q[1], my = q[2], E = q[3];
    const double u = mx / rho, v = my / rho;
    const double p = pressure(q, phi_pt);
    const double un = u * nx + v * ny;
    out[0] = rho * un;
    out[1] = mx * un + p * nx;
    out[2] = my * un + p * ny;
    out[3] = (E + p) * un;
    return;
  }
  case SystemKind::mhd2d: {
    const double rho = q[0], mx = q[1], my = q[2];
    const double Bx = q[3], By = q[4], E = q[5];
    const double u = mx / rho, v = my / rho;
    const double p = pressure(q, 0.0);
    const double ptot = p + 0.5 * (Bx * Bx + By * By);
    const double un = u * nx + v * ny;
    const double Bn = Bx * nx + By * ny;
    const double vB = u * Bx + v * By;
    out[0] = rho * un;
    out[1] = mx * un + ptot * nx - Bx * Bn;
    out[2] = my * un + ptot * ny - By * Bn;
    out[3] = Bx * un - u * Bn;
    out[4] = By * un - v * Bn;
    out[5] = (E + ptot) * un - Bn * vB;
    return;
  }
  }
}

double System::max_signal_speed(const double* q, double phi_pt, double nx,
                                double ny) const {
  const double rho = q[0];
  if (!(rho > 0.0))
    throw StateError("max_signal_speed: non-positive density");
  switch (kind) {
  case SystemKind::euler1d: {
    const double u = q[1] / rho;
    const double p = pressure(q, phi_pt);
    return std::abs(u * nx) + eos.sound_speed(rho, p);
  }
  case SystemKind::euler2d: {
    const double un = (q[1] * nx + q[2] * ny) / rho;
    const double p = pressure(q, phi_pt);
    return std::abs(un) + eos.sound_speed(rho, p);
  }
  case SystemKind::mhd2d: {
    const double un = (q[1] * nx + q[2] * ny) / rho;
    const double p = pressure(q, 0.0);
    const double a2 = eos.gamma() * p / rho;
    const double b2 = (q[3] * q[3] + q[4] * q[4]) / rho;
    const double Bn = q[3] * nx + q[4] * ny;
    const double bn2 = Bn * Bn / rho;
    const double s = a2 + b2;
    const double disc = std::sqrt(std::max(s * s - 4.0 * a2 * bn2, 0.0));
    const double cf = std::sqrt(0.5 * (s + disc));
    return std::abs(un) + cf;
  }
  }
  return 0.0;
}

void System::cons_to_prim(const double* q, double phi_pt, double* prim) const {
  const double rho = q[0];
  if (!(rho > 0.0)) throw StateError("cons_to_prim: non-positive density");
  switch (kind) {
  case SystemKind::euler1d:
    prim[0] = rho;
    prim[1] = q[1] / rho;
    prim[2] = pressure(q, phi_pt);
    if (!(prim[2] > 0.0)) throw StateError("cons_to_prim: non-positive pressure");
    return;
  case SystemKind::euler2d:
    prim[0] = rho;
    prim[1] = q[1] / rho;
    prim[2] = q[2] / rho;
    prim[3] = pressure(q, phi_pt);
    if (!(prim[3] > 0.0)) throw StateError("cons_to_prim: non-positive pressure");
    return;
  case SystemKind::mhd2d:
    prim[0] = rho;
    prim[1] = q[1] / rho;
    prim[2] = q[2] / rho;
    prim[3] = q[3];
    prim[4] = q[4];
    prim[5] = pressure(q, 0.0);
    if (!(prim[5] > 0.0)) throw StateError("cons_to_prim: non-positive pressure");
    return;
  }
}

void System::prim_to_cons(const double* prim, double phi_pt, double* q) const {
  switch (kind) {
  case SystemKind::euler1d: {
    const double rho = prim[0], u = prim[1], p = prim[2];
    q[0] = rho;
    q[1] = rho * u;
    q[2] = rho * eos.specific_internal_energy(rho, p) + 0.5 * rho * u * u +
           rho * phi_pt;
    return;
  }
  case SystemKind::euler2d: {
    const double rho = prim[0], u = prim[1], v = prim[2], p = prim[3];
    q[0] = rho;
    q[1] = rho * u;
    q[2] = rho * v;
    q[3] = rho * eos.specific_internal_energy(rho, p) +
           0.5 * rho * (u * u + v * v) + rho * phi_pt;
    return;
  }
  case SystemKind::mhd2d: {
    const double rho = prim[0], u = prim[1], v = prim[2];
    const double Bx = prim[3], By = prim[4], p = prim[5];
    q[0] = rho;
    q[1] = rho * u;
    q[2] = rho * v;
    q[3] = Bx;
    q[4] = By;
    q[5] = rho * eos.specific_internal_energy(rho, p) +
           0.5 * rho * (u * u + v * v) + 0.5 * (Bx * Bx + By * By);
    return;
  }
  }
}

void System::validate(const double* q, double phi_pt, const char* where) const {
  const int nv = nvars();
  for (int v = 0; v < nv; ++v)
    if (!std::isfinite(q[v]))
      throw StateError(std::string("non-finite state at ") + where);
  if (!(q[0] > 0.0))
    throw StateError(std::string("non-positive density at ") + where);
  const double p = pressure(q, phi_pt);
  if (!(p > 0.0))
    throw StateError(std::string("non-positive pressure at ") + where);
}

void gravity_source(const System& sys, const double* q, double gx, double gy,
                    double* out) {
  const int nv = sys.nvars();
  for (int v = 0; v < nv; ++v) out[v] = 0.0;
  if (sys.kind == SystemKind::euler1d) {
    out[1] = -q[0] * gx;
  } else if (sys.kind == SystemKind::euler2d) {
    out[1] = -q[0] * gx;
    out[2] = -q[0] * gy;
  }
  (void)gy;
}

} // namespace wbfv
