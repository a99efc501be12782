#include "wbfv/numflux.hpp"

#include <cmath>

namespace wbfv {

namespace {

void llf_flux(const System& sys, const double* qL, const double* qR,
              double phi_pt, double nx, double ny, double* out) {
  const int nv = sys.nvars();
  double fL[6], fR[6];
  sys.flux(qL, phi_pt, nx, ny, fL);
  sys.flux(qR, phi_pt, nx, ny, fR);
  const double a = std::max(sys.max_signal_speed(qL, phi_pt, nx, ny),
                            sys.max_signal_speed(qR, phi_pt, nx, ny));
  for (int v = 0; v < nv; ++v)
    out[v] = 0.5 * (fL[v] + fR[v]) - 0.5 * a * (qR[v] - qL[v]);
}

// Roe flux for the ideal-gas Euler systems. The total energy contains the
// gravitational term rho*phi; the linearization acts on the homogeneous
// variables E' = E - rho*phi (both sides share phi_pt), and the resulting
// energy dissipation is mapped back by adding phi * (density dissipation).
void roe_flux(const System& sys, const double* qL, const double* qR,
              double phi_pt, double nx, double ny, double* out) {
  if (sys.eos.kind() != Eos::Kind::ideal)
    throw ConstructionError("roe flux requires the ideal-gas equation of state");
  if (sys.kind == SystemKind::mhd2d)
    throw ConstructionError("roe flux is implemented for Euler only");
  const bool oneD = (sys.kind == SystemKind::euler1d);
  const double gamma = sys.eos.gamma();

  const double rhoL = qL[0], rhoR = qR[0];
  if (!(rhoL > 0.0) || !(rhoR > 0.0))
    throw StateError("roe flux: non-positive density");
  const double mxL = qL[1], mxR = qR[1];
  const double myL = oneD ? 0.0 : qL[2], myR = oneD ? 0.0 : qR[2];
  const double EL = (oneD ? qL[2] : qL[3]) - rhoL * phi_pt;
  const double ER = (oneD ? qR[2] : qR[3]) - rhoR * phi_pt;

  const double uL = mxL / rhoL, vL = myL / rhoL;
  const double uR = mxR / rhoR, vR = myR / rhoR;
  const double pL = (gamma - 1.0) * (EL - 0.5 * (mxL * mxL + myL * myL) / rhoL);
  const double pR = (gamma - 1.0) * (ER - 0.5 * (mxR * mxR + myR * myR) / rhoR);
  if (!(pL > 0.0) || !(pR > 0.0))
    throw StateError("roe flux: non-positive pressure");
  const double HL = (EL + pL) / rhoL, HR = (ER + pR) / rhoR;

  const double sL = std::sqrt(rhoL), sR = std::sqrt(rhoR);
  const double w = 1.0 / (sL + sR);
  const double u = (sL * uL + sR * uR) * w;
  const double v = (sL * vL + sR * vR) * w;
  const double H = (sL * HL + sR * HR) * w;
  const double V2 = u * u + v * v;
  const double c2 = (gamma - 1.0) * (H - 0.5 * V2);
  if (!(c2 > 0.0)) throw StateError("roe flux: imaginary averaged sound speed");
  const double c = std::sqrt(c2);

  const double un = u * nx + v * ny;
  const double ut = -u * ny + v * nx;

  // jumps in the rotated homogeneous conservative variables
  const double d_rho = rhoR - rhoL;
  const double d_mn = (mxR - mxL) * nx + (myR - myL) * ny;
  const double d_mt = -(mxR - mxL) * ny + (myR - myL) * nx;
  const double d_E = ER - EL;

  // wave strengths for eigenvectors
  //   r1 = (1, un-c, ut, H - un c)   lambda = un - c
  //   r2 = (1, un,   ut, V2/2)       lambda = un
  //   r3 = (0, 0,    1,  ut)         lambda = un
  //   r4 = (1, un+c, ut, H + un c)   lambda = un + c
  const double a3 = d_mt - ut * d_rho;
  const double B = (d_mn - un * d_rho) / c;
  const double A =
      (gamma - 1.0) / c2 * (d_E - ut * a3 - 0.5 * V2 * d_rho - B * un * c);
  const double a2 = d_rho - A;
  const double a1 = 0.5 * (A - B);
  const double a4 = 0.5 * (A + B);

  const double l1 = std::abs(un - c);
  const double l2 = std::abs(un);
  const double l4 = std::abs(un + c);

  const double t1 = l1 * a1, t2 = l2 * a2, t3 = l2 * a3, t4 = l4 * a4;
  const double D_rho = t1 + t2 + t4;
  const double D_mn = t1 * (un - c) + t2 * un + t4 * (un + c);
  const double D_mt = (t1 + t2 + t4) * ut + t3;
  const double D_E = t1 * (H - un * c) + t2 * (0.5 * V2) + t4 * (H + un * c) +
                     t3 * ut + phi_pt * D_rho;

  const double D_mx = D_mn * nx - D_mt * ny;
  const double D_my = D_mn * ny + D_mt * nx;

  double fL6[6], fR6[6];
  sys.flux(qL, phi_pt, nx, ny, fL6);
  sys.flux(qR, phi_pt, nx, ny, fR6);

  if (oneD) {
    out[0] = 0.5 * (fL6[0] + fR6[0]) - 0.5 * D_rho;
    out[1] = 0.5 * (fL6[1] + fR6[1]) - 0.5 * D_mx;
    out[2] = 0.5 * (fL6[2] + fR6[2]) - 0.5 * D_E;
  } else {
    out[0] = 0.5 * (fL6[0] + fR6[0]) - 0.5 * D_rho;
    out[1] = 0.5 * (fL6[1] + fR6[1]) - 0.5 * D_mx;
    out[2] = 0.5 * (fL6[2] + fR6[2]) - 0.5 * D_my;
    out[3] = 0.5 * (fL6[3] + fR6[3]) - 0.5 * D_E;
  }
}

} // namespace

void numerical_flux(const System& sys, FluxKind kind, const double* qL,
                    const double* qR, double phi_pt, double nx, double ny,
                    double* out) {
  if (kind == FluxKind::llf)
    llf_flux(sys, qL, qR, phi_pt, nx, ny, out);
  else
    roe_flux(sys, qL, qR, phi_pt, nx, ny, out);
}

} // namespace wbfv
