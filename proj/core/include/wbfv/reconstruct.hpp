#pragma once

#include <vector>

#include "wbfv/errors.hpp"
#include "wbfv/field.hpp"

namespace wbfv {

// Reconstruction polynomials live in normalized cell-local coordinates
// X = (x - x_i)/dx (and Y likewise), so a cell spans [-1/2, 1/2] and all
// coefficients are scale-free. Reconstructing identically zero data yields
// identically zero coefficients, which the well-balanced scheme relies on.

enum class ReconKind { constant, minmod, cweno3, cweno7 };

int recon_radius(ReconKind kind);    // stencil radius: 0, 1, 1, 3
int recon_ncoef_1d(ReconKind kind);  // 1, 2, 3, 7
int recon_ncoef_2d(ReconKind kind);  // 1, 3, 6  (cweno7 is 1-D only)

// Integral of X^k over [-1/2, 1/2].
inline double cell_moment(int k) {
  if (k & 1) return 0.0;
  return 1.0 / ((k + 1) * static_cast<double>(1 << k));
}

// Jiang-Shu smoothness of a normalized-coordinate polynomial: the sum over
// derivative orders l = 1..deg of the integral of the squared l-th
// derivative over the unit cell.
double smoothness_1d(const double* c, int deg);

// 2-D version over multi-indices 1 <= |a| <= 2 for polynomials in the
// quadratic basis {1, X, Y, X^2, XY, Y^2}.
double smoothness_2d_quadratic(const double* c);

inline double eval_poly_1d(const double* c, int ncoef, double xi) {
  double acc = c[ncoef - 1];
  for (int k = ncoef - 2; k >= 0; --k) acc = acc * xi + c[k];
  return acc;
}

// basis {1, X, Y, X^2, XY, Y^2}, truncated to ncoef in {1, 3, 6}
inline double eval_poly_2d(const double* c, int ncoef, double X, double Y) {
  double acc = c[0];
  if (ncoef > 1) acc += c[1] * X + c[2] * Y;
  if (ncoef > 5) acc += c[3] * X * X + c[4] * X * Y + c[5] * Y * Y;
  return acc;
}

// Per-cell reconstruction coefficients for a rectangular index range.
// Layout: ((j - j0) * (i1 - i0) + (i - i0)) * nv * ncoef + v * ncoef + k.
struct ReconCoeffs {
  int i0 = 0, i1 = 0, j0 = 0, j1 = 0;
  int nv = 0, ncoef = 0;
  std::vector<double> c;

  void resize(int i0_, int i1_, int j0_, int j1_, int nv_, int ncoef_) {
    i0 = i0_; i1 = i1_; j0 = j0_; j1 = j1_;
    nv = nv_; ncoef = ncoef_;
    c.assign(static_cast<size_t>(i1 - i0) * (j1 - j0) * nv * ncoef, 0.0);
  }
  double* at(int i, int j, int v) {
    return c.data() +
           ((static_cast<size_t>(j - j0) * (i1 - i0) + (i - i0)) * nv + v) *
               ncoef;
  }
  const double* at(int i, int j, int v) const {
    return c.data() +
           ((static_cast<size_t>(j - j0) * (i1 - i0) + (i - i0)) * nv + v) *
               ncoef;
  }
};

// 1-D reconstruction of all components over cells i in [i0, i1) (the field
// must provide recon_radius(kind) neighbors beyond that range).
void reconstruct_1d(ReconKind kind, const Field& U, int i0, int i1,
                    ReconCoeffs& out);

// 2-D reconstruction over the rectangle [i0, i1) x [j0, j1).
void reconstruct_2d(ReconKind kind, const Field& U, int i0, int i1, int j0,
                    int j1, ReconCoeffs& out);

} // namespace wbfv
