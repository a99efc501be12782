#include "wbfv/reconstruct.hpp"

#include <array>
#include <cmath>

namespace wbfv {

int recon_radius(ReconKind kind) {
  switch (kind) {
  case ReconKind::constant: return 0;
  case ReconKind::minmod: return 1;
  case ReconKind::cweno3: return 1;
  case ReconKind::cweno7: return 3;
  }
  return 0;
}

int recon_ncoef_1d(ReconKind kind) {
  switch (kind) {
  case ReconKind::constant: return 1;
  case ReconKind::minmod: return 2;
  case ReconKind::cweno3: return 3;
  case ReconKind::cweno7: return 7;
  }
  return 1;
}

int recon_ncoef_2d(ReconKind kind) {
  switch (kind) {
  case ReconKind::constant: return 1;
  case ReconKind::minmod: return 3;
  case ReconKind::cweno3: return 6;
  case ReconKind::cweno7:
    throw ConstructionError("cweno7 reconstruction is one-dimensional only");
  }
  return 1;
}

double smoothness_1d(const double* c, int deg) {
  // d_k = c_k * k!/(k-l)! are the coefficients of the l-th derivative.
  double is = 0.0;
  double d[7];
  for (int l = 1; l <= deg; ++l) {
    for (int k = l; k <= deg; ++k) {
      double f = 1.0;
      for (int m = k; m > k - l; --m) f *= m;
      d[k - l] = c[k] * f;
    }
    const int dd = deg - l;
    for (int a = 0; a <= dd; ++a)
      for (int b = 0; b <= dd; ++b) is += d[a] * d[b] * cell_moment(a + b);
  }
  return is;
}

double smoothness_2d_quadratic(const double* c) {
  // basis {1, X, Y, X^2, XY, Y^2}
  const double c10 = c[1], c01 = c[2], c20 = c[3], c11 = c[4], c02 = c[5];
  return c10 * c10 + c01 * c01 +
         (13.0 / 3.0) * (c20 * c20 + c02 * c02) + (7.0 / 6.0) * c11 * c11;
}

namespace {

constexpr double kWenoEps = 1e-6;

inline double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return a < b ? a : b;
  if (a < 0.0 && b < 0.0) return a > b ? a : b;
  return 0.0;
}

// ---- precomputed conservative fit matrices -------------------------------

// avg of X^k over the cell at integer offset o
double stencil_avg(int o, int k) {
  const double r = o + 0.5, l = o - 0.5;
  return (std::pow(r, k + 1) - std::pow(l, k + 1)) / (k + 1);
}

// Gauss-Jordan inverse for the small fit systems; inputs are well
// conditioned (integer-offset stencils up to degree 6).
template <int N>
std::array<double, N * N> invert(std::array<double, N * N> a) {
  std::array<double, N * N> inv{};
  for (int i = 0; i < N; ++i) inv[i * N + i] = 1.0;
  for (int col = 0; col < N; ++col) {
    int piv = col;
    for (int r = col + 1; r < N; ++r)
      if (std::abs(a[r * N + col]) > std::abs(a[piv * N + col])) piv = r;
    if (piv != col)
      for (int k = 0; k < N; ++k) {
        std::swap(a[col * N + k], a[piv * N + k]);
        std::swap(inv[col * N + k], inv[piv * N + k]);
      }
    const double d = a[col * N + col];
    for (int k = 0; k < N; ++k) {
      a[col * N + k] /= d;
      inv[col * N + k] /= d;
    }
    for (int r = 0; r < N; ++r) {
      if (r == col) continue;
      const double f = a[r * N + col];
      if (f == 0.0) continue;
      for (int k = 0; k < N; ++k) {
        a[r * N + k] -= f * a[col * N + k];
        inv[r * N + k] -= f * inv[col * N + k];
      }
    }
  }
  return inv;
}

template <int N>
std::array<double, N * N> fit_inverse(const std::array<int, N>& offsets) {
  std::array<double, N * N> m{};
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) m[j * N + k] = stencil_avg(offsets[j], k);
  return invert<N>(m);
}

struct Cweno7Tables {
  std::array<std::array<double, 16>, 4> cubic_inv;
  std::array<double, 49> deg6_inv;
  Cweno7Tables() {
    const std::array<std::array<int, 4>, 4> subs{{{-3, -2, -1, 0},
                                                  {-2, -1, 0, 1},
                                                  {-1, 0, 1, 2},
                                                  {0, 1, 2, 3}}};
    for (int s = 0; s < 4; ++s) cubic_inv[s] = fit_inverse<4>(subs[s]);
    deg6_inv = fit_inverse<7>({-3, -2, -1, 0, 1, 2, 3});
  }
};

const Cweno7Tables& cweno7_tables() {
  static const Cweno7Tables t;
  return t;
}

// ---- 1-D kernels ---------------------------------------------------------

inline void cweno3_cell_1d(double um, double u0, double up, double* out) {
  // candidates: left/right linear, central quadratic
  const double aL = u0 - um;
  const double aR = up - u0;
  const double q2 = 0.5 * (up - 2.0 * u0 + um);
  const double q1 = 0.5 * (up - um);
  const double q0 = u0 - q2 / 12.0;
  // P_C = (P_opt - 1/4 P_L - 1/4 P_R) / (1/2)
  const double cC0 = 2.0 * q0 - u0;
  const double cC1 = 2.0 * q1 - 0.5 * (aL + aR);
  const double cC2 = 2.0 * q2;

  const double isL = aL * aL;
  const double isR = aR * aR;
  const double isC = cC1 * cC1 + (13.0 / 3.0) * cC2 * cC2;

  const double dL = kWenoEps + isL, dR = kWenoEps + isR, dC = kWenoEps + isC;
  const double alL = 0.25 / (dL * dL);
  const double alR = 0.25 / (dR * dR);
  const double alC = 0.5 / (dC * dC);
  const double s = alL + alR + alC;
  const double wL = alL / s, wR = alR / s, wC = alC / s;

  out[0] = wL * u0 + wR * u0 + wC * cC0;
  out[1] = wL * aL + wR * aR + wC * cC1;
  out[2] = wC * cC2;
}

void cweno7_cell_1d(const double* u /* 7 values, offsets -3..3 */,
                    double* out /* 7 coefficients */) {
  const Cweno7Tables& T = cweno7_tables();

  double popt[7];
  for (int k = 0; k < 7; ++k) {
    double acc = 0.0;
    for (int j = 0; j < 7; ++j) acc += T.deg6_inv[k * 7 + j] * u[j];
    popt[k] = acc;
  }

  double cand[4][4];
  double is[5];
  for (int s = 0; s < 4; ++s) {
    const double* w = u + s; // substencil offsets s-3 .. s
    for (int k = 0; k < 4; ++k) {
      double acc = 0.0;
      for (int j = 0; j < 4; ++j) acc += T.cubic_inv[s][k * 4 + j] * w[j];
      cand[s][k] = acc;
    }
    is[s] = smoothness_1d(cand[s], 3);
  }

  // central candidate: (P_opt - sum d_k P_k)/d0 with d0 = 1/2, d_k = 1/8
  double cc[7];
  for (int k = 0; k < 7; ++k) {
    double sub = 0.0;
    if (k < 4)
      sub = 0.125 * (cand[0][k] + cand[1][k] + cand[2][k] + cand[3][k]);
    cc[k] = 2.0 * popt[k] - 2.0 * sub;
  }
  is[4] = smoothness_1d(cc, 6);

  double al[5], s_al = 0.0;
  for (int k = 0; k < 4; ++k) {
    const double d = kWenoEps + is[k];
    al[k] = 0.125 / (d * d);
    s_al += al[k];
  }
  {
    const double d = kWenoEps + is[4];
    al[4] = 0.5 / (d * d);
    s_al += al[4];
  }
  for (int k = 0; k < 7; ++k) {
    double acc = al[4] * cc[k];
    if (k < 4)
      for (int s = 0; s < 4; ++s) acc += al[s] * cand[s][k];
    out[k] = acc / s_al;
  }
}

// ---- 2-D CWENO3 kernel ----------------------------------------------------

// w: 3x3 window, w[dj + 1][di + 1]
inline void cweno3_cell_2d(const double w[3][3], double* out) {
  const double uC = w[1][1];
  const double uW = w[1][0], uE = w[1][2], uS = w[0][1], uN = w[2][1];
  const double uSW = w[0][0], uSE = w[0][2], uNW = w[2][0], uNE = w[2][2];

  // optimal quadratic: conservative on the plus-stencil, corner cells enter
  // only through the least-squares XY coefficient
  const double o10 = 0.5 * (uE - uW);
  const double o01 = 0.5 * (uN - uS);
  const double o20 = 0.5 * (uE - 2.0 * uC + uW);
  const double o02 = 0.5 * (uN - 2.0 * uC + uS);
  const double o11 = 0.25 * (uNE - uNW - uSE + uSW);
  const double o00 = uC - (o20 + o02) / 12.0;

  // corner planes, each conservative on {center, one x-, one y-neighbor}
  const double pSW[3] = {uC, uC - uW, uC - uS};
  const double pSE[3] = {uC, uE - uC, uC - uS};
  const double pNW[3] = {uC, uC - uW, uN - uC};
  const double pNE[3] = {uC, uE - uC, uN - uC};

  // central candidate: (P_opt - 1/8 sum planes) / (1/2)
  double cc[6];
  cc[0] = 2.0 * o00 - 0.25 * (pSW[0] + pSE[0] + pNW[0] + pNE[0]);
  cc[1] = 2.0 * o10 - 0.25 * (pSW[1] + pSE[1] + pNW[1] + pNE[1]);
  cc[2] = 2.0 * o01 - 0.25 * (pSW[2] + pSE[2] + pNW[2] + pNE[2]);
  cc[3] = 2.0 * o20;
  cc[4] = 2.0 * o11;
  cc[5] = 2.0 * o02;

  const double isSW = pSW[1] * pSW[1] + pSW[2] * pSW[2];
  const double isSE = pSE[1] * pSE[1] + pSE[2] * pSE[2];
  const double isNW = pNW[1] * pNW[1] + pNW[2] * pNW[2];
  const double isNE = pNE[1] * pNE[1] + pNE[2] * pNE[2];
  const double isC = smoothness_2d_quadratic(cc);

  double al[5], s_al = 0.0;
  const double is[5] = {isSW, isSE, isNW, isNE, isC};
  for (int k = 0; k < 4; ++k) {
    const double d = kWenoEps + is[k];
    al[k] = 0.125 / (d * d);
    s_al += al[k];
  }
  {
    const double d = kWenoEps + is[4];
    al[4] = 0.5 / (d * d);
    s_al += al[4];
  }
  const double wSW = al[0] / s_al, wSE = al[1] / s_al, wNW = al[2] / s_al,
               wNE = al[3] / s_al, wC = al[4] / s_al;

  out[0] = wSW * pSW[0] + wSE * pSE[0] + wNW * pNW[0] + wNE * pNE[0] +
           wC * cc[0];
  out[1] = wSW * pSW[1] + wSE * pSE[1] + wNW * pNW[1] + wNE * pNE[1] +
           wC * cc[1];
  out[2] = wSW * pSW[2] + wSE * pSE[2] + wNW * pNW[2] + wNE * pNE[2] +
           wC * cc[2];
  out[3] = wC * cc[3];
  out[4] = wC * cc[4];
  out[5] = wC * cc[5];
}

} // namespace

void reconstruct_1d(ReconKind kind, const Field& U, int i0, int i1,
                    ReconCoeffs& out) {
  const int nv = U.nvars();
  const int r = recon_radius(kind);
  if (i0 - r < -U.ghosts_x() || i1 + r > U.nx() + U.ghosts_x())
    throw ConstructionError("reconstruct_1d: range exceeds available ghosts");
  out.resize(i0, i1, 0, 1, nv, recon_ncoef_1d(kind));

  switch (kind) {
  case ReconKind::constant:
    for (int i = i0; i < i1; ++i)
      for (int v = 0; v < nv; ++v) out.at(i, 0, v)[0] = U(i, 0, v);
    return;
  case ReconKind::minmod:
    for (int i = i0; i < i1; ++i)
      for (int v = 0; v < nv; ++v) {
        const double u0 = U(i, 0, v);
        double* c = out.at(i, 0, v);
        c[0] = u0;
        c[1] = minmod(u0 - U(i - 1, 0, v), U(i + 1, 0, v) - u0);
      }
    return;
  case ReconKind::cweno3:
    for (int i = i0; i < i1; ++i)
      for (int v = 0; v < nv; ++v)
        cweno3_cell_1d(U(i - 1, 0, v), U(i, 0, v), U(i + 1, 0, v),
                       out.at(i, 0, v));
    return;
  case ReconKind::cweno7:
    for (int i = i0; i < i1; ++i)
      for (int v = 0; v < nv; ++v) {
        double w[7];
        for (int k = -3; k <= 3; ++k) w[k + 3] = U(i + k, 0, v);
        cweno7_cell_1d(w, out.at(i, 0, v));
      }
    return;
  }
}

void reconstruct_2d(ReconKind kind, const Field& U, int i0, int i1, int j0,
                    int j1, ReconCoeffs& out) {
  const int nv = U.nvars();
  const int r = recon_radius(kind);
  if (i0 - r < -U.ghosts_x() || i1 + r > U.nx() + U.ghosts_x() ||
      j0 - r < -U.ghosts_y() || j1 + r > U.ny() + U.ghosts_y())
    throw ConstructionError("reconstruct_2d: range exceeds available ghosts");
  out.resize(i0, i1, j0, j1, nv, recon_ncoef_2d(kind));

  switch (kind) {
  case ReconKind::constant:
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i)
        for (int v = 0; v < nv; ++v) out.at(i, j, v)[0] = U(i, j, v);
    return;
  case ReconKind::minmod:
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i)
        for (int v = 0; v < nv; ++v) {
          const double u0 = U(i, j, v);
          double* c = out.at(i, j, v);
          c[0] = u0;
          c[1] = minmod(u0 - U(i - 1, j, v), U(i + 1, j, v) - u0);
          c[2] = minmod(u0 - U(i, j - 1, v), U(i, j + 1, v) - u0);
        }
    return;
  case ReconKind::cweno3:
    for (int j = j0; j < j1; ++j)
      for (int i = i0; i < i1; ++i)
        for (int v = 0; v < nv; ++v) {
          double w[3][3];
          for (int dj = -1; dj <= 1; ++dj)
            for (int di = -1; di <= 1; ++di)
              w[dj + 1][di + 1] = U(i + di, j + dj, v);
          cweno3_cell_2d(w, out.at(i, j, v));
        }
    return;
  case ReconKind::cweno7:
    throw ConstructionError("cweno7 reconstruction is one-dimensional only");
  }
}

} // namespace wbfv
