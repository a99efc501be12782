#include "wbfv/source.hpp"

#include <array>
#include <cmath>

namespace wbfv {

void interp_centers_quadratic(const double* g, double* out) {
  out[0] = g[1];
  out[1] = 0.5 * (g[2] - g[0]);
  out[2] = 0.5 * (g[2] - 2.0 * g[1] + g[0]);
}

namespace {
// inverse Vandermonde for point interpolation at offsets -3..3
const std::array<double, 49>& vander7_inv() {
  static const std::array<double, 49> inv = [] {
    std::array<double, 49> m{};
    for (int j = 0; j < 7; ++j) {
      double p = 1.0;
      for (int k = 0; k < 7; ++k) {
        m[j * 7 + k] = p;
        p *= (j - 3);
      }
    }
    // Gauss-Jordan
    std::array<double, 49> inv_{};
    for (int i = 0; i < 7; ++i) inv_[i * 7 + i] = 1.0;
    for (int col = 0; col < 7; ++col) {
      int piv = col;
      for (int r = col + 1; r < 7; ++r)
        if (std::abs(m[r * 7 + col]) > std::abs(m[piv * 7 + col])) piv = r;
      for (int k = 0; k < 7; ++k) {
        std::swap(m[col * 7 + k], m[piv * 7 + k]);
        std::swap(inv_[col * 7 + k], inv_[piv * 7 + k]);
      }
      const double d = m[col * 7 + col];
      for (int k = 0; k < 7; ++k) {
        m[col * 7 + k] /= d;
        inv_[col * 7 + k] /= d;
      }
      for (int r = 0; r < 7; ++r) {
        if (r == col) continue;
        const double f = m[r * 7 + col];
        if (f == 0.0) continue;
        for (int k = 0; k < 7; ++k) {
          m[r * 7 + k] -= f * m[col * 7 + k];
          inv_[r * 7 + k] -= f * inv_[col * 7 + k];
        }
      }
    }
    return inv_;
  }();
  return inv;
}
} // namespace

void interp_centers_deg6(const double* g, double* out) {
  const auto& inv = vander7_inv();
  for (int k = 0; k < 7; ++k) {
    double acc = 0.0;
    for (int j = 0; j < 7; ++j) acc += inv[k * 7 + j] * g[j];
    out[k] = acc;
  }
}

void interp_centers_2d(const double* g, double* out) {
  // g[ (j+1)*3 + (i+1) ]
  const double gC = g[4];
  const double gW = g[3], gE = g[5], gS = g[1], gN = g[7];
  const double gSW = g[0], gSE = g[2], gNW = g[6], gNE = g[8];
  out[0] = gC;
  out[1] = 0.5 * (gE - gW);
  out[2] = 0.5 * (gN - gS);
  out[3] = 0.5 * (gE - 2.0 * gC + gW);
  out[4] = 0.25 * (gNE - gNW - gSE + gSW);
  out[5] = 0.5 * (gN - 2.0 * gC + gS);
}

double product_average_1d(const double* a, int na, const double* b, int nb) {
  double acc = 0.0;
  for (int i = 0; i < na; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < nb; ++j) {
      const int k = i + j;
      if (k & 1) continue;
      acc += a[i] * b[j] * cell_moment(k);
    }
  }
  return acc;
}

double product_average_2d(const double* a, const double* b) {
  // basis exponents (x,y) of {1, X, Y, X^2, XY, Y^2}
  static constexpr int ex[6] = {0, 1, 0, 2, 1, 0};
  static constexpr int ey[6] = {0, 0, 1, 0, 1, 2};
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < 6; ++j) {
      const int kx = ex[i] + ex[j], ky = ey[i] + ey[j];
      if ((kx & 1) || (ky & 1)) continue;
      acc += a[i] * b[j] * (cell_moment(kx) * cell_moment(ky));
    }
  }
  return acc;
}

} // namespace wbfv
