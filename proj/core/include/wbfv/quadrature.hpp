#pragma once

#include <array>
#include <cstddef>

#include "wbfv/errors.hpp"

namespace wbfv {

// Gauss-Legendre rule on the normalized interval [-1/2, 1/2] (weights sum
// to 1). An n-point rule integrates polynomials of degree 2n-1 exactly.
struct GaussRule {
  const double* nodes;
  const double* weights;
  int n;
};

namespace detail {
inline constexpr std::array<double, 1> g1_x{0.0};
inline constexpr std::array<double, 1> g1_w{1.0};

inline constexpr std::array<double, 3> g3_x{
    -0.3872983346207417, 0.0, 0.3872983346207417}; // sqrt(3/5)/2
inline constexpr std::array<double, 3> g3_w{
    5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};

inline constexpr std::array<double, 5> g5_x{
    -0.453089922969332, -0.26923465505284155, 0.0,
    0.26923465505284155, 0.453089922969332};
inline constexpr std::array<double, 5> g5_w{
    0.11846344252809454, 0.23931433524968324, 0.28444444444444444,
    0.23931433524968324, 0.11846344252809454};

inline constexpr std::array<double, 7> g7_x{
    -0.47455395617137924, -0.37076559279969723, -0.2029225756886986, 0.0,
    0.2029225756886986, 0.37076559279969723, 0.47455395617137924};
inline constexpr std::array<double, 7> g7_w{
    0.06474248308443485, 0.13985269574463833, 0.19091502525255947,
    0.20897959183673470, 0.19091502525255947, 0.13985269574463833,
    0.06474248308443485};
} // namespace detail

inline GaussRule gauss_rule(int npoints) {
  switch (npoints) {
  case 1: return {detail::g1_x.data(), detail::g1_w.data(), 1};
  case 3: return {detail::g3_x.data(), detail::g3_w.data(), 3};
  case 5: return {detail::g5_x.data(), detail::g5_w.data(), 5};
  case 7: return {detail::g7_x.data(), detail::g7_w.data(), 7};
  default:
    throw ConstructionError("gauss_rule: unsupported point count");
  }
}

// Average of f over [xl, xr] by an n-point Gauss rule.
template <class F>
double gauss_average(F&& f, double xl, double xr, int npoints) {
  GaussRule g = gauss_rule(npoints);
  const double mid = 0.5 * (xl + xr), h = xr - xl;
  double acc = 0.0;
  for (int k = 0; k < g.n; ++k) acc += g.weights[k] * f(mid + g.nodes[k] * h);
  return acc;
}

// Average of f(x, y) over an axis-aligned rectangle by a tensor Gauss rule.
template <class F>
double gauss_average_2d(F&& f, double xl, double xr, double yl, double yr,
                        int npoints) {
  GaussRule g = gauss_rule(npoints);
  const double xm = 0.5 * (xl + xr), ym = 0.5 * (yl + yr);
  const double hx = xr - xl, hy = yr - yl;
  double acc = 0.0;
  for (int ky = 0; ky < g.n; ++ky) {
    double row = 0.0;
    for (int kx = 0; kx < g.n; ++kx)
      row += g.weights[kx] * f(xm + g.nodes[kx] * hx, ym + g.nodes[ky] * hy);
    acc += g.weights[ky] * row;
  }
  return acc;
}

} // namespace wbfv
