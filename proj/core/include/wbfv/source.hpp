#pragma once

#include "wbfv/reconstruct.hpp"

namespace wbfv {

// Source-term helpers for the gravity momentum source -rho(x) g(x). All
// polynomials use normalized cell-local coordinates.

// Quadratic interpolant through cell-center values g(-1), g(0), g(+1)
// (normalized offsets); out = 3 coefficients.
void interp_centers_quadratic(const double* g3, double* out);

// Degree-6 interpolant through 7 cell-center values at offsets -3..3.
void interp_centers_deg6(const double* g7, double* out);

// Biquadratic-basis interpolant {1,X,Y,X^2,XY,Y^2} through the five axis
// cell-center values of a 3x3 window (exact there) with the corner values
// entering through the least-squares XY coefficient. g9 is row-major
// w[j][i], j = -1..1, i = -1..1; out = 6 coefficients.
void interp_centers_2d(const double* g9, double* out);

// Exact cell average over [-1/2,1/2] of the product of two 1-D polynomials.
double product_average_1d(const double* a, int na, const double* b, int nb);

// Exact cell average over [-1/2,1/2]^2 of the product of two polynomials in
// the quadratic basis {1, X, Y, X^2, XY, Y^2}.
double product_average_2d(const double* a, const double* b);

} // namespace wbfv
