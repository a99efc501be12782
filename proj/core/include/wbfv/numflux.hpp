#pragma once

#include "wbfv/physics.hpp"

namespace wbfv {

enum class FluxKind { llf, roe };

// Numerical flux in direction n = (nx, ny) at a point with potential phi_pt.
// Consistency is bitwise: identical inputs return exactly System::flux of
// that state, because the central part is built from the same exact-flux
// routine and the dissipation vanishes term by term.
//
// llf: local Lax-Friedrichs, dissipation max(speed(qL), speed(qR)).
// roe: Roe linearization without entropy fix; ideal-gas Euler only.
void numerical_flux(const System& sys, FluxKind kind, const double* qL,
                    const double* qR, double phi_pt, double nx, double ny,
                    double* out);

} // namespace wbfv
