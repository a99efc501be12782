#pragma once

#include "wbfv/field.hpp"
#include "wbfv/grid.hpp"
#include "wbfv/reference.hpp"

namespace wbfv {

enum class BcKind {
  periodic,
  extrapolate_constant,
  extrapolate_linear,
  extrapolate_parabolic,
  dirichlet_ref, // ghost averages from the reference (zero deviations in
                 // well-balanced mode, where the boundary data is q~)
};

struct BoundarySpec1D {
  BcKind lo = BcKind::periodic;
  BcKind hi = BcKind::periodic;
};

struct BoundarySpec2D {
  BcKind xlo = BcKind::periodic;
  BcKind xhi = BcKind::periodic;
  BcKind ylo = BcKind::periodic;
  BcKind yhi = BcKind::periodic;

  static BoundarySpec2D all(BcKind k) { return {k, k, k, k}; }
};

// Fill all ghost layers of U at time t. In well-balanced mode U holds
// deviations: extrapolation and periodic conditions act on the deviations
// and dirichlet_ref ghosts are exactly zero. In standard mode dirichlet_ref
// evaluates reference cell averages in the ghost cells.
//
// Filling is idempotent: ghost values depend only on interior data (and the
// reference), so repeated calls reproduce the same values.
void fill_ghosts_1d(Field& U, const Grid1D& grid, const BoundarySpec1D& bc,
                    const ReferenceSolution* ref, double t, bool wb_mode);

// 2-D corners are produced by applying the y-direction pass to the already
// extended x-ghost columns; for extrapolation conditions this reproduces
// every polynomial of total degree <= 2 exactly, corners included.
void fill_ghosts_2d(Field& U, const Grid2D& grid, const BoundarySpec2D& bc,
                    const ReferenceSolution* ref, double t, bool wb_mode);

} // namespace wbfv
