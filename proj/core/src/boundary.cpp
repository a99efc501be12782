#include "wbfv/boundary.hpp"

#include <cstring>

namespace wbfv {

namespace {

// conservative extrapolation of cell averages u0 (boundary-most), u1, u2
// (inward) to the k-th ghost layer, k >= 1
inline double extrapolate(BcKind kind, double u0, double u1, double u2,
                          int k) {
  switch (kind) {
  case BcKind::extrapolate_constant:
    return u0;
  case BcKind::extrapolate_linear:
    return u0 + k * (u0 - u1);
  case BcKind::extrapolate_parabolic:
    // exact parabola through the last three cell averages:
    // k=1 -> 3 u0 - 3 u1 + u2,  k=2 -> 6 u0 - 8 u1 + 3 u2
    return 0.5 * (static_cast<double>(k) * k * (u0 - 2.0 * u1 + u2) +
                  k * (3.0 * u0 - 4.0 * u1 + u2) + 2.0 * u0);
  default:
    return u0;
  }
}

void check_needs(BcKind k, int n, const char* dir) {
  if (k == BcKind::extrapolate_parabolic && n < 3)
    throw ConstructionError(std::string("fill_ghosts: parabolic "
                                        "extrapolation needs at least 3 "
                                        "cells in ") +
                            dir);
  if (k == BcKind::extrapolate_linear && n < 2)
    throw ConstructionError(std::string("fill_ghosts: linear extrapolation "
                                        "needs at least 2 cells in ") +
                            dir);
}

void check_pair(BcKind lo, BcKind hi, const char* dir) {
  if ((lo == BcKind::periodic) != (hi == BcKind::periodic))
    throw ConstructionError(
        std::string("fill_ghosts: periodic boundary must pair up in ") + dir);
}

} // namespace

void fill_ghosts_1d(Field& U, const Grid1D& grid, const BoundarySpec1D& bc,
                    const ReferenceSolution* ref, double t, bool wb_mode) {
  const int nx = grid.nx, ng = grid.ng, nv = U.nvars();
  check_pair(bc.lo, bc.hi, "x");
  check_needs(bc.lo, nx, "x");
  check_needs(bc.hi, nx, "x");
  if ((bc.lo == BcKind::dirichlet_ref || bc.hi == BcKind::dirichlet_ref) &&
      !wb_mode && !ref)
    throw ConstructionError("fill_ghosts: dirichlet_ref needs a reference");

  if (bc.lo == BcKind::periodic) {
    for (int k = 1; k <= ng; ++k) {
      std::memcpy(U.cell(-k, 0), U.cell(nx - k, 0), sizeof(double) * nv);
      std::memcpy(U.cell(nx - 1 + k, 0), U.cell(k - 1, 0),
                  sizeof(double) * nv);
    }
    return;
  }

  for (int k = 1; k <= ng; ++k) {
    if (bc.lo == BcKind::dirichlet_ref) {
      if (wb_mode)
        for (int v = 0; v < nv; ++v) U(-k, 0, v) = 0.0;
      else
        ref->cell_average(-k, 0, t, U.cell(-k, 0));
    } else {
      for (int v = 0; v < nv; ++v)
        U(-k, 0, v) = extrapolate(bc.lo, U(0, 0, v), U(1, 0, v),
                                  nx > 2 ? U(2, 0, v) : 0.0, k);
    }
    if (bc.hi == BcKind::dirichlet_ref) {
      if (wb_mode)
        for (int v = 0; v < nv; ++v) U(nx - 1 + k, 0, v) = 0.0;
      else
        ref->cell_average(nx - 1 + k, 0, t, U.cell(nx - 1 + k, 0));
    } else {
      for (int v = 0; v < nv; ++v)
        U(nx - 1 + k, 0, v) =
            extrapolate(bc.hi, U(nx - 1, 0, v), U(nx - 2, 0, v),
                        nx > 2 ? U(nx - 3, 0, v) : 0.0, k);
    }
  }
}

void fill_ghosts_2d(Field& U, const Grid2D& grid, const BoundarySpec2D& bc,
                    const ReferenceSolution* ref, double t, bool wb_mode) {
  const int nx = grid.nx, ny = grid.ny, ng = grid.ng, nv = U.nvars();
  check_pair(bc.xlo, bc.xhi, "x");
  check_pair(bc.ylo, bc.yhi, "y");
  check_needs(bc.xlo, nx, "x");
  check_needs(bc.xhi, nx, "x");
  check_needs(bc.ylo, ny, "y");
  check_needs(bc.yhi, ny, "y");
  const bool any_dirichlet =
      bc.xlo == BcKind::dirichlet_ref || bc.xhi == BcKind::dirichlet_ref ||
      bc.ylo == BcKind::dirichlet_ref || bc.yhi == BcKind::dirichlet_ref;
  if (any_dirichlet && !wb_mode && !ref)
    throw ConstructionError("fill_ghosts: dirichlet_ref needs a reference");

  // x-direction pass over interior rows
  for (int j = 0; j < ny; ++j) {
    if (bc.xlo == BcKind::periodic) {
      for (int k = 1; k <= ng; ++k) {
        std::memcpy(U.cell(-k, j), U.cell(nx - k, j), sizeof(double) * nv);
        std::memcpy(U.cell(nx - 1 + k, j), U.cell(k - 1, j),
                    sizeof(double) * nv);
      }
      continue;
    }
    for (int k = 1; k <= ng; ++k) {
      if (bc.xlo == BcKind::dirichlet_ref) {
        if (wb_mode)
          for (int v = 0; v < nv; ++v) U(-k, j, v) = 0.0;
        else
          ref->cell_average(-k, j, t, U.cell(-k, j));
      } else {
        for (int v = 0; v < nv; ++v)
          U(-k, j, v) = extrapolate(bc.xlo, U(0, j, v), U(1, j, v),
                                    nx > 2 ? U(2, j, v) : 0.0, k);
      }
      if (bc.xhi == BcKind::dirichlet_ref) {
        if (wb_mode)
          for (int v = 0; v < nv; ++v) U(nx - 1 + k, j, v) = 0.0;
        else
          ref->cell_average(nx - 1 + k, j, t, U.cell(nx - 1 + k, j));
      } else {
        for (int v = 0; v < nv; ++v)
          U(nx - 1 + k, j, v) =
              extrapolate(bc.xhi, U(nx - 1, j, v), U(nx - 2, j, v),
                          nx > 2 ? U(nx - 3, j, v) : 0.0, k);
      }
    }
  }

  // y-direction pass over all columns (including the x-ghost columns filled
  // above, which produces the corner values)
  for (int i = -ng; i < nx + ng; ++i) {
    if (bc.ylo == BcKind::periodic) {
      for (int k = 1; k <= ng; ++k) {
        std::memcpy(U.cell(i, -k), U.cell(i, ny - k), sizeof(double) * nv);
        std::memcpy(U.cell(i, ny - 1 + k), U.cell(i, k - 1),
                    sizeof(double) * nv);
      }
      continue;
    }
    for (int k = 1; k <= ng; ++k) {
      if (bc.ylo == BcKind::dirichlet_ref) {
        if (wb_mode)
          for (int v = 0; v < nv; ++v) U(i, -k, v) = 0.0;
        else
          ref->cell_average(i, -k, t, U.cell(i, -k));
      } else {
        for (int v = 0; v < nv; ++v)
          U(i, -k, v) = extrapolate(bc.ylo, U(i, 0, v), U(i, 1, v),
                                    ny > 2 ? U(i, 2, v) : 0.0, k);
      }
      if (bc.yhi == BcKind::dirichlet_ref) {
        if (wb_mode)
          for (int v = 0; v < nv; ++v) U(i, ny - 1 + k, v) = 0.0;
        else
          ref->cell_average(i, ny - 1 + k, t, U.cell(i, ny - 1 + k));
      } else {
        for (int v = 0; v < nv; ++v)
          U(i, ny - 1 + k, v) =
              extrapolate(bc.yhi, U(i, ny - 1, v), U(i, ny - 2, v),
                          ny > 2 ? U(i, ny - 3, v) : 0.0, k);
      }
    }
  }

  // Periodic x with non-periodic y: the x-pass ran before the y-ghost rows
  // existed, so wrap the corner blocks now that the y-pass filled them.
  if (bc.xlo == BcKind::periodic && bc.ylo != BcKind::periodic) {
    for (int j = -ng; j < 0; ++j)
      for (int k = 1; k <= ng; ++k) {
        std::memcpy(U.cell(-k, j), U.cell(nx - k, j), sizeof(double) * nv);
        std::memcpy(U.cell(nx - 1 + k, j), U.cell(k - 1, j),
                    sizeof(double) * nv);
      }
    for (int j = ny; j < ny + ng; ++j)
      for (int k = 1; k <= ng; ++k) {
        std::memcpy(U.cell(-k, j), U.cell(nx - k, j), sizeof(double) * nv);
        std::memcpy(U.cell(nx - 1 + k, j), U.cell(k - 1, j),
                    sizeof(double) * nv);
      }
  }
}

} // namespace wbfv
