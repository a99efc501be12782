#pragma once

#include <functional>
#include <vector>

#include "wbfv/errors.hpp"

namespace wbfv {

// Uniform 1-D grid. Cell i spans [x0 + i dx, x0 + (i+1) dx), i in [0, nx);
// geometry extends into the ghost range [-ng, nx+ng).
struct Grid1D {
  int nx = 0;
  int ng = 0;
  double x0 = 0.0;
  double dx = 0.0;

  double left(int i) const { return x0 + i * dx; }
  double right(int i) const { return x0 + (i + 1) * dx; }
  double center(int i) const { return x0 + (i + 0.5) * dx; }
  double length() const { return nx * dx; }
};

Grid1D build_grid_1d(double x0, double x1, int nx, int ghost_layers);

enum class GridKind { cartesian, curvilinear };

// Structured 2-D grid: a logically rectangular mesh of quadrilateral cells,
// given by nodal physical coordinates over the ghost-extended index range.
// Cell (i,j) has nodes (i,j), (i+1,j), (i,j+1), (i+1,j+1) in node indexing
// that is offset by +ng relative to cell indexing.
//
// Cell volumes are J_c * dxi * deta with the Jacobian J_c formed from
// central differences of face-midpoint coordinates; on Cartesian grids this
// reduces to dx * dy exactly.
class Grid2D {
public:
  GridKind kind = GridKind::cartesian;
  int nx = 0, ny = 0, ng = 0;
  double xi0 = 0.0, eta0 = 0.0;  // computational origin (= physical for Cartesian)
  double dxi = 0.0, deta = 0.0;

  // true if the eta direction closes on itself geometrically (full annulus)
  bool eta_closed = false;

  int node_pitch() const { return nx + 2 * ng + 1; }
  int cell_pitch() const { return nx + 2 * ng; }

  double node_x(int i, int j) const { return nodes_x_[node_idx(i, j)]; }
  double node_y(int i, int j) const { return nodes_y_[node_idx(i, j)]; }
  double center_x(int i, int j) const { return cx_[cell_idx(i, j)]; }
  double center_y(int i, int j) const { return cy_[cell_idx(i, j)]; }
  double volume(int i, int j) const { return vol_[cell_idx(i, j)]; }
  double jacobian(int i, int j) const { return jac_[cell_idx(i, j)]; }

  // Cartesian-only cell bounds (used for exact cell averaging).
  double cell_x_lo(int i) const { return xi0 + i * dxi; }
  double cell_y_lo(int j) const { return eta0 + j * deta; }

  double domain_volume() const;

  // node index range: i in [-ng, nx+ng], j in [-ng, ny+ng]
  int node_idx(int i, int j) const {
    return (j + ng) * node_pitch() + (i + ng);
  }
  // cell index range: i in [-ng, nx+ng), j in [-ng, ny+ng)
  int cell_idx(int i, int j) const {
    return (j + ng) * cell_pitch() + (i + ng);
  }

  friend Grid2D build_cartesian_2d(double, double, double, double, int, int,
                                   int);
  friend Grid2D build_mapped_2d(
      std::function<void(double, double, double&, double&)> map, double xi0,
      double xi1, double eta0, double eta1, int nxi, int neta,
      int ghost_layers, bool eta_closed);

private:
  std::vector<double> nodes_x_, nodes_y_;
  std::vector<double> cx_, cy_;
  std::vector<double> vol_, jac_;

  void compute_metrics();
};

Grid2D build_cartesian_2d(double x0, double x1, double y0, double y1, int nx,
                          int ny, int ghost_layers);

// Annular grid r in [r_min, r_max], theta in [theta0, theta1] with the map
// x = r sin(theta), y = r cos(theta). The default theta range is the full
// circle, in which case the grid closes on itself in eta.
Grid2D build_polar_2d(double r_min, double r_max, int nr, int ntheta,
                      int ghost_layers, double theta0 = 0.0,
                      double theta1 = 6.283185307179586476925286766559);

// Interface quadrature table: per interface, the physical quadrature point
// positions, the unit normal (from the lower to the higher cell index), and
// the measure (physical interface length). Weights are the normalized Gauss
// weights; a quadrature contribution is weight * measure * integrand.
//
// x-interfaces: index (i, j), i in [0, nx], j in [0, ny):  between cells
// (i-1, j) and (i, j).  y-interfaces: (i, j), i in [0, nx), j in [0, ny]:
// between (i, j-1) and (i, j).
struct InterfaceTable {
  int nx = 0, ny = 0;
  int mq = 0;             // quadrature points per interface (1 or 3)
  std::vector<double> weights; // mq entries, sum to 1

  std::vector<double> xf_nx, xf_ny, xf_measure; // (nx+1)*ny
  std::vector<double> xf_px, xf_py;             // (nx+1)*ny*mq, point coords
  std::vector<double> yf_nx, yf_ny, yf_measure; // nx*(ny+1)
  std::vector<double> yf_px, yf_py;

  int xf(int i, int j) const { return j * (nx + 1) + i; }
  int yf(int i, int j) const { return j * nx + i; }
  int n_xf() const { return (nx + 1) * ny; }
  int n_yf() const { return nx * (ny + 1); }
};

// order: the spatial order of the scheme; orders 1-2 use the midpoint rule,
// order 3 the 3-point Gauss rule. Curvilinear grids only support midpoint.
InterfaceTable interface_quadrature(const Grid2D& grid, int order);

} // namespace wbfv
