#include "wbfv/grid.hpp"

#include <cmath>
#include <string>

namespace wbfv {

Grid1D build_grid_1d(double x0, double x1, int nx, int ghost_layers) {
  if (!(x1 > x0)) throw ConstructionError("build_grid_1d: empty interval");
  if (nx < 1) throw ConstructionError("build_grid_1d: need at least one cell");
  if (ghost_layers < 0) throw ConstructionError("build_grid_1d: negative ghosts");
  Grid1D g;
  g.nx = nx;
  g.ng = ghost_layers;
  g.x0 = x0;
  g.dx = (x1 - x0) / nx;
  return g;
}

double Grid2D::domain_volume() const {
  double s = 0.0;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) s += volume(i, j);
  return s;
}

void Grid2D::compute_metrics() {
  const int np = node_pitch();
  const int cp = cell_pitch();
  const int rows = ny + 2 * ng;
  cx_.assign(static_cast<size_t>(cp) * rows, 0.0);
  cy_.assign(static_cast<size_t>(cp) * rows, 0.0);
  vol_.assign(static_cast<size_t>(cp) * rows, 0.0);
  jac_.assign(static_cast<size_t>(cp) * rows, 0.0);
  (void)np;

  for (int j = -ng; j < ny + ng; ++j) {
    for (int i = -ng; i < nx + ng; ++i) {
      // face midpoints from node pairs
      const double wx = 0.5 * (node_x(i, j) + node_x(i, j + 1));
      const double wy = 0.5 * (node_y(i, j) + node_y(i, j + 1));
      const double ex = 0.5 * (node_x(i + 1, j) + node_x(i + 1, j + 1));
      const double ey = 0.5 * (node_y(i + 1, j) + node_y(i + 1, j + 1));
      const double sx = 0.5 * (node_x(i, j) + node_x(i + 1, j));
      const double sy = 0.5 * (node_y(i, j) + node_y(i + 1, j));
      const double tx = 0.5 * (node_x(i, j + 1) + node_x(i + 1, j + 1));
      const double ty = 0.5 * (node_y(i, j + 1) + node_y(i + 1, j + 1));

      const double x_xi = (ex - wx) / dxi, y_xi = (ey - wy) / dxi;
      const double x_eta = (tx - sx) / deta, y_eta = (ty - sy) / deta;
      const double det = x_xi * y_eta - x_eta * y_xi;
      if (det == 0.0)
        throw ConstructionError("Grid2D: degenerate cell (zero Jacobian)");
      const int c = cell_idx(i, j);
      jac_[c] = std::abs(det);
      vol_[c] = jac_[c] * dxi * deta;
      cx_[c] = 0.25 * (wx + ex + sx + tx);
      cy_[c] = 0.25 * (wy + ey + sy + ty);
    }
  }
}

Grid2D build_cartesian_2d(double x0, double x1, double y0, double y1, int nx,
                          int ny, int ghost_layers) {
  if (!(x1 > x0) || !(y1 > y0))
    throw ConstructionError("build_cartesian_2d: empty domain");
  if (nx < 1 || ny < 1)
    throw ConstructionError("build_cartesian_2d: need at least one cell");
  if (ghost_layers < 0)
    throw ConstructionError("build_cartesian_2d: negative ghosts");
  Grid2D g;
  g.kind = GridKind::cartesian;
  g.nx = nx;
  g.ny = ny;
  g.ng = ghost_layers;
  g.xi0 = x0;
  g.eta0 = y0;
  g.dxi = (x1 - x0) / nx;
  g.deta = (y1 - y0) / ny;
  const int np = g.node_pitch();
  const int nrows = ny + 2 * ghost_layers + 1;
  g.nodes_x_.resize(static_cast<size_t>(np) * nrows);
  g.nodes_y_.resize(static_cast<size_t>(np) * nrows);
  for (int j = -g.ng; j <= ny + g.ng; ++j)
    for (int i = -g.ng; i <= nx + g.ng; ++i) {
      g.nodes_x_[g.node_idx(i, j)] = x0 + i * g.dxi;
      g.nodes_y_[g.node_idx(i, j)] = y0 + j * g.deta;
    }
  g.compute_metrics();
  // exact Cartesian geometry, immune to roundoff in the generic path
  for (int j = -g.ng; j < ny + g.ng; ++j)
    for (int i = -g.ng; i < nx + g.ng; ++i) {
      const int c = g.cell_idx(i, j);
      g.jac_[c] = 1.0;
      g.vol_[c] = g.dxi * g.deta;
      g.cx_[c] = x0 + (i + 0.5) * g.dxi;
      g.cy_[c] = y0 + (j + 0.5) * g.deta;
    }
  return g;
}

Grid2D build_mapped_2d(std::function<void(double, double, double&, double&)> map,
                       double xi0, double xi1, double eta0, double eta1,
                       int nxi, int neta, int ghost_layers, bool eta_closed) {
  if (!(xi1 > xi0) || !(eta1 > eta0))
    throw ConstructionError("build_mapped_2d: empty computational domain");
  if (nxi < 1 || neta < 1)
    throw ConstructionError("build_mapped_2d: need at least one cell");
  Grid2D g;
  g.kind = GridKind::curvilinear;
  g.nx = nxi;
  g.ny = neta;
  g.ng = ghost_layers;
  g.xi0 = xi0;
  g.eta0 = eta0;
  g.dxi = (xi1 - xi0) / nxi;
  g.deta = (eta1 - eta0) / neta;
  g.eta_closed = eta_closed;
  const int np = g.node_pitch();
  const int nrows = neta + 2 * ghost_layers + 1;
  g.nodes_x_.resize(static_cast<size_t>(np) * nrows);
  g.nodes_y_.resize(static_cast<size_t>(np) * nrows);
  for (int j = -g.ng; j <= neta + g.ng; ++j)
    for (int i = -g.ng; i <= nxi + g.ng; ++i) {
      double x, y;
      map(xi0 + i * g.dxi, eta0 + j * g.deta, x, y);
      g.nodes_x_[g.node_idx(i, j)] = x;
      g.nodes_y_[g.node_idx(i, j)] = y;
    }
  g.compute_metrics();
  return g;
}

Grid2D build_polar_2d(double r_min, double r_max, int nr, int ntheta,
                      int ghost_layers, double theta0, double theta1) {
  if (r_min <= 0.0)
    throw ConstructionError(
        "build_polar_2d: r_min must be positive (the polar map is singular "
        "at r = 0)");
  if (!(r_max > r_min)) throw ConstructionError("build_polar_2d: r_max <= r_min");
  const double dr = (r_max - r_min) / nr;
  if (r_min - ghost_layers * dr <= 0.0)
    throw ConstructionError(
        "build_polar_2d: ghost layers would reach the coordinate singularity");
  const double two_pi = 6.283185307179586476925286766559;
  const bool closed = std::abs((theta1 - theta0) - two_pi) < 1e-12;
  return build_mapped_2d(
      [](double r, double th, double& x, double& y) {
        x = r * std::sin(th);
        y = r * std::cos(th);
      },
      r_min, r_max, theta0, theta1, nr, ntheta, ghost_layers, closed);
}

InterfaceTable interface_quadrature(const Grid2D& grid, int order) {
  if (order != 1 && order != 2 && order != 3)
    throw ConstructionError("interface_quadrature: order must be 1, 2 or 3");
  if (grid.kind != GridKind::cartesian && order > 2)
    throw ConstructionError(
        "interface_quadrature: curvilinear grids support orders 1-2 only");
  InterfaceTable t;
  t.nx = grid.nx;
  t.ny = grid.ny;
  t.mq = (order == 3) ? 3 : 1;
  const double s35 = std::sqrt(3.0 / 5.0);
  if (t.mq == 1) {
    t.weights = {1.0};
  } else {
    t.weights = {5.0 / 18.0, 4.0 / 9.0, 5.0 / 18.0};
  }

  t.xf_nx.resize(t.n_xf());
  t.xf_ny.resize(t.n_xf());
  t.xf_measure.resize(t.n_xf());
  t.xf_px.resize(static_cast<size_t>(t.n_xf()) * t.mq);
  t.xf_py.resize(static_cast<size_t>(t.n_xf()) * t.mq);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i <= grid.nx; ++i) {
      // interface between cells (i-1, j) and (i, j): nodes (i, j), (i, j+1)
      const double ax = grid.node_x(i, j), ay = grid.node_y(i, j);
      const double bx = grid.node_x(i, j + 1), by = grid.node_y(i, j + 1);
      const double txv = bx - ax, tyv = by - ay;
      const double len = std::hypot(txv, tyv);
      if (len <= 0.0) throw ConstructionError("interface_quadrature: zero face");
      double nxv = tyv / len, nyv = -txv / len;
      // orient from cell (i-1, j) toward cell (i, j)
      const double dxc = grid.center_x(i, j) - grid.center_x(i - 1, j);
      const double dyc = grid.center_y(i, j) - grid.center_y(i - 1, j);
      if (nxv * dxc + nyv * dyc < 0.0) {
        nxv = -nxv;
        nyv = -nyv;
      }
      const int f = t.xf(i, j);
      t.xf_nx[f] = nxv;
      t.xf_ny[f] = nyv;
      t.xf_measure[f] = len;
      const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
      if (t.mq == 1) {
        t.xf_px[f] = mx;
        t.xf_py[f] = my;
      } else {
        t.xf_px[f * 3 + 0] = s35 * ax + (1.0 - s35) * mx;
        t.xf_py[f * 3 + 0] = s35 * ay + (1.0 - s35) * my;
        t.xf_px[f * 3 + 1] = mx;
        t.xf_py[f * 3 + 1] = my;
        t.xf_px[f * 3 + 2] = s35 * bx + (1.0 - s35) * mx;
        t.xf_py[f * 3 + 2] = s35 * by + (1.0 - s35) * my;
      }
    }
  }

  t.yf_nx.resize(t.n_yf());
  t.yf_ny.resize(t.n_yf());
  t.yf_measure.resize(t.n_yf());
  t.yf_px.resize(static_cast<size_t>(t.n_yf()) * t.mq);
  t.yf_py.resize(static_cast<size_t>(t.n_yf()) * t.mq);
  for (int j = 0; j <= grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      // interface between cells (i, j-1) and (i, j): nodes (i, j), (i+1, j)
      const double ax = grid.node_x(i, j), ay = grid.node_y(i, j);
      const double bx = grid.node_x(i + 1, j), by = grid.node_y(i + 1, j);
      const double txv = bx - ax, tyv = by - ay;
      const double len = std::hypot(txv, tyv);
      if (len <= 0.0) throw ConstructionError("interface_quadrature: zero face");
      double nxv = tyv / len, nyv = -txv / len;
      const double dxc = grid.center_x(i, j) - grid.center_x(i, j - 1);
      const double dyc = grid.center_y(i, j) - grid.center_y(i, j - 1);
      if (nxv * dxc + nyv * dyc < 0.0) {
        nxv = -nxv;
        nyv = -nyv;
      }
      const int f = t.yf(i, j);
      t.yf_nx[f] = nxv;
      t.yf_ny[f] = nyv;
      t.yf_measure[f] = len;
      const double mx = 0.5 * (ax + bx), my = 0.5 * (ay + by);
      if (t.mq == 1) {
        t.yf_px[f] = mx;
        t.yf_py[f] = my;
      } else {
        t.yf_px[f * 3 + 0] = s35 * ax + (1.0 - s35) * mx;
        t.yf_py[f * 3 + 0] = s35 * ay + (1.0 - s35) * my;
        t.yf_px[f * 3 + 1] = mx;
        t.yf_py[f * 3 + 1] = my;
        t.yf_px[f * 3 + 2] = s35 * bx + (1.0 - s35) * mx;
        t.yf_py[f * 3 + 2] = s35 * by + (1.0 - s35) * my;
      }
    }
  }
  return t;
}

} // namespace wbfv
