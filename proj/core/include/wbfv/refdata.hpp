#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wbfv/boundary.hpp"
#include "wbfv/errors.hpp"
#include "wbfv/field.hpp"
#include "wbfv/grid.hpp"
#include "wbfv/physics.hpp"
#include "wbfv/reconstruct.hpp"
#include "wbfv/reference.hpp"

namespace wbfv {

// Not-a-knot cubic spline through strictly increasing abscissae (>= 4
// points; 2 and 3 fall back to the interpolating line/parabola). Exact on
// cubic data. Queries outside the sample range throw CoverageError.
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }

private:
  std::vector<double> x_, y_, m_; // m_: second derivatives at the knots
};

// Conservative point values w_v(s) sampled on a common strictly increasing
// 1-D coordinate, interpolated per variable by cubic splines.
class TabulatedProfile1D {
public:
  TabulatedProfile1D(std::vector<double> s,
                     std::vector<std::vector<double>> vars,
                     std::vector<std::string> names = {});

  int nvars() const { return static_cast<int>(splines_.size()); }
  int samples() const { return static_cast<int>(s_.size()); }
  double s_min() const { return s_.front(); }
  double s_max() const { return s_.back(); }
  const std::vector<std::string>& names() const { return names_; }

  void value(double s, double* out) const;

  // Plain-text round trip: header '# s <name...>', then rows of abscissa
  // followed by the variable values.
  static TabulatedProfile1D load(const std::string& path);
  void save(const std::string& path) const;

private:
  std::vector<double> s_;
  std::vector<std::vector<double>> samples_;
  std::vector<CubicSpline> splines_;
  std::vector<std::string> names_;
};

// How a 1-D profile extends into the plane: s = x cos(a) + y sin(a) for the
// angled form, s = |x - center| for the radial form. Profile momentum is the
// component along the extension direction (grad s).
struct ProfileGeometry {
  enum class Kind { aligned, angled, radial };
  Kind kind = Kind::aligned;
  double alpha = 0.0;
  double cx = 0.0, cy = 0.0;

  static ProfileGeometry aligned() { return {}; }
  static ProfileGeometry angled(double alpha) {
    return {Kind::angled, alpha, 0.0, 0.0};
  }
  static ProfileGeometry radial(double cx, double cy) {
    return {Kind::radial, 0.0, cx, cy};
  }
};

// References backed by a tabulated profile. Construction verifies coverage:
// every cell-average quadrature point of the ghost-extended grid must map
// into the profile range (offending cells are listed). quad_order selects
// the Gauss rule for cell averages (orders 1-2: midpoint, 3-6: three-point).
std::unique_ptr<ReferenceSolution> reference_from_table(
    const System& sys, std::shared_ptr<const TabulatedProfile1D> profile,
    const Grid1D& grid, int quad_order = 3);
std::unique_ptr<ReferenceSolution> reference_from_table(
    const System& sys, std::shared_ptr<const TabulatedProfile1D> profile,
    const ProfileGeometry& geometry, const Grid2D& grid, int quad_order = 3);

// One stored frame of interior cell averages, row major ((j*nx + i)*nvars).
struct Snapshot {
  double time = 0.0;
  int nx = 0, ny = 0, nvars = 0;
  std::vector<double> data;

  double* cell(int i, int j) {
    return data.data() + (static_cast<std::size_t>(j) * nx + i) * nvars;
  }
  const double* cell(int i, int j) const {
    return data.data() + (static_cast<std::size_t>(j) * nx + i) * nvars;
  }
};

// Text format: header '# t=<time> nx=<Nx> ny=<Ny>', then one line per cell
// in row-major order. Values round-trip exactly (%.17g).
Snapshot load_snapshot(const std::string& path);
void save_snapshot(const Snapshot& snap, const std::string& path);

// A series is an index file listing snapshot files (one per line, relative
// to the index location) in increasing time order.
std::string save_snapshot_series(const std::string& dir,
                                 const std::string& prefix,
                                 const std::vector<Snapshot>& snaps);
std::vector<Snapshot> load_snapshot_series(const std::string& index_path);

// Volume-weighted aggregation of nested grids: every coarse interface must
// coincide with a fine interface (integer ratio, matching extents to 1e-12).
// Exactly conservative; the identity ratio returns the data unchanged.
Snapshot coarsen_snapshot(const Snapshot& fine, const Grid2D& fine_grid,
                          const Grid2D& coarse_grid);

// Reference built from a snapshot sequence on a fine Cartesian grid:
// averages are coarsened to the solver grid and interpolated in time with
// degree-k Lagrange polynomials on the k+1 snapshots nearest the query time
// (centered when possible, ties toward earlier); point values come from a
// conservative reconstruction of the coarse averages, collapsed to cell
// centers and re-interpolated over 3x3 windows. At snapshot times the
// coarsened averages are reproduced bitwise.
class SnapshotReference final : public ReferenceSolution {
public:
  SnapshotReference(const System& sys, const Grid2D& solver_grid,
                    const Grid2D& fine_grid, std::vector<Snapshot> snaps,
                    int order_k = 3,
                    BoundarySpec2D bc =
                        BoundarySpec2D::all(BcKind::extrapolate_parabolic));

  int nvars() const override { return nv_; }
  bool time_dependent() const override { return snaps_.size() > 1; }
  void prepare(double t) override;
  void point_value(double x, double y, double t, int owner_i, int owner_j,
                   double* out) const override;
  void cell_average(int i, int j, double t, double* out) const override;

private:
  const Snapshot& coarse(std::size_t n);

  int nv_;
  Grid2D g_;
  Grid2D fine_;
  std::vector<Snapshot> snaps_;
  int k_;
  BoundarySpec2D bc_;

  std::vector<Snapshot> coarse_cache_;
  std::vector<bool> coarse_ready_;

  bool prepared_ = false;
  double prep_t_ = 0.0;
  Field avg_;
  ReconCoeffs rc_;
  std::vector<double> centers_; // (nx+2)*(ny+2)*nv, cell centers incl. ring
  std::vector<double> wpoly_;   // nx*ny*nv*6 window interpolants
};

} // namespace wbfv
