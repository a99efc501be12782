#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wbfv/boundary.hpp"
#include "wbfv/grid.hpp"
#include "wbfv/numflux.hpp"
#include "wbfv/physics.hpp"
#include "wbfv/refdata.hpp"
#include "wbfv/reference.hpp"
#include "wbfv/wellbalance.hpp"

namespace wbfv {

// Registry metadata for one named setup.
struct CaseInfo {
  std::string id;
  std::string summary;
  bool two_dimensional = false;
  int default_nx = 0;
  int default_ny = 0; // 0 in one dimension
  double default_t_end = 0.0;
  int default_order = 3;
  FluxKind default_flux = FluxKind::llf;
  bool has_eta = false; // case takes a pressure-perturbation amplitude
  double default_eta = 0.0;
  std::vector<std::string> grids; // accepted --grid names, first is default
  bool needs_snapshots = false;   // well-balanced mode consumes a snapshot series
};

const std::vector<CaseInfo>& case_registry();
const CaseInfo& case_info(const std::string& id); // throws on unknown id

// Requested deviations from the case defaults; unset fields keep them.
struct CaseOptions {
  std::optional<int> order;
  std::optional<bool> well_balanced;
  std::optional<FluxKind> flux;
  std::optional<double> cfl;
  std::optional<int> nx;
  std::optional<int> ny;
  std::optional<double> t_end;
  std::optional<double> eta;
  std::optional<std::string> grid;
  std::string snapshot_index; // series index file for snapshot-backed references
};

// How a finished run is scored when no external reference run is supplied.
enum class ErrorAgainst {
  none,             // robustness / quality-metric cases
  initial_averages, // exact solution at t_end coincides with the initial data
  exact_at_end      // `initial` is the exact solution; evaluate it at t_end
};

// A fully assembled problem: grid, physics, boundary spec, reference and
// initial data, ready for the semi-discrete operator and the time loop.
// Grids are held by shared pointer because analytic references keep a
// pointer to the grid they average over.
struct Problem {
  explicit Problem(System s) : sys(std::move(s)) {}

  std::string case_id;
  bool two_dimensional = false;
  std::shared_ptr<Grid1D> grid1;
  std::shared_ptr<Grid2D> grid2;
  System sys;
  SchemeConfig scheme;
  BoundarySpec1D bc1;
  BoundarySpec2D bc2;
  double t_end = 0.0;

  // Reference the well-balanced scheme preserves (also the ghost data source
  // for dirichlet_ref). Initial data run through the same cell-average
  // quadrature; cases whose initial condition *is* the reference share one
  // object, so well-balanced runs start from bitwise-zero deviations.
  std::shared_ptr<ReferenceSolution> reference;
  std::shared_ptr<ReferenceSolution> initial;

  ErrorAgainst error_against = ErrorAgainst::none;
  std::vector<std::uint8_t> frozen; // interior mask of cells held fixed

  int nvars() const { return sys.nvars(); }
  int ncells() const {
    return two_dimensional ? grid2->nx * grid2->ny : grid1->nx;
  }
};

Problem build_case(const std::string& id, const CaseOptions& opt = {});

// Hydrostatic column for the tabulated-reference test: ideal gas with
// radiation pressure, potential increasing along the profile coordinate s
// with |grad phi| = sqrt(2), temperature 1 - 0.1 phi, anchored at rho = 1
// where phi = 0. dp/ds = -sqrt(2) rho is integrated with an adaptive
// embedded Runge-Kutta pair to ~1e-12 and sampled at `samples` points.
TabulatedProfile1D radiative_hydrostatic_profile(int samples = 10000,
                                                 double s_lo = -0.3,
                                                 double s_hi = 1.7142135624);

// sum_i V_i |rho_i - 1| r_i over unfrozen interior cells; the ratio of final
// to initial values is the advected-mass distance metric of the disk test.
double disk_distance_metric(const Problem& p, const std::vector<double>& avgs);

// L1 norm of the error in |v - v_advect| against the exact vortex-pair
// solution at time t, restricted to the disk of radius 0.4 around the
// tracked vortex center. `avgs` holds full conservative interior averages.
double gresho_disk_velocity_error(const Problem& p,
                                  const std::vector<double>& avgs, double t);

} // namespace wbfv
