#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wbfv/boundary.hpp"
#include "wbfv/field.hpp"
#include "wbfv/grid.hpp"
#include "wbfv/numflux.hpp"
#include "wbfv/physics.hpp"
#include "wbfv/reconstruct.hpp"
#include "wbfv/reference.hpp"

namespace wbfv {

// Spatial scheme selection. Orders map onto reconstructions as
// 1 -> constant, 2 -> minmod, 3 -> cweno3 and 7 -> cweno7 (1-D only).
struct SchemeConfig {
  int order = 3;
  FluxKind flux = FluxKind::llf;
  bool well_balanced = true;
  // Evaluate the reference separately on both sides of each interface and
  // subtract the numerical flux of that pair instead of the exact flux.
  // Needed when the reference jumps across interfaces; coincides with the
  // one-sided form wherever the two traces agree.
  bool two_sided_reference = false;
  double cfl = 0.0; // <= 0 selects the default: 0.9 in 1-D, 0.45 in 2-D
};

ReconKind recon_for_order(int order, bool two_dimensional);
int ghost_layers_for_order(int order, bool two_dimensional);

// Interface flux of the deviation form,
//   F_hat(dqL + q~, dqR + q~) - F(q~) . n,
// built so that zero deviations give exactly zero: the numerical flux of
// two copies of q~ reproduces the exact flux bitwise.
void flux_difference(const System& sys, FluxKind kind, const double* dqL,
                     const double* dqR, const double* qref, double phi_pt,
                     double nx, double ny, double* out);

// Discontinuous-reference variant subtracting F_hat(q~L, q~R).
void flux_difference_two_sided(const System& sys, FluxKind kind,
                               const double* dqL, const double* dqR,
                               const double* qrefL, const double* qrefR,
                               double phi_pt, double nx, double ny,
                               double* out);

// Semi-discrete finite-volume operator du/dt = L(u, t) on a 1-D grid. In
// well-balanced mode u holds cell-averaged deviations from the reference
// solution and L vanishes exactly on zero deviations; in standard mode u
// holds the conservative averages themselves. States are flat arrays in the
// Field layout with the grid's ghost count.
class Semidiscrete1D {
public:
  Semidiscrete1D(const Grid1D& grid, System sys, SchemeConfig cfg,
                 BoundarySpec1D bc, std::shared_ptr<ReferenceSolution> ref);

  std::size_t state_size() const { return work_.size(); }
  Field make_state() const { return Field::like(work_); }

  // d/dt of every interior cell average; u's ghost cells are refilled.
  void rhs(std::vector<double>& u, double t, std::vector<double>& dudt);

  // Largest stable step at time t under the CFL condition.
  double max_dt(const std::vector<double>& u, double t);

  const Grid1D& grid() const { return g_; }
  const System& system() const { return sys_; }
  const SchemeConfig& config() const { return cfg_; }
  const ReferenceSolution* reference() const { return ref_.get(); }
  int nvars() const { return sys_.nvars(); }

private:
  void refresh_traces(double t);
  void refresh_averages(double t);

  Grid1D g_;
  System sys_;
  SchemeConfig cfg_;
  BoundarySpec1D bc_;
  std::shared_ptr<ReferenceSolution> ref_;
  ReconKind recon_;

  Field work_;
  ReconCoeffs coeffs_;
  std::vector<double> fhat_;

  std::vector<double> phif_; // potential at interfaces
  std::vector<double> phic_; // potential at interior centers
  std::vector<double> gxc_;  // d(phi)/dx at interior centers
  std::vector<double> gpoly_; // per-cell interpolants of d(phi)/dx, order >= 3
  int gnp_ = 0;

  std::vector<double> fpx_, fpy_; // interface point coordinates
  std::vector<int> foiL_, foiR_, foj_; // owner hints per interface point

  // Reference data caches: interface traces and subtracted fluxes feed the
  // right-hand side, interior cell averages feed the CFL scan. Static
  // references fill both once at construction.
  bool have_tr_ = false;
  double tr_t_ = 0.0;
  std::vector<double> qref_f_;  // reference trace at interfaces (left owner)
  std::vector<double> qref_fr_; // right-owner trace, two-sided mode
  std::vector<double> fref_f_;  // subtracted reference flux
  bool have_avg_ = false;
  double avg_t_ = 0.0;
  std::vector<double> qref_c_;  // interior reference cell averages
};

// 2-D counterpart on Cartesian or curvilinear structured grids.
class Semidiscrete2D {
public:
  Semidiscrete2D(const Grid2D& grid, System sys, SchemeConfig cfg,
                 BoundarySpec2D bc, std::shared_ptr<ReferenceSolution> ref);

  std::size_t state_size() const { return work_.size(); }
  Field make_state() const { return Field::like(work_); }

  void rhs(std::vector<double>& u, double t, std::vector<double>& dudt);
  double max_dt(const std::vector<double>& u, double t);

  // Freezes cells (d/dt forced to zero): mask is interior row-major nx*ny,
  // nonzero entries are held fixed and skipped by the CFL scan.
  void set_frozen(std::vector<std::uint8_t> mask);

  const Grid2D& grid() const { return g_; }
  const System& system() const { return sys_; }
  const SchemeConfig& config() const { return cfg_; }
  const ReferenceSolution* reference() const { return ref_.get(); }
  int nvars() const { return sys_.nvars(); }

private:
  // Reference interface data at one evaluation time. Two slots are kept:
  // Runge-Kutta stage times revisit each other (ssprk43 hits t + dt/2 twice
  // and the next step starts where the last one ended), so a current/previous
  // pair halves the refresh count for time-dependent references.
  struct TraceSlot {
    bool valid = false;
    double t = 0.0;
    std::vector<double> qxf, qxf_r, fxf; // reference data at x-interfaces
    std::vector<double> qyf, qyf_r, fyf; // and at y-interfaces
  };

  const TraceSlot& traces(double t);
  void fill_traces(TraceSlot& slot, double t);
  void refresh_averages(double t);
  std::size_t cidx(int i, int j) const {
    return (static_cast<std::size_t>(j + g_.ng) * (g_.nx + 2 * g_.ng) +
            (i + g_.ng)) *
           static_cast<std::size_t>(sys_.nvars());
  }

  Grid2D g_;
  System sys_;
  SchemeConfig cfg_;
  BoundarySpec2D bc_;
  std::shared_ptr<ReferenceSolution> ref_;
  ReconKind recon_;
  InterfaceTable itab_;

  Field work_;
  ReconCoeffs coeffs_;
  std::vector<std::uint8_t> frozen_;

  std::vector<double> phixf_, phiyf_; // potential at interface points
  std::vector<double> phic_;          // potential at interior centers
  std::vector<double> gxc_, gyc_;     // gradient at interior centers
  std::vector<double> gxpoly_, gypoly_; // per-cell gradient interpolants, order 3
  std::vector<double> hx_, hy_;       // per-cell directional widths for CFL

  // owner hints per interface quadrature point, left and right cell
  std::vector<int> xoiL_, xoiR_, xoj_;
  std::vector<int> yoi_, yojL_, yojR_;

  TraceSlot tr_[2];
  int tr_cur_ = 0;
  bool have_avg_ = false;
  double avg_t_ = 0.0;
  std::vector<double> qref_c_;
};

} // namespace wbfv
