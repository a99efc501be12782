#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "wbfv/grid.hpp"
#include "wbfv/physics.hpp"

namespace wbfv {

// A reference solution q~(x, t): conservative states the scheme preserves
// exactly when the evolved deviations vanish. Implementations provide point
// values at interface quadrature points (single-valued across interfaces)
// and cell averages on the solver grid.
class ReferenceSolution {
public:
  virtual ~ReferenceSolution() = default;

  virtual int nvars() const = 0;
  virtual bool time_dependent() const = 0;

  // Called once per evaluation time before point/average queries; discrete
  // references rebuild their working data here.
  virtual void prepare(double /*t*/) {}

  // Conservative point value. owner_i/owner_j locate the cell the query
  // point belongs to (for interface points: one of the two adjacent cells,
  // consistently the lower-index one); analytic references ignore the hint.
  virtual void point_value(double x, double y, double t, int owner_i,
                           int owner_j, double* out) const = 0;

  // Bulk form over n points at one time, nvars() values per point. The
  // semi-discrete operators refresh their interface caches through this
  // call, so it sits on the hot path of time-dependent references.
  virtual void point_values(const double* xs, const double* ys, double t,
                            const int* owner_i, const int* owner_j,
                            std::size_t n, double* out) const {
    const int nv = nvars();
    for (std::size_t k = 0; k < n; ++k)
      point_value(xs[k], ys[k], t, owner_i[k], owner_j[k],
                  out + k * static_cast<std::size_t>(nv));
  }

  // Cell average on the solver grid. Ghost-cell indices are valid for
  // analytic and table references; discrete references throw CoverageError.
  virtual void cell_average(int i, int j, double t, double* out) const = 0;
};

// Reference given by a closed-form conservative state function. Cell
// averages are tensor Gauss quadrature on Cartesian grids (exceeding the
// supported scheme orders) and midpoint values on curvilinear grids
// (matching their second-order geometry).
class AnalyticReference final : public ReferenceSolution {
public:
  using StateFn =
      std::function<void(double x, double y, double t, double* out)>;

  AnalyticReference(int nvars, const Grid2D* grid, StateFn fn,
                    bool time_dependent, int quad_points = 3);
  AnalyticReference(int nvars, const Grid1D* grid, StateFn fn,
                    bool time_dependent, int quad_points = 5);

  int nvars() const override { return nv_; }
  bool time_dependent() const override { return time_dep_; }
  void point_value(double x, double y, double t, int, int,
                   double* out) const override {
    fn_(x, y, t, out);
  }
  void point_values(const double* xs, const double* ys, double t, const int*,
                    const int*, std::size_t n, double* out) const override {
    for (std::size_t k = 0; k < n; ++k)
      fn_(xs[k], ys[k], t, out + k * static_cast<std::size_t>(nv_));
  }
  void cell_average(int i, int j, double t, double* out) const override;

private:
  int nv_;
  const Grid2D* g2_ = nullptr;
  const Grid1D* g1_ = nullptr;
  StateFn fn_;
  bool time_dep_;
  int quad_;
};

std::unique_ptr<ReferenceSolution> make_analytic_reference(
    const System& sys, const Grid2D& grid, AnalyticReference::StateFn fn,
    bool time_dependent);
std::unique_ptr<ReferenceSolution> make_analytic_reference(
    const System& sys, const Grid1D& grid, AnalyticReference::StateFn fn,
    bool time_dependent);

} // namespace wbfv
