#include "wbfv/reference.hpp"

#include "wbfv/quadrature.hpp"

namespace wbfv {

AnalyticReference::AnalyticReference(int nvars, const Grid2D* grid, StateFn fn,
                                     bool time_dependent, int quad_points)
    : nv_(nvars), g2_(grid), fn_(std::move(fn)), time_dep_(time_dependent),
      quad_(quad_points) {
  if (!g2_) throw ConstructionError("AnalyticReference: null grid");
}

AnalyticReference::AnalyticReference(int nvars, const Grid1D* grid, StateFn fn,
                                     bool time_dependent, int quad_points)
    : nv_(nvars), g1_(grid), fn_(std::move(fn)), time_dep_(time_dependent),
      quad_(quad_points) {
  if (!g1_) throw ConstructionError("AnalyticReference: null grid");
}

void AnalyticReference::cell_average(int i, int j, double t,
                                     double* out) const {
  double state[6];
  if (g1_) {
    const GaussRule g = gauss_rule(quad_);
    const double xc = g1_->center(i);
    for (int v = 0; v < nv_; ++v) out[v] = 0.0;
    for (int k = 0; k < g.n; ++k) {
      fn_(xc + g.nodes[k] * g1_->dx, 0.0, t, state);
      for (int v = 0; v < nv_; ++v) out[v] += g.weights[k] * state[v];
    }
    return;
  }
  if (g2_->kind == GridKind::cartesian) {
    const GaussRule g = gauss_rule(quad_);
    const double xc = g2_->center_x(i, j), yc = g2_->center_y(i, j);
    for (int v = 0; v < nv_; ++v) out[v] = 0.0;
    for (int ky = 0; ky < g.n; ++ky)
      for (int kx = 0; kx < g.n; ++kx) {
        fn_(xc + g.nodes[kx] * g2_->dxi, yc + g.nodes[ky] * g2_->deta, t,
            state);
        const double w = g.weights[kx] * g.weights[ky];
        for (int v = 0; v < nv_; ++v) out[v] += w * state[v];
      }
    return;
  }
  // curvilinear: midpoint value, consistent with the second-order metric
  fn_(g2_->center_x(i, j), g2_->center_y(i, j), t, out);
}

std::unique_ptr<ReferenceSolution> make_analytic_reference(
    const System& sys, const Grid2D& grid, AnalyticReference::StateFn fn,
    bool time_dependent) {
  return std::make_unique<AnalyticReference>(sys.nvars(), &grid, std::move(fn),
                                             time_dependent);
}

std::unique_ptr<ReferenceSolution> make_analytic_reference(
    const System& sys, const Grid1D& grid, AnalyticReference::StateFn fn,
    bool time_dependent) {
  return std::make_unique<AnalyticReference>(sys.nvars(), &grid, std::move(fn),
                                             time_dependent);
}

} // namespace wbfv
