#include "wbfv/wellbalance.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wbfv/source.hpp"

namespace wbfv {

namespace {
constexpr int kMaxVars = 6;
constexpr double kS35Half = 0.38729833462074168852; // sqrt(3/5)/2
} // namespace

ReconKind recon_for_order(int order, bool two_dimensional) {
  switch (order) {
  case 1: return ReconKind::constant;
  case 2: return ReconKind::minmod;
  case 3: return ReconKind::cweno3;
  case 7:
    if (two_dimensional)
      throw ConstructionError("order 7 is available in one dimension only");
    return ReconKind::cweno7;
  default:
    throw ConstructionError("unsupported spatial order " +
                            std::to_string(order));
  }
}

int ghost_layers_for_order(int order, bool two_dimensional) {
  return recon_radius(recon_for_order(order, two_dimensional)) + 1;
}

void flux_difference(const System& sys, FluxKind kind, const double* dqL,
                     const double* dqR, const double* qref, double phi_pt,
                     double nx, double ny, double* out) {
  const int nv = sys.nvars();
  double qL[kMaxVars] = {0}, qR[kMaxVars] = {0}, fref[kMaxVars];
  for (int v = 0; v < nv; ++v) {
    qL[v] = dqL[v] + qref[v];
    qR[v] = dqR[v] + qref[v];
  }
  numerical_flux(sys, kind, qL, qR, phi_pt, nx, ny, out);
  sys.flux(qref, phi_pt, nx, ny, fref);
  for (int v = 0; v < nv; ++v) out[v] -= fref[v];
}

void flux_difference_two_sided(const System& sys, FluxKind kind,
                               const double* dqL, const double* dqR,
                               const double* qrefL, const double* qrefR,
                               double phi_pt, double nx, double ny,
                               double* out) {
  const int nv = sys.nvars();
  double qL[kMaxVars] = {0}, qR[kMaxVars] = {0}, fref[kMaxVars];
  for (int v = 0; v < nv; ++v) {
    qL[v] = dqL[v] + qrefL[v];
    qR[v] = dqR[v] + qrefR[v];
  }
  numerical_flux(sys, kind, qL, qR, phi_pt, nx, ny, out);
  numerical_flux(sys, kind, qrefL, qrefR, phi_pt, nx, ny, fref);
  for (int v = 0; v < nv; ++v) out[v] -= fref[v];
}

Semidiscrete1D::Semidiscrete1D(const Grid1D& grid, System sys,
                               SchemeConfig cfg, BoundarySpec1D bc,
                               std::shared_ptr<ReferenceSolution> ref)
    : g_(grid), sys_(std::move(sys)), cfg_(cfg), bc_(bc),
      ref_(std::move(ref)) {
  if (sys_.two_dimensional())
    throw ConstructionError("1-D operator requires a 1-D system");
  recon_ = recon_for_order(cfg_.order, false);
  const int need = ghost_layers_for_order(cfg_.order, false);
  if (g_.ng < need)
    throw ConstructionError("order " + std::to_string(cfg_.order) + " needs " +
                            std::to_string(need) + " ghost layers, grid has " +
                            std::to_string(g_.ng));
  if (cfg_.well_balanced && !ref_)
    throw ConstructionError("well-balanced mode requires a reference solution");
  if (ref_ && ref_->nvars() != sys_.nvars())
    throw ConstructionError("reference variable count does not match system");
  if (cfg_.cfl <= 0.0) cfg_.cfl = 0.9;

  const int nv = sys_.nvars();
  const int nx = g_.nx;
  work_ = Field(nx, 1, nv, g_.ng, 0);
  fhat_.assign(static_cast<std::size_t>(nx + 1) * nv, 0.0);

  phif_.resize(nx + 1);
  for (int f = 0; f <= nx; ++f) phif_[f] = sys_.gravity.at(g_.left(f), 0.0);
  phic_.resize(nx);
  for (int i = 0; i < nx; ++i) phic_[i] = sys_.gravity.at(g_.center(i), 0.0);

  if (sys_.gravity.present) {
    gxc_.resize(nx);
    for (int i = 0; i < nx; ++i) {
      double gx = 0.0, gy = 0.0;
      sys_.gravity.grad(g_.center(i), 0.0, gx, gy);
      gxc_[i] = gx;
    }
    if (cfg_.order >= 3) {
      gnp_ = (cfg_.order == 7) ? 7 : 3;
      const int r = gnp_ / 2;
      gpoly_.resize(static_cast<std::size_t>(nx) * gnp_);
      std::vector<double> vals(gnp_);
      for (int i = 0; i < nx; ++i) {
        for (int w = -r; w <= r; ++w) {
          double gx = 0.0, gy = 0.0;
          sys_.gravity.grad(g_.center(i + w), 0.0, gx, gy);
          vals[static_cast<std::size_t>(w + r)] = gx;
        }
        if (gnp_ == 3)
          interp_centers_quadratic(vals.data(), &gpoly_[static_cast<std::size_t>(i) * 3]);
        else
          interp_centers_deg6(vals.data(), &gpoly_[static_cast<std::size_t>(i) * 7]);
      }
    }
  }

  if (cfg_.well_balanced) {
    fpx_.resize(nx + 1);
    fpy_.assign(nx + 1, 0.0);
    foiL_.resize(nx + 1);
    foiR_.resize(nx + 1);
    foj_.assign(nx + 1, 0);
    for (int f = 0; f <= nx; ++f) {
      fpx_[f] = g_.left(f);
      foiL_[f] = f - 1;
      foiR_[f] = f;
    }
    // static references: fill both caches here, outside any timed loop
    if (!ref_->time_dependent()) {
      ref_->prepare(0.0);
      refresh_traces(0.0);
      refresh_averages(0.0);
    }
  }
}

void Semidiscrete1D::refresh_traces(double t) {
  if (have_tr_ && (!ref_->time_dependent() || tr_t_ == t)) return;
  const int nv = sys_.nvars();
  const int nx = g_.nx;
  const std::size_t np = static_cast<std::size_t>(nx) + 1;
  qref_f_.resize(np * nv);
  fref_f_.resize(np * nv);
  ref_->point_values(fpx_.data(), fpy_.data(), t, foiL_.data(), foj_.data(),
                     np, qref_f_.data());
  if (cfg_.two_sided_reference) {
    qref_fr_.resize(np * nv);
    ref_->point_values(fpx_.data(), fpy_.data(), t, foiR_.data(), foj_.data(),
                       np, qref_fr_.data());
    for (int f = 0; f <= nx; ++f)
      numerical_flux(sys_, cfg_.flux, &qref_f_[static_cast<std::size_t>(f) * nv],
                     &qref_fr_[static_cast<std::size_t>(f) * nv], phif_[f], 1.0,
                     0.0, &fref_f_[static_cast<std::size_t>(f) * nv]);
  } else {
    for (int f = 0; f <= nx; ++f)
      sys_.flux(&qref_f_[static_cast<std::size_t>(f) * nv], phif_[f], 1.0, 0.0,
                &fref_f_[static_cast<std::size_t>(f) * nv]);
  }
  tr_t_ = t;
  have_tr_ = true;
}

void Semidiscrete1D::refresh_averages(double t) {
  if (have_avg_ && (!ref_->time_dependent() || avg_t_ == t)) return;
  const int nv = sys_.nvars();
  qref_c_.resize(static_cast<std::size_t>(g_.nx) * nv);
  for (int i = 0; i < g_.nx; ++i)
    ref_->cell_average(i, 0, t, &qref_c_[static_cast<std::size_t>(i) * nv]);
  avg_t_ = t;
  have_avg_ = true;
}

void Semidiscrete1D::rhs(std::vector<double>& u, double t,
                         std::vector<double>& dudt) {
  if (u.size() != work_.size())
    throw ConstructionError("state size does not match the operator");
  const int nv = sys_.nvars();
  const int nx = g_.nx;
  const int ng = g_.ng;
  dudt.assign(u.size(), 0.0);

  if (ref_) ref_->prepare(t);
  if (cfg_.well_balanced) refresh_traces(t);

  std::swap(u, work_.raw());
  fill_ghosts_1d(work_, g_, bc_, ref_.get(), t, cfg_.well_balanced);
  reconstruct_1d(recon_, work_, -1, nx + 1, coeffs_);
  std::swap(u, work_.raw());

  const int ncoef = recon_ncoef_1d(recon_);
  double dqL[kMaxVars], dqR[kMaxVars], qL[kMaxVars], qR[kMaxVars];
  for (int f = 0; f <= nx; ++f) {
    for (int v = 0; v < nv; ++v) {
      dqL[v] = eval_poly_1d(coeffs_.at(f - 1, 0, v), ncoef, 0.5);
      dqR[v] = eval_poly_1d(coeffs_.at(f, 0, v), ncoef, -0.5);
    }
    double* fh = &fhat_[static_cast<std::size_t>(f) * nv];
    if (!cfg_.well_balanced) {
      numerical_flux(sys_, cfg_.flux, dqL, dqR, phif_[f], 1.0, 0.0, fh);
    } else {
      const double* qtL = &qref_f_[static_cast<std::size_t>(f) * nv];
      const double* qtR =
          cfg_.two_sided_reference ? &qref_fr_[static_cast<std::size_t>(f) * nv] : qtL;
      for (int v = 0; v < nv; ++v) {
        qL[v] = dqL[v] + qtL[v];
        qR[v] = dqR[v] + qtR[v];
      }
      numerical_flux(sys_, cfg_.flux, qL, qR, phif_[f], 1.0, 0.0, fh);
      const double* fr = &fref_f_[static_cast<std::size_t>(f) * nv];
      for (int v = 0; v < nv; ++v) fh[v] -= fr[v];
    }
  }

  const double inv_dx = 1.0 / g_.dx;
  for (int i = 0; i < nx; ++i) {
    double* d = &dudt[(static_cast<std::size_t>(i) + ng) * nv];
    const double* fl = &fhat_[static_cast<std::size_t>(i) * nv];
    const double* fr = &fhat_[static_cast<std::size_t>(i + 1) * nv];
    for (int v = 0; v < nv; ++v) d[v] = (fl[v] - fr[v]) * inv_dx;
    if (sys_.gravity.present) {
      if (cfg_.order <= 2) {
        const double rho = u[(static_cast<std::size_t>(i) + ng) * nv];
        d[1] -= rho * gxc_[i];
      } else {
        const double* rc = coeffs_.at(i, 0, 0);
        d[1] -= product_average_1d(rc, ncoef,
                                   &gpoly_[static_cast<std::size_t>(i) * gnp_], gnp_);
      }
    }
  }
}

double Semidiscrete1D::max_dt(const std::vector<double>& u, double t) {
  if (u.size() != work_.size())
    throw ConstructionError("state size does not match the operator");
  if (ref_) ref_->prepare(t);
  if (cfg_.well_balanced) refresh_averages(t);
  const int nv = sys_.nvars();
  const int ng = g_.ng;
  double amax = 0.0;
  double q[kMaxVars];
  for (int i = 0; i < g_.nx; ++i) {
    const double* s = &u[(static_cast<std::size_t>(i) + ng) * nv];
    if (cfg_.well_balanced) {
      const double* qr = &qref_c_[static_cast<std::size_t>(i) * nv];
      for (int v = 0; v < nv; ++v) q[v] = s[v] + qr[v];
    } else {
      for (int v = 0; v < nv; ++v) q[v] = s[v];
    }
    amax = std::max(amax, sys_.max_signal_speed(q, phic_[i], 1.0, 0.0));
  }
  if (!(amax > 0.0)) throw StateError("no positive signal speed on the grid");
  return cfg_.cfl * g_.dx / amax;
}

Semidiscrete2D::Semidiscrete2D(const Grid2D& grid, System sys,
                               SchemeConfig cfg, BoundarySpec2D bc,
                               std::shared_ptr<ReferenceSolution> ref)
    : g_(grid), sys_(std::move(sys)), cfg_(cfg), bc_(bc), ref_(std::move(ref)),
      recon_(recon_for_order(cfg.order, true)),
      itab_(interface_quadrature(grid, cfg.order)) {
  if (!sys_.two_dimensional())
    throw ConstructionError("2-D operator requires a 2-D system");
  if (g_.kind != GridKind::cartesian && cfg_.order > 2)
    throw ConstructionError(
        "curvilinear grids support orders 1 and 2 only (second-order cell "
        "geometry); requested order " +
        std::to_string(cfg_.order));
  const int need = ghost_layers_for_order(cfg_.order, true);
  if (g_.ng < need)
    throw ConstructionError("order " + std::to_string(cfg_.order) + " needs " +
                            std::to_string(need) + " ghost layers, grid has " +
                            std::to_string(g_.ng));
  if (cfg_.well_balanced && !ref_)
    throw ConstructionError("well-balanced mode requires a reference solution");
  if (ref_ && ref_->nvars() != sys_.nvars())
    throw ConstructionError("reference variable count does not match system");
  if (cfg_.cfl <= 0.0) cfg_.cfl = 0.45;

  const int nv = sys_.nvars();
  const int nx = g_.nx, ny = g_.ny;
  work_ = Field(nx, ny, nv, g_.ng, g_.ng);

  const int mq = itab_.mq;
  phixf_.resize(static_cast<std::size_t>(itab_.n_xf()) * mq);
  for (std::size_t p = 0; p < phixf_.size(); ++p)
    phixf_[p] = sys_.gravity.at(itab_.xf_px[p], itab_.xf_py[p]);
  phiyf_.resize(static_cast<std::size_t>(itab_.n_yf()) * mq);
  for (std::size_t p = 0; p < phiyf_.size(); ++p)
    phiyf_[p] = sys_.gravity.at(itab_.yf_px[p], itab_.yf_py[p]);

  phic_.resize(static_cast<std::size_t>(nx) * ny);
  hx_.resize(static_cast<std::size_t>(nx) * ny);
  hy_.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * nx + i;
      phic_[c] = sys_.gravity.at(g_.center_x(i, j), g_.center_y(i, j));
      const double vol = g_.volume(i, j);
      hx_[c] = vol / (0.5 * (itab_.xf_measure[itab_.xf(i, j)] +
                             itab_.xf_measure[itab_.xf(i + 1, j)]));
      hy_[c] = vol / (0.5 * (itab_.yf_measure[itab_.yf(i, j)] +
                             itab_.yf_measure[itab_.yf(i, j + 1)]));
    }
  }

  if (sys_.gravity.present) {
    gxc_.resize(static_cast<std::size_t>(nx) * ny);
    gyc_.resize(static_cast<std::size_t>(nx) * ny);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = static_cast<std::size_t>(j) * nx + i;
        sys_.gravity.grad(g_.center_x(i, j), g_.center_y(i, j), gxc_[c], gyc_[c]);
      }
    if (cfg_.order >= 3) {
      gxpoly_.resize(static_cast<std::size_t>(nx) * ny * 6);
      gypoly_.resize(static_cast<std::size_t>(nx) * ny * 6);
      double wx[9], wy[9];
      for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
          for (int b = -1; b <= 1; ++b)
            for (int a = -1; a <= 1; ++a)
              sys_.gravity.grad(g_.center_x(i + a, j + b),
                                g_.center_y(i + a, j + b),
                                wx[(b + 1) * 3 + (a + 1)],
                                wy[(b + 1) * 3 + (a + 1)]);
          const std::size_t c = static_cast<std::size_t>(j) * nx + i;
          interp_centers_2d(wx, &gxpoly_[c * 6]);
          interp_centers_2d(wy, &gypoly_[c * 6]);
        }
    }
  }

  if (cfg_.well_balanced) {
    xoiL_.resize(phixf_.size());
    xoiR_.resize(phixf_.size());
    xoj_.resize(phixf_.size());
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i <= nx; ++i) {
        const int f = itab_.xf(i, j);
        for (int q = 0; q < mq; ++q) {
          const std::size_t p = static_cast<std::size_t>(f) * mq + q;
          xoiL_[p] = i - 1;
          xoiR_[p] = i;
          xoj_[p] = j;
        }
      }
    yoi_.resize(phiyf_.size());
    yojL_.resize(phiyf_.size());
    yojR_.resize(phiyf_.size());
    for (int j = 0; j <= ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int f = itab_.yf(i, j);
        for (int q = 0; q < mq; ++q) {
          const std::size_t p = static_cast<std::size_t>(f) * mq + q;
          yoi_[p] = i;
          yojL_[p] = j - 1;
          yojR_[p] = j;
        }
      }
    // static references: fill both caches here, outside any timed loop
    if (!ref_->time_dependent()) {
      ref_->prepare(0.0);
      fill_traces(tr_[0], 0.0);
      refresh_averages(0.0);
    }
  }
}

void Semidiscrete2D::set_frozen(std::vector<std::uint8_t> mask) {
  if (!mask.empty() &&
      mask.size() != static_cast<std::size_t>(g_.nx) * g_.ny)
    throw ConstructionError("frozen mask must be nx*ny interior cells");
  frozen_ = std::move(mask);
}

void Semidiscrete2D::refresh_reference(double t) {
  if (have_cache_ && (!ref_->time_dependent() || cache_t_ == t)) return;
  const int nv = sys_.nvars();
  const int mq = itab_.mq;
  const bool two = cfg_.two_sided_reference;

  qxf_.resize(static_cast<std::size_t>(itab_.n_xf()) * mq * nv);
  fxf_.resize(qxf_.size());
  if (two) qxf_r_.resize(qxf_.size());
  for (int j = 0; j < g_.ny; ++j)
    for (int i = 0; i <= g_.nx; ++i) {
      const int f = itab_.xf(i, j);
      for (int q = 0; q < mq; ++q) {
        const std::size_t p = static_cast<std::size_t>(f) * mq + q;
        double* qL = &qxf_[p * nv];
        ref_->point_value(itab_.xf_px[p], itab_.xf_py[p], t, i - 1, j, qL);
        if (two) {
          double* qR = &qxf_r_[p * nv];
          ref_->point_value(itab_.xf_px[p], itab_.xf_py[p], t, i, j, qR);
          numerical_flux(sys_, cfg_.flux, qL, qR, phixf_[p], itab_.xf_nx[f],
                         itab_.xf_ny[f], &fxf_[p * nv]);
        } else {
          sys_.flux(qL, phixf_[p], itab_.xf_nx[f], itab_.xf_ny[f],
                    &fxf_[p * nv]);
        }
      }
    }

  qyf_.resize(static_cast<std::size_t>(itab_.n_yf()) * mq * nv);
  fyf_.resize(qyf_.size());
  if (two) qyf_r_.resize(qyf_.size());
  for (int j = 0; j <= g_.ny; ++j)
    for (int i = 0; i < g_.nx; ++i) {
      const int f = itab_.yf(i, j);
      for (int q = 0; q < mq; ++q) {
        const std::size_t p = static_cast<std::size_t>(f) * mq + q;
        double* qL = &qyf_[p * nv];
        ref_->point_value(itab_.yf_px[p], itab_.yf_py[p], t, i, j - 1, qL);
        if (two) {
          double* qR = &qyf_r_[p * nv];
          ref_->point_value(itab_.yf_px[p], itab_.yf_py[p], t, i, j, qR);
          numerical_flux(sys_, cfg_.flux, qL, qR, phiyf_[p], itab_.yf_nx[f],
                         itab_.yf_ny[f], &fyf_[p * nv]);
        } else {
          sys_.flux(qL, phiyf_[p], itab_.yf_nx[f], itab_.yf_ny[f],
                    &fyf_[p * nv]);
        }
      }
    }

  qref_c_.resize(static_cast<std::size_t>(g_.nx) * g_.ny * nv);
  for (int j = 0; j < g_.ny; ++j)
    for (int i = 0; i < g_.nx; ++i)
      ref_->cell_average(i, j, t,
                         &qref_c_[(static_cast<std::size_t>(j) * g_.nx + i) * nv]);
  cache_t_ = t;
  have_cache_ = true;
}

void Semidiscrete2D::rhs(std::vector<double>& u, double t,
                         std::vector<double>& dudt) {
  if (u.size() != work_.size())
    throw ConstructionError("state size does not match the operator");
  const int nv = sys_.nvars();
  const int nx = g_.nx, ny = g_.ny;
  dudt.assign(u.size(), 0.0);

  if (ref_) ref_->prepare(t);
  if (cfg_.well_balanced) refresh_reference(t);

  std::swap(u, work_.raw());
  fill_ghosts_2d(work_, g_, bc_, ref_.get(), t, cfg_.well_balanced);
  reconstruct_2d(recon_, work_, -1, nx + 1, -1, ny + 1, coeffs_);
  std::swap(u, work_.raw());

  const int ncoef = recon_ncoef_2d(recon_);
  const int mq = itab_.mq;
  const double toff[3] = {-kS35Half, 0.0, kS35Half};
  const bool wb = cfg_.well_balanced;
  const bool two = cfg_.two_sided_reference;
  double dqL[kMaxVars], dqR[kMaxVars], qL[kMaxVars], qR[kMaxVars];
  double fh[kMaxVars], favg[kMaxVars];

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      const int f = itab_.xf(i, j);
      const double fnx = itab_.xf_nx[f], fny = itab_.xf_ny[f];
      for (int v = 0; v < nv; ++v) favg[v] = 0.0;
      for (int q = 0; q < mq; ++q) {
        const double off = (mq == 1) ? 0.0 : toff[q];
        for (int v = 0; v < nv; ++v) {
          dqL[v] = eval_poly_2d(coeffs_.at(i - 1, j, v), ncoef, 0.5, off);
          dqR[v] = eval_poly_2d(coeffs_.at(i, j, v), ncoef, -0.5, off);
        }
        const std::size_t p = static_cast<std::size_t>(f) * mq + q;
        if (!wb) {
          numerical_flux(sys_, cfg_.flux, dqL, dqR, phixf_[p], fnx, fny, fh);
        } else {
          const double* qtL = &qxf_[p * nv];
          const double* qtR = two ? &qxf_r_[p * nv] : qtL;
          for (int v = 0; v < nv; ++v) {
            qL[v] = dqL[v] + qtL[v];
            qR[v] = dqR[v] + qtR[v];
          }
          numerical_flux(sys_, cfg_.flux, qL, qR, phixf_[p], fnx, fny, fh);
          const double* fr = &fxf_[p * nv];
          for (int v = 0; v < nv; ++v) fh[v] -= fr[v];
        }
        const double w = itab_.weights[static_cast<std::size_t>(q)];
        for (int v = 0; v < nv; ++v) favg[v] += w * fh[v];
      }
      const double area = itab_.xf_measure[f];
      if (i > 0) {
        double* d = &dudt[cidx(i - 1, j)];
        const double s = area / g_.volume(i - 1, j);
        for (int v = 0; v < nv; ++v) d[v] -= s * favg[v];
      }
      if (i < nx) {
        double* d = &dudt[cidx(i, j)];
        const double s = area / g_.volume(i, j);
        for (int v = 0; v < nv; ++v) d[v] += s * favg[v];
      }
    }
  }

  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int f = itab_.yf(i, j);
      const double fnx = itab_.yf_nx[f], fny = itab_.yf_ny[f];
      for (int v = 0; v < nv; ++v) favg[v] = 0.0;
      for (int q = 0; q < mq; ++q) {
        const double off = (mq == 1) ? 0.0 : toff[q];
        for (int v = 0; v < nv; ++v) {
          dqL[v] = eval_poly_2d(coeffs_.at(i, j - 1, v), ncoef, off, 0.5);
          dqR[v] = eval_poly_2d(coeffs_.at(i, j, v), ncoef, off, -0.5);
        }
        const std::size_t p = static_cast<std::size_t>(f) * mq + q;
        if (!wb) {
          numerical_flux(sys_, cfg_.flux, dqL, dqR, phiyf_[p], fnx, fny, fh);
        } else {
          const double* qtL = &qyf_[p * nv];
          const double* qtR = two ? &qyf_r_[p * nv] : qtL;
          for (int v = 0; v < nv; ++v) {
            qL[v] = dqL[v] + qtL[v];
            qR[v] = dqR[v] + qtR[v];
          }
          numerical_flux(sys_, cfg_.flux, qL, qR, phiyf_[p], fnx, fny, fh);
          const double* fr = &fyf_[p * nv];
          for (int v = 0; v < nv; ++v) fh[v] -= fr[v];
        }
        const double w = itab_.weights[static_cast<std::size_t>(q)];
        for (int v = 0; v < nv; ++v) favg[v] += w * fh[v];
      }
      const double area = itab_.yf_measure[f];
      if (j > 0) {
        double* d = &dudt[cidx(i, j - 1)];
        const double s = area / g_.volume(i, j - 1);
        for (int v = 0; v < nv; ++v) d[v] -= s * favg[v];
      }
      if (j < ny) {
        double* d = &dudt[cidx(i, j)];
        const double s = area / g_.volume(i, j);
        for (int v = 0; v < nv; ++v) d[v] += s * favg[v];
      }
    }
  }

  if (sys_.gravity.present) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const std::size_t c = static_cast<std::size_t>(j) * nx + i;
        double* d = &dudt[cidx(i, j)];
        if (cfg_.order <= 2) {
          const double rho = u[cidx(i, j)];
          d[1] -= rho * gxc_[c];
          d[2] -= rho * gyc_[c];
        } else {
          const double* rc = coeffs_.at(i, j, 0);
          d[1] -= product_average_2d(rc, &gxpoly_[c * 6]);
          d[2] -= product_average_2d(rc, &gypoly_[c * 6]);
        }
      }
  }

  if (!frozen_.empty()) {
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        if (frozen_[static_cast<std::size_t>(j) * nx + i]) {
          double* d = &dudt[cidx(i, j)];
          for (int v = 0; v < nv; ++v) d[v] = 0.0;
        }
  }
}

double Semidiscrete2D::max_dt(const std::vector<double>& u, double t) {
  if (u.size() != work_.size())
    throw ConstructionError("state size does not match the operator");
  if (ref_) ref_->prepare(t);
  if (cfg_.well_balanced) refresh_reference(t);
  const int nv = sys_.nvars();
  double rmax = 0.0;
  double q[kMaxVars];
  for (int j = 0; j < g_.ny; ++j)
    for (int i = 0; i < g_.nx; ++i) {
      const std::size_t c = static_cast<std::size_t>(j) * g_.nx + i;
      if (!frozen_.empty() && frozen_[c]) continue;
      const double* s = &u[cidx(i, j)];
      if (cfg_.well_balanced) {
        const double* qr = &qref_c_[c * nv];
        for (int v = 0; v < nv; ++v) q[v] = s[v] + qr[v];
      } else {
        for (int v = 0; v < nv; ++v) q[v] = s[v];
      }
      const double ax = sys_.max_signal_speed(q, phic_[c], 1.0, 0.0);
      const double ay = sys_.max_signal_speed(q, phic_[c], 0.0, 1.0);
      rmax = std::max(rmax, ax / hx_[c] + ay / hy_[c]);
    }
  if (!(rmax > 0.0)) throw StateError("no positive signal speed on the grid");
  return cfg_.cfl / rmax;
}

} // namespace wbfv
