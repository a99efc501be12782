#include "wbfv/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numeric>

#include "wbfv/errors.hpp"
#include "wbfv/refdata.hpp"
#include "wbfv/time_integrator.hpp"
#include "wbfv/wellbalance.hpp"

namespace wbfv {

namespace {

ButcherTableau tableau_for_order(int order) {
  if (order == 1) return ButcherTableau::forward_euler();
  if (order == 7)
    return ButcherTableau::from_file(std::string(WBFV_DATA_DIR) +
                                     "/rk8_dop853.txt");
  return ButcherTableau::ssprk43();
}

// One configured simulation: the semi-discrete operator, the evolved state
// (deviations in well-balanced mode) and the composition back to full
// conservative averages.
struct Sim {
  Problem& p;
  bool two_d;
  bool wb;
  int nx = 0, nyl = 1; // nyl = 1 for 1-D problems
  int nv = 0;
  std::unique_ptr<Semidiscrete1D> sd1;
  std::unique_ptr<Semidiscrete2D> sd2;
  Field U;
  std::vector<double> init0; // interior conservative averages at t = 0

  explicit Sim(Problem& pr)
      : p(pr), two_d(pr.two_dimensional), wb(pr.scheme.well_balanced),
        nv(pr.nvars()) {
    if (!p.initial)
      throw ConstructionError("problem lacks an initial state");
    if (wb && !p.reference)
      throw ConstructionError("well-balanced mode requires a reference solution");
    if (two_d) {
      sd2 = std::make_unique<Semidiscrete2D>(*p.grid2, p.sys, p.scheme, p.bc2,
                                             p.reference);
      if (!p.frozen.empty()) sd2->set_frozen(p.frozen);
      nx = p.grid2->nx;
      nyl = p.grid2->ny;
      U = sd2->make_state();
    } else {
      sd1 = std::make_unique<Semidiscrete1D>(*p.grid1, p.sys, p.scheme, p.bc1,
                                             p.reference);
      nx = p.grid1->nx;
      U = sd1->make_state();
    }
    init0 = averages_of(*p.initial, 0.0);
    if (wb) {
      const std::vector<double> ra = averages_of(*p.reference, 0.0);
      for (int j = 0; j < nyl; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c =
              (static_cast<std::size_t>(j) * nx + i) * static_cast<std::size_t>(nv);
          for (int v = 0; v < nv; ++v) U.cell(i, j)[v] = init0[c + v] - ra[c + v];
        }
    } else {
      for (int j = 0; j < nyl; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c =
              (static_cast<std::size_t>(j) * nx + i) * static_cast<std::size_t>(nv);
          for (int v = 0; v < nv; ++v) U.cell(i, j)[v] = init0[c + v];
        }
    }
  }

  std::vector<double> averages_of(ReferenceSolution& r, double t) const {
    r.prepare(t);
    std::vector<double> out(static_cast<std::size_t>(nx) * nyl * nv);
    for (int j = 0; j < nyl; ++j)
      for (int i = 0; i < nx; ++i)
        r.cell_average(i, j, t,
                       &out[(static_cast<std::size_t>(j) * nx + i) * nv]);
    return out;
  }

  // Full conservative interior averages of the current state at time t.
  std::vector<double> compose(double t) const {
    std::vector<double> full(static_cast<std::size_t>(nx) * nyl * nv);
    if (wb) {
      full = averages_of(*p.reference, t);
      for (int j = 0; j < nyl; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c =
              (static_cast<std::size_t>(j) * nx + i) * static_cast<std::size_t>(nv);
          const double* d = U.cell(i, j);
          for (int v = 0; v < nv; ++v) full[c + v] += d[v];
        }
    } else {
      for (int j = 0; j < nyl; ++j)
        for (int i = 0; i < nx; ++i) {
          const std::size_t c =
              (static_cast<std::size_t>(j) * nx + i) * static_cast<std::size_t>(nv);
          const double* d = U.cell(i, j);
          for (int v = 0; v < nv; ++v) full[c + v] = d[v];
        }
    }
    return full;
  }

  double max_dt(double t) {
    return two_d ? sd2->max_dt(U.raw(), t) : sd1->max_dt(U.raw(), t);
  }

  void rhs(std::vector<double>& u, double t, std::vector<double>& d) {
    if (two_d)
      sd2->rhs(u, t, d);
    else
      sd1->rhs(u, t, d);
  }
};

double mean_of(const std::vector<double>& x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

double stddev_of(const std::vector<double>& x, double mean) {
  if (x.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / (x.size() - 1));
}

std::ofstream open_csv(const std::string& path) {
  const std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream out(fp);
  if (!out) throw IoError("cannot write " + path);
  out.precision(17);
  return out;
}

} // namespace

RunResult run_problem(Problem& p, const RunControl& ctl) {
  Sim sim(p);
  RunResult res;
  res.nx = sim.nx;
  res.ny = sim.two_d ? sim.nyl : 0;
  res.nvars = sim.nv;
  res.initial_avgs = sim.init0;

  RKIntegrator integ(tableau_for_order(p.scheme.order));
  const RKIntegrator::Rhs rhsfn = [&sim](std::vector<double>& u, double t,
                                         std::vector<double>& d) {
    sim.rhs(u, t, d);
  };

  const bool saving = !ctl.snapshot_dir.empty();
  const int cadence = ctl.save_every > 0 ? ctl.save_every : 16;
  std::vector<Snapshot> frames;
  auto push_frame = [&](double t) {
    Snapshot s;
    s.time = t;
    s.nx = sim.nx;
    s.ny = sim.nyl;
    s.nvars = sim.nv;
    s.data = sim.compose(t);
    frames.push_back(std::move(s));
  };
  if (saving) push_frame(0.0);

  const double t_end = p.t_end;
  double t = 0.0;
  long steps = 0;
  const auto clock0 = std::chrono::steady_clock::now();
  while (t < t_end) {
    double dt = ctl.fixed_dt > 0.0 ? ctl.fixed_dt : sim.max_dt(t);
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw StateError("time step collapsed at t = " + std::to_string(t));
    const bool last = (t + dt >= t_end);
    if (last) dt = t_end - t;
    integ.step(rhsfn, sim.U.raw(), t, dt);
    t = last ? t_end : t + dt;
    ++steps;
    if (saving && !last && steps % cadence == 0) push_frame(t);
    if (ctl.max_steps > 0 && steps >= ctl.max_steps) break;
  }
  const auto clock1 = std::chrono::steady_clock::now();
  res.wall_seconds = std::chrono::duration<double>(clock1 - clock0).count();
  res.steps = steps;
  res.t_end = t;

  res.final_avgs = sim.compose(t);
  if (saving) {
    if (frames.back().time != t) push_frame(t);
    res.snapshot_index =
        save_snapshot_series(ctl.snapshot_dir, ctl.snapshot_prefix, frames);
  }

  switch (p.error_against) {
  case ErrorAgainst::initial_averages:
    res.l1_error = sim.two_d
                       ? l1_error(*p.grid2, sim.nv, res.final_avgs, sim.init0)
                       : l1_error(*p.grid1, sim.nv, res.final_avgs, sim.init0);
    break;
  case ErrorAgainst::exact_at_end: {
    const std::vector<double> exact = sim.averages_of(*p.initial, t);
    res.l1_error = sim.two_d
                       ? l1_error(*p.grid2, sim.nv, res.final_avgs, exact)
                       : l1_error(*p.grid1, sim.nv, res.final_avgs, exact);
    break;
  }
  case ErrorAgainst::none:
    break;
  }
  return res;
}

std::vector<double> l1_error(const Grid1D& g, int nvars,
                             const std::vector<double>& a,
                             const std::vector<double>& b) {
  const std::size_t need = static_cast<std::size_t>(g.nx) * nvars;
  if (a.size() != need || b.size() != need)
    throw ConstructionError("l1_error: array sizes do not match the grid");
  std::vector<double> e(nvars, 0.0);
  for (int i = 0; i < g.nx; ++i)
    for (int v = 0; v < nvars; ++v)
      e[v] += g.dx * std::abs(a[static_cast<std::size_t>(i) * nvars + v] -
                              b[static_cast<std::size_t>(i) * nvars + v]);
  return e;
}

std::vector<double> l1_error(const Grid2D& g, int nvars,
                             const std::vector<double>& a,
                             const std::vector<double>& b) {
  const std::size_t need = static_cast<std::size_t>(g.nx) * g.ny * nvars;
  if (a.size() != need || b.size() != need)
    throw ConstructionError("l1_error: array sizes do not match the grid");
  std::vector<double> e(nvars, 0.0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t c = (static_cast<std::size_t>(j) * g.nx + i) * nvars;
      const double vol = g.volume(i, j);
      for (int v = 0; v < nvars; ++v) e[v] += vol * std::abs(a[c + v] - b[c + v]);
    }
  return e;
}

double convergence_rate(double e_coarse, double e_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || !std::isfinite(e_coarse) ||
      !std::isfinite(e_fine))
    return std::numeric_limits<double>::quiet_NaN();
  return std::log2(e_coarse / e_fine);
}

std::string format_rate(double rate) {
  if (std::isnan(rate)) return "exact";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", rate);
  return buf;
}

std::vector<double> coarsen_averages_1d(const std::vector<double>& fine,
                                        int fine_nx, int nvars,
                                        int coarse_nx) {
  if (coarse_nx < 1 || fine_nx < coarse_nx || fine_nx % coarse_nx != 0)
    throw ConstructionError("coarsening needs an integer cell ratio");
  if (fine.size() != static_cast<std::size_t>(fine_nx) * nvars)
    throw ConstructionError("coarsening: array size does not match fine_nx");
  const int ratio = fine_nx / coarse_nx;
  std::vector<double> out(static_cast<std::size_t>(coarse_nx) * nvars, 0.0);
  for (int I = 0; I < coarse_nx; ++I)
    for (int k = 0; k < ratio; ++k) {
      const std::size_t f = (static_cast<std::size_t>(I) * ratio + k) * nvars;
      for (int v = 0; v < nvars; ++v) out[static_cast<std::size_t>(I) * nvars + v] += fine[f + v];
    }
  for (double& x : out) x /= ratio;
  return out;
}

std::vector<std::string> variable_names(const System& sys) {
  switch (sys.kind) {
  case SystemKind::euler1d: return {"rho", "mom", "E"};
  case SystemKind::euler2d: return {"rho", "momx", "momy", "E"};
  case SystemKind::mhd2d: return {"rho", "momx", "momy", "Bx", "By", "E"};
  }
  return {};
}

ConvergenceStudy convergence_study(const std::string& id,
                                   const CaseOptions& base,
                                   const std::vector<int>& resolutions,
                                   const CaseOptions* ref) {
  if (resolutions.empty())
    throw ConstructionError("convergence study needs at least one resolution");
  ConvergenceStudy st;
  st.case_id = id;

  Snapshot ref_frame;
  std::shared_ptr<Grid2D> ref_grid2;
  std::vector<double> ref_final_1d;
  if (ref) {
    CaseOptions ro = *ref;
    if (!ro.t_end) ro.t_end = base.t_end;
    Problem rp = build_case(id, ro);
    RunResult rr = run_problem(rp);
    st.reference_nx = rr.nx;
    st.reference_ny = rr.ny;
    if (rp.two_dimensional) {
      ref_frame.time = rr.t_end;
      ref_frame.nx = rr.nx;
      ref_frame.ny = rr.ny;
      ref_frame.nvars = rr.nvars;
      ref_frame.data = std::move(rr.final_avgs);
      ref_grid2 = rp.grid2;
    } else {
      ref_final_1d = std::move(rr.final_avgs);
    }
  }

  for (int n : resolutions) {
    CaseOptions o = base;
    o.nx = n;
    o.ny.reset(); // derived from nx by the case's aspect ratio
    Problem p = build_case(id, o);
    if (st.names.empty()) st.names = variable_names(p.sys);
    RunResult r = run_problem(p);

    ConvergenceRow row;
    row.nx = r.nx;
    row.ny = r.ny;
    row.steps = r.steps;
    row.wall_seconds = r.wall_seconds;
    if (ref) {
      if (p.two_dimensional) {
        const Snapshot coarse = coarsen_snapshot(ref_frame, *ref_grid2, *p.grid2);
        row.error = l1_error(*p.grid2, r.nvars, r.final_avgs, coarse.data);
      } else {
        const std::vector<double> coarse = coarsen_averages_1d(
            ref_final_1d, st.reference_nx, r.nvars, r.nx);
        row.error = l1_error(*p.grid1, r.nvars, r.final_avgs, coarse);
      }
    } else {
      if (r.l1_error.empty())
        throw ConstructionError(
            "case " + id +
            " measures no error by itself; pass a reference configuration");
      row.error = r.l1_error;
    }

    row.rate.assign(row.error.size(),
                    std::numeric_limits<double>::quiet_NaN());
    if (!st.rows.empty()) {
      const ConvergenceRow& prev = st.rows.back();
      for (std::size_t v = 0; v < row.error.size(); ++v)
        row.rate[v] = convergence_rate(prev.error[v], row.error[v]);
    }
    st.rows.push_back(std::move(row));
  }
  return st;
}

BenchmarkResult benchmark_case(const std::string& id, const CaseOptions& opt,
                               int reps) {
  if (reps < 1) throw ConstructionError("benchmark needs at least one rep");
  CaseOptions so = opt;
  so.well_balanced = false;
  CaseOptions wo = opt;
  wo.well_balanced = true;

  Problem ps = build_case(id, so);
  Problem pw = build_case(id, wo);
  if (!(ps.t_end > 0.0))
    throw ConstructionError("benchmark needs a positive final time");

  double dt0 = 0.0;
  {
    Sim probe(ps);
    dt0 = probe.max_dt(0.0);
  }
  const double nsteps = std::ceil(ps.t_end / dt0);
  RunControl ctl;
  ctl.fixed_dt = ps.t_end / nsteps;

  BenchmarkResult b;
  b.case_id = id;
  b.reps = reps;
  b.dt = ctl.fixed_dt;

  // warmup pair, also fixes the expected step count
  const RunResult w0 = run_problem(ps, ctl);
  const RunResult w1 = run_problem(pw, ctl);
  if (w0.steps != w1.steps)
    throw StateError("benchmark runs took different step counts");
  b.steps = w0.steps;

  std::vector<double> ts, tw;
  ts.reserve(reps);
  tw.reserve(reps);
  for (int r = 0; r < reps; ++r) {
    const RunResult rs = run_problem(ps, ctl);
    const RunResult rw = run_problem(pw, ctl);
    if (rs.steps != b.steps || rw.steps != b.steps)
      throw StateError("benchmark runs took different step counts");
    ts.push_back(rs.wall_seconds);
    tw.push_back(rw.wall_seconds);
  }
  b.mean_std = mean_of(ts);
  b.stddev_std = stddev_of(ts, b.mean_std);
  b.mean_wb = mean_of(tw);
  b.stddev_wb = stddev_of(tw, b.mean_wb);
  b.ratio = b.mean_wb / b.mean_std;
  return b;
}

void write_fields_csv(const std::string& path, const Problem& p,
                      const std::vector<double>& avgs) {
  const int nv = p.nvars();
  std::ofstream out = open_csv(path);
  const std::vector<std::string> names = variable_names(p.sys);
  if (p.two_dimensional) {
    const Grid2D& g = *p.grid2;
    if (avgs.size() != static_cast<std::size_t>(g.nx) * g.ny * nv)
      throw ConstructionError("fields: array size does not match the grid");
    out << "x,y";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (int j = 0; j < g.ny; ++j)
      for (int i = 0; i < g.nx; ++i) {
        out << g.center_x(i, j) << ',' << g.center_y(i, j);
        const std::size_t c = (static_cast<std::size_t>(j) * g.nx + i) * nv;
        for (int v = 0; v < nv; ++v) out << ',' << avgs[c + v];
        out << '\n';
      }
  } else {
    const Grid1D& g = *p.grid1;
    if (avgs.size() != static_cast<std::size_t>(g.nx) * nv)
      throw ConstructionError("fields: array size does not match the grid");
    out << "x";
    for (const auto& n : names) out << ',' << n;
    out << '\n';
    for (int i = 0; i < g.nx; ++i) {
      out << g.center(i);
      const std::size_t c = static_cast<std::size_t>(i) * nv;
      for (int v = 0; v < nv; ++v) out << ',' << avgs[c + v];
      out << '\n';
    }
  }
}

void write_errors_csv(const std::string& path,
                      const std::vector<std::string>& names,
                      const std::vector<double>& errors,
                      const std::vector<double>* rates) {
  if (names.size() != errors.size())
    throw ConstructionError("errors: names and values disagree");
  std::ofstream out = open_csv(path);
  out << "variable,l1,rate\n";
  for (std::size_t v = 0; v < errors.size(); ++v) {
    out << names[v] << ',' << errors[v] << ',';
    if (rates) out << format_rate((*rates)[v]);
    out << '\n';
  }
}

void write_errors_csv(const std::string& path, const ConvergenceStudy& study) {
  std::ofstream out = open_csv(path);
  out << "nx,variable,l1,rate\n";
  for (std::size_t r = 0; r < study.rows.size(); ++r) {
    const ConvergenceRow& row = study.rows[r];
    for (std::size_t v = 0; v < row.error.size(); ++v) {
      out << row.nx << ',' << study.names[v] << ',' << row.error[v] << ',';
      if (r > 0) out << format_rate(row.rate[v]);
      out << '\n';
    }
  }
}

void write_timing_csv(const std::string& path, const RunResult& r) {
  std::ofstream out = open_csv(path);
  out << "steps,wall_seconds\n" << r.steps << ',' << r.wall_seconds << '\n';
}

void write_timing_csv(const std::string& path, const BenchmarkResult& b) {
  std::ofstream out = open_csv(path);
  out << "method,reps,steps,dt,mean_seconds,stddev_seconds,wb_over_std\n";
  out << "std," << b.reps << ',' << b.steps << ',' << b.dt << ','
      << b.mean_std << ',' << b.stddev_std << ",\n";
  out << "wb," << b.reps << ',' << b.steps << ',' << b.dt << ',' << b.mean_wb
      << ',' << b.stddev_wb << ',' << b.ratio << '\n';
}

} // namespace wbfv
