#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "wbfv/cases.hpp"
#include "wbfv/errors.hpp"
#include "wbfv/runner.hpp"

using namespace wbfv;

namespace {

FluxKind parse_flux(const std::string& s) {
  return s == "roe" ? FluxKind::roe : FluxKind::llf;
}

std::string scheme_label(const SchemeConfig& s) {
  std::string out = (s.well_balanced ? "WB-O" : "Std-O") + std::to_string(s.order);
  out += (s.flux == FluxKind::roe) ? ", roe" : ", llf";
  return out;
}

std::string scheme_label(const CaseOptions& o, const std::string& id) {
  const CaseInfo& info = case_info(id);
  SchemeConfig s;
  s.order = o.order.value_or(info.default_order);
  s.well_balanced = o.well_balanced.value_or(true);
  s.flux = o.flux.value_or(info.default_flux);
  return scheme_label(s);
}

void print_error_block(const std::vector<std::string>& names,
                       const std::vector<double>& e) {
  for (std::size_t v = 0; v < e.size(); ++v)
    std::printf("  L1[%-4s] = %.6e\n", names[v].c_str(), e[v]);
}

int run_solve(const std::string& id, CaseOptions opts, const std::string& out,
              bool save_snaps, int save_every) {
  Problem p = build_case(id, opts);
  RunControl ctl;
  if (save_snaps) {
    ctl.snapshot_dir = out;
    ctl.save_every = save_every;
    ctl.snapshot_prefix =
        id + (opts.well_balanced.value_or(true) ? "_wb" : "_std");
  }
  const RunResult r = run_problem(p, ctl);

  std::printf("case %s (%s)\n", id.c_str(), scheme_label(p.scheme).c_str());
  if (r.ny > 0)
    std::printf("  grid %d x %d, %ld steps to t = %g, %.3f s\n", r.nx, r.ny,
                r.steps, r.t_end, r.wall_seconds);
  else
    std::printf("  grid %d, %ld steps to t = %g, %.3f s\n", r.nx, r.steps,
                r.t_end, r.wall_seconds);

  const std::vector<std::string> names = variable_names(p.sys);
  if (!r.l1_error.empty()) {
    print_error_block(names, r.l1_error);
    write_errors_csv(out + "/errors.csv", names, r.l1_error);
  }
  if (id == "keplerian_disk") {
    const double d0 = disk_distance_metric(p, r.initial_avgs);
    const double d1 = disk_distance_metric(p, r.final_avgs);
    std::printf("  disk metric d = %.6f\n", d1 / d0);
  }
  if (id == "double_gresho")
    std::printf("  disk velocity error = %.6e\n",
                gresho_disk_velocity_error(p, r.final_avgs, r.t_end));

  write_fields_csv(out + "/fields.csv", p, r.final_avgs);
  write_timing_csv(out + "/timing.csv", r);
  if (!r.snapshot_index.empty())
    std::printf("  snapshots: %s\n", r.snapshot_index.c_str());
  return 0;
}

int run_convergence(const std::string& id, CaseOptions base,
                    std::vector<int> orders, const std::vector<int>& res,
                    std::optional<int> ref_nx, std::optional<int> ref_order,
                    std::optional<bool> ref_wb, const std::string& out) {
  if (orders.empty()) orders = {case_info(id).default_order};

  std::string erows = "order,nx,variable,l1,rate\n";
  std::string trows = "order,nx,steps,wall_seconds\n";
  char buf[128];

  for (int order : orders) {
    CaseOptions b = base;
    b.order = order;
    CaseOptions ro;
    const CaseOptions* refp = nullptr;
    if (ref_nx) {
      ro = b;
      ro.nx = *ref_nx;
      ro.ny.reset();
      if (ref_order) ro.order = *ref_order;
      if (ref_wb) ro.well_balanced = *ref_wb;
      refp = &ro;
    }
    const ConvergenceStudy st = convergence_study(id, b, res, refp);

    std::printf("case %s, %s\n", id.c_str(), scheme_label(b, id).c_str());
    if (refp)
      std::printf("  reference: %s at nx = %d\n",
                  scheme_label(ro, id).c_str(), st.reference_nx);
    std::printf("  %8s", "nx");
    for (const auto& n : st.names) std::printf("  %-10s %-6s", n.c_str(), "rate");
    std::printf("\n");
    for (std::size_t k = 0; k < st.rows.size(); ++k) {
      const ConvergenceRow& row = st.rows[k];
      std::printf("  %8d", row.nx);
      for (std::size_t v = 0; v < row.error.size(); ++v)
        std::printf("  %-10.3e %-6s", row.error[v],
                    k == 0 ? "-" : format_rate(row.rate[v]).c_str());
      std::printf("\n");
      for (std::size_t v = 0; v < row.error.size(); ++v) {
        std::snprintf(buf, sizeof buf, "%d,%d,%s,%.17g,%s\n", order, row.nx,
                      st.names[v].c_str(), row.error[v],
                      k == 0 ? "" : format_rate(row.rate[v]).c_str());
        erows += buf;
      }
      std::snprintf(buf, sizeof buf, "%d,%d,%ld,%.6f\n", order, row.nx,
                    row.steps, row.wall_seconds);
      trows += buf;
    }
  }

  std::filesystem::create_directories(out);
  std::ofstream(out + "/errors.csv") << erows;
  std::ofstream(out + "/timing.csv") << trows;
  return 0;
}

int run_bench(const std::string& id, const CaseOptions& opts, int reps,
              const std::string& out) {
  const BenchmarkResult b = benchmark_case(id, opts, reps);
  std::printf("case %s, %s, %d reps of %ld steps (dt = %g)\n", id.c_str(),
              scheme_label(opts, id).c_str(), b.reps, b.steps, b.dt);
  std::printf("  std  %.6f s +/- %.6f\n", b.mean_std, b.stddev_std);
  std::printf("  wb   %.6f s +/- %.6f\n", b.mean_wb, b.stddev_wb);
  std::printf("  wb/std ratio %.3f\n", b.ratio);
  write_timing_csv(out + "/timing.csv", b);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"structured-grid finite-volume solver; evolves deviations from "
               "a reference solution so the reference is kept to machine "
               "precision"};
  app.require_subcommand(1);

  std::string id, out = ".", flux_s, grid_s, snapshots;
  CaseOptions opts;
  bool wb = true;
  bool save_snaps = false;
  int save_every = 16, reps = 20;
  std::vector<int> orders, resolutions;
  std::optional<int> ref_nx, ref_order;
  std::optional<bool> ref_wb;
  bool ref_wb_flag = true;

  auto add_common = [&](CLI::App* c, bool with_order) {
    c->add_option("--case", id, "registered case id")->required();
    if (with_order)
      c->add_option("--order", opts.order, "scheme order: 1, 2, 3 or 7");
    c->add_option("--nx", opts.nx, "cells in x (first grid direction)");
    c->add_option("--ny", opts.ny, "cells in y (second grid direction)");
    c->add_option("--tend", opts.t_end, "final time");
    c->add_flag("--wb,!--no-wb", wb, "well-balanced vs standard scheme");
    c->add_option("--flux", flux_s, "numerical flux")
        ->check(CLI::IsMember({"llf", "roe"}));
    c->add_option("--grid", grid_s, "grid variant (cartesian or polar)");
    c->add_option("--eta", opts.eta, "perturbation amplitude");
    c->add_option("--cfl", opts.cfl, "CFL number (0 = scheme default)");
    c->add_option("--out", out, "output directory");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one case");
  add_common(solve, true);
  solve->add_flag("--save-snapshots", save_snaps,
                  "store interior averages as a snapshot series");
  solve->add_option("--save-every", save_every, "snapshot cadence in steps");
  solve->add_option("--snapshots", snapshots,
                    "snapshot index file providing the reference");

  CLI::App* conv = app.add_subcommand("convergence", "grid refinement study");
  add_common(conv, false);
  conv->add_option("--orders", orders, "scheme orders to study")
      ->delimiter(',');
  conv->add_option("--resolutions", resolutions, "cell counts in x")
      ->delimiter(',')
      ->required();
  conv->add_option("--ref-nx", ref_nx,
                   "run a reference at this resolution and coarsen it");
  conv->add_option("--ref-order", ref_order, "reference scheme order");
  conv->add_flag("--ref-wb,!--ref-no-wb", ref_wb_flag,
                 "reference uses the well-balanced scheme");

  CLI::App* bench = app.add_subcommand("bench", "paired WB/Std timing");
  add_common(bench, true);
  bench->add_option("--reps", reps, "repetitions per method");

  CLI::App* cases = app.add_subcommand("cases", "list registered cases");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cases->parsed()) {
      for (const CaseInfo& c : case_registry())
        std::printf("%-28s %s\n", c.id.c_str(), c.summary.c_str());
      return 0;
    }
    if (solve->count("--wb") || solve->count("--no-wb") ||
        conv->count("--wb") || conv->count("--no-wb") ||
        bench->count("--wb") || bench->count("--no-wb"))
      opts.well_balanced = wb;
    for (CLI::App* c : {solve, conv, bench}) {
      if (c->count("--flux")) opts.flux = parse_flux(flux_s);
      if (c->count("--grid")) opts.grid = grid_s;
    }
    if (conv->count("--ref-wb") || conv->count("--ref-no-wb"))
      ref_wb = ref_wb_flag;
    opts.snapshot_index = snapshots;

    if (solve->parsed()) return run_solve(id, opts, out, save_snaps, save_every);
    if (conv->parsed())
      return run_convergence(id, opts, orders, resolutions, ref_nx, ref_order,
                             ref_wb, out);
    if (bench->parsed()) return run_bench(id, opts, reps, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
