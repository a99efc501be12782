#pragma once

#include <string>
#include <vector>

#include "wbfv/cases.hpp"

namespace wbfv {

// Knobs of a single simulation run.
struct RunControl {
  double fixed_dt = 0.0;  // > 0 overrides the CFL step size (benchmark mode)
  long max_steps = 0;     // > 0 caps the step count
  int save_every = 0;     // > 0 stores every k-th frame plus first and last
  std::string snapshot_dir;
  std::string snapshot_prefix = "snap";
};

struct RunResult {
  int nx = 0, ny = 0; // ny = 0 for 1-D runs
  int nvars = 0;
  long steps = 0;
  double t_end = 0.0;
  double wall_seconds = 0.0; // time loop only
  // Interior conservative cell averages, ((j * nx + i) * nvars + v).
  std::vector<double> initial_avgs;
  std::vector<double> final_avgs;
  // Per-variable volume-weighted L1 error; empty when the case defines none.
  std::vector<double> l1_error;
  std::string snapshot_index; // index file path when frames were written
};

// Integrates the problem to its final time. Well-balanced runs evolve the
// deviation from the reference and compose full states for output; standard
// runs evolve the averages directly.
RunResult run_problem(Problem& p, const RunControl& ctl = {});

// Volume-weighted per-variable L1 difference of interior average arrays.
std::vector<double> l1_error(const Grid1D& g, int nvars,
                             const std::vector<double>& a,
                             const std::vector<double>& b);
std::vector<double> l1_error(const Grid2D& g, int nvars,
                             const std::vector<double>& a,
                             const std::vector<double>& b);

// log2(e_coarse / e_fine); NaN when either error is not positive.
double convergence_rate(double e_coarse, double e_fine);

// Two-decimal rate, or "exact" when the rate is undefined (zero errors).
std::string format_rate(double rate);

// Block means of 1-D interior averages onto coarse_nx cells (uniform grids,
// fine_nx must be a multiple of coarse_nx).
std::vector<double> coarsen_averages_1d(const std::vector<double>& fine,
                                        int fine_nx, int nvars, int coarse_nx);

std::vector<std::string> variable_names(const System& sys);

struct ConvergenceRow {
  int nx = 0, ny = 0;
  long steps = 0;
  double wall_seconds = 0.0;
  std::vector<double> error;
  std::vector<double> rate; // vs the previous row; NaN in the first row
};

struct ConvergenceStudy {
  std::string case_id;
  std::vector<std::string> names;
  std::vector<ConvergenceRow> rows;
  int reference_nx = 0, reference_ny = 0; // set in numeric-reference mode
};

// Runs the case at each resolution (ny scales with nx) and tabulates errors
// and rates. With `ref` the study runs that configuration once, coarsens its
// final averages to every study grid and measures errors against them;
// without it each run's own error notion is used.
ConvergenceStudy convergence_study(const std::string& id,
                                   const CaseOptions& base,
                                   const std::vector<int>& resolutions,
                                   const CaseOptions* ref = nullptr);

struct BenchmarkResult {
  std::string case_id;
  int reps = 0;
  long steps = 0;
  double dt = 0.0;
  double mean_std = 0.0, stddev_std = 0.0;
  double mean_wb = 0.0, stddev_wb = 0.0;
  double ratio = 0.0; // mean_wb / mean_std
};

// Times well-balanced vs standard runs of the same case with a pinned step
// size (taken from the standard run's initial CFL estimate), so both take
// identical step counts. Runs alternate, after one warmup pair.
BenchmarkResult benchmark_case(const std::string& id, const CaseOptions& opt,
                               int reps = 20);

// CSV emitters. Paths are created on demand; existing files are replaced.
void write_fields_csv(const std::string& path, const Problem& p,
                      const std::vector<double>& avgs);
void write_errors_csv(const std::string& path,
                      const std::vector<std::string>& names,
                      const std::vector<double>& errors,
                      const std::vector<double>* rates = nullptr);
void write_errors_csv(const std::string& path, const ConvergenceStudy& study);
void write_timing_csv(const std::string& path, const RunResult& r);
void write_timing_csv(const std::string& path, const BenchmarkResult& b);

} // namespace wbfv
