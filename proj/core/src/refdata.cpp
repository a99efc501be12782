#include "wbfv/refdata.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wbfv/quadrature.hpp"
#include "wbfv/source.hpp"

namespace wbfv {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Integer refinement ratio between nested grids; throws when interfaces of
// the coarse grid cannot all lie on fine-grid interfaces.
std::pair<int, int> nested_ratio(const Grid2D& fine, const Grid2D& coarse) {
  if (coarse.nx <= 0 || coarse.ny <= 0 || fine.nx <= 0 || fine.ny <= 0)
    throw ConstructionError("nested grids must be non-empty");
  if (fine.nx % coarse.nx != 0 || fine.ny % coarse.ny != 0)
    throw ConstructionError("grids are not nested: refinement ratio is not an integer");
  const double scale =
      std::max({1.0, std::abs(fine.node_x(fine.nx, fine.ny)),
                std::abs(fine.node_y(fine.nx, fine.ny)),
                std::abs(fine.node_x(0, 0)), std::abs(fine.node_y(0, 0))});
  const double tol = 1e-12 * scale;
  auto close = [&](double a, double b) { return std::abs(a - b) <= tol; };
  if (!close(fine.node_x(0, 0), coarse.node_x(0, 0)) ||
      !close(fine.node_y(0, 0), coarse.node_y(0, 0)) ||
      !close(fine.node_x(fine.nx, fine.ny),
             coarse.node_x(coarse.nx, coarse.ny)) ||
      !close(fine.node_y(fine.nx, fine.ny),
             coarse.node_y(coarse.nx, coarse.ny)))
    throw ConstructionError("grids are not nested: extents differ");
  return {fine.nx / coarse.nx, fine.ny / coarse.ny};
}

// spatial reconstruction used for snapshot point values of temporal order k
ReconKind snapshot_recon(int k) {
  if (k <= 1) return ReconKind::constant;
  if (k == 2) return ReconKind::minmod;
  return ReconKind::cweno3;
}

} // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const int n = static_cast<int>(x_.size());
  if (n < 2 || y_.size() != x_.size())
    throw ConstructionError("spline needs at least two matched samples");
  for (int k = 0; k + 1 < n; ++k)
    if (!(x_[k] < x_[k + 1]))
      throw ConstructionError("spline abscissae must be strictly increasing");

  m_.assign(n, 0.0);
  if (n == 2) return; // straight line
  if (n == 3) {
    // single parabola: constant second derivative
    const double h0 = x_[1] - x_[0], h1 = x_[2] - x_[1];
    const double dd =
        ((y_[2] - y_[1]) / h1 - (y_[1] - y_[0]) / h0) / (h0 + h1);
    m_[0] = m_[1] = m_[2] = 2.0 * dd;
    return;
  }

  // Not-a-knot: the third derivative is continuous across the first and
  // last interior knots, eliminating m_0 and m_{n-1} from the tridiagonal
  // continuity system for the interior second derivatives.
  const int m = n - 2;
  std::vector<double> sub(m, 0.0), diag(m, 0.0), sup(m, 0.0), rhs(m, 0.0);
  auto h = [&](int k) { return x_[k + 1] - x_[k]; };
  for (int k = 1; k <= n - 2; ++k) {
    const int r = k - 1;
    sub[r] = h(k - 1) / 6.0;
    diag[r] = (h(k - 1) + h(k)) / 3.0;
    sup[r] = h(k) / 6.0;
    rhs[r] = (y_[k + 1] - y_[k]) / h(k) - (y_[k] - y_[k - 1]) / h(k - 1);
  }
  {
    const double r0 = h(0) / h(1);
    diag[0] += sub[0] * (1.0 + r0);
    sup[0] -= sub[0] * r0;
    sub[0] = 0.0;
    const double r1 = h(n - 2) / h(n - 3);
    diag[m - 1] += sup[m - 1] * (1.0 + r1);
    sub[m - 1] -= sup[m - 1] * r1;
    sup[m - 1] = 0.0;
  }
  for (int r = 1; r < m; ++r) {
    const double w = sub[r] / diag[r - 1];
    diag[r] -= w * sup[r - 1];
    rhs[r] -= w * rhs[r - 1];
  }
  m_[n - 2] = rhs[m - 1] / diag[m - 1];
  for (int r = m - 2; r >= 0; --r)
    m_[r + 1] = (rhs[r] - sup[r] * m_[r + 2]) / diag[r];
  m_[0] = m_[1] + (h(0) / h(1)) * (m_[1] - m_[2]);
  m_[n - 1] = m_[n - 2] + (h(n - 2) / h(n - 3)) * (m_[n - 2] - m_[n - 3]);
}

double CubicSpline::operator()(double x) const {
  if (x < x_.front() || x > x_.back())
    throw CoverageError("spline query " + g17(x) + " outside sample range [" +
                        g17(x_.front()) + ", " + g17(x_.back()) + "]");
  int k = static_cast<int>(std::upper_bound(x_.begin(), x_.end(), x) -
                           x_.begin()) -
          1;
  k = std::clamp(k, 0, static_cast<int>(x_.size()) - 2);
  const double h = x_[k + 1] - x_[k];
  const double a = (x_[k + 1] - x) / h;
  const double b = (x - x_[k]) / h;
  return a * y_[k] + b * y_[k + 1] +
         ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[k + 1]) * h * h / 6.0;
}

TabulatedProfile1D::TabulatedProfile1D(std::vector<double> s,
                                       std::vector<std::vector<double>> vars,
                                       std::vector<std::string> names)
    : s_(std::move(s)), samples_(std::move(vars)), names_(std::move(names)) {
  if (s_.size() < 4)
    throw ConstructionError("tabulated profile needs at least 4 samples");
  if (samples_.empty())
    throw ConstructionError("tabulated profile needs at least one variable");
  for (const auto& v : samples_)
    if (v.size() != s_.size())
      throw ConstructionError("profile variable length does not match abscissae");
  if (names_.empty()) {
    for (std::size_t v = 0; v < samples_.size(); ++v)
      names_.push_back("v" + std::to_string(v));
  }
  if (names_.size() != samples_.size())
    throw ConstructionError("profile name count does not match variables");
  splines_.reserve(samples_.size());
  for (const auto& v : samples_) splines_.emplace_back(s_, v);
}

void TabulatedProfile1D::value(double s, double* out) const {
  for (std::size_t v = 0; v < splines_.size(); ++v) out[v] = splines_[v](s);
}

TabulatedProfile1D TabulatedProfile1D::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile file: " + path);
  std::string line;
  if (!std::getline(in, line) || line.empty() || line[0] != '#')
    throw IoError("profile file missing '# s <names>' header: " + path);
  std::istringstream hs(line.substr(1));
  std::string tok;
  std::vector<std::string> names;
  if (!(hs >> tok) || tok != "s")
    throw IoError("profile header must start with 's': " + path);
  while (hs >> tok) names.push_back(tok);

  std::vector<double> s;
  std::vector<std::vector<double>> vars;
  std::size_t cols = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<double> row;
    double v;
    while (ls >> v) row.push_back(v);
    if (row.empty()) continue;
    if (cols == 0) {
      cols = row.size();
      if (cols < 2) throw IoError("profile rows need abscissa + values: " + path);
      vars.resize(cols - 1);
    }
    if (row.size() != cols)
      throw IoError("inconsistent column count in profile file: " + path);
    s.push_back(row[0]);
    for (std::size_t c = 1; c < cols; ++c) vars[c - 1].push_back(row[c]);
  }
  if (!names.empty() && names.size() != cols - 1)
    throw IoError("profile header names do not match columns: " + path);
  return TabulatedProfile1D(std::move(s), std::move(vars), std::move(names));
}

void TabulatedProfile1D::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write profile file: " + path);
  out << "# s";
  for (const auto& n : names_) out << ' ' << n;
  out << '\n';
  for (std::size_t k = 0; k < s_.size(); ++k) {
    out << g17(s_[k]);
    for (const auto& v : samples_) out << ' ' << g17(v[k]);
    out << '\n';
  }
  if (!out) throw IoError("failed writing profile file: " + path);
}

namespace {

int quad_points_for_order(int quad_order) {
  if (quad_order <= 2) return 1;
  if (quad_order <= 6) return 3;
  if (quad_order <= 10) return 5;
  return 7;
}

struct ProfileMap {
  std::shared_ptr<const TabulatedProfile1D> prof;
  ProfileGeometry geom;
  int sys_nv = 0;

  double coord(double x, double y) const {
    switch (geom.kind) {
    case ProfileGeometry::Kind::aligned: return x;
    case ProfileGeometry::Kind::angled:
      return x * std::cos(geom.alpha) + y * std::sin(geom.alpha);
    case ProfileGeometry::Kind::radial:
      return std::hypot(x - geom.cx, y - geom.cy);
    }
    return x;
  }

  void state(double x, double y, double* out) const {
    const int pnv = prof->nvars();
    double w[8];
    prof->value(coord(x, y), w);
    if (pnv == sys_nv) {
      for (int v = 0; v < pnv; ++v) out[v] = w[v];
      return;
    }
    // 1-D triple (rho, m_s, E) embedded along the extension direction
    double ex = 1.0, ey = 0.0;
    if (geom.kind == ProfileGeometry::Kind::angled) {
      ex = std::cos(geom.alpha);
      ey = std::sin(geom.alpha);
    } else if (geom.kind == ProfileGeometry::Kind::radial) {
      const double s = std::hypot(x - geom.cx, y - geom.cy);
      ex = (s > 0.0) ? (x - geom.cx) / s : 0.0;
      ey = (s > 0.0) ? (y - geom.cy) / s : 0.0;
    }
    out[0] = w[0];
    out[1] = w[1] * ex;
    out[2] = w[1] * ey;
    out[3] = w[2];
  }
};

[[noreturn]] void throw_coverage(const std::vector<std::pair<int, int>>& bad,
                                 double lo, double hi, double s_min,
                                 double s_max, bool two_d) {
  std::string msg = "profile range [" + g17(s_min) + ", " + g17(s_max) +
                    "] does not cover quadrature points (need [" + g17(lo) +
                    ", " + g17(hi) + "]); offending cells:";
  const std::size_t show = std::min<std::size_t>(bad.size(), 8);
  for (std::size_t k = 0; k < show; ++k) {
    msg += two_d ? (" (" + std::to_string(bad[k].first) + "," +
                    std::to_string(bad[k].second) + ")")
                 : (" " + std::to_string(bad[k].first));
  }
  if (bad.size() > show)
    msg += " and " + std::to_string(bad.size() - show) + " more";
  throw CoverageError(msg);
}

} // namespace

std::unique_ptr<ReferenceSolution> reference_from_table(
    const System& sys, std::shared_ptr<const TabulatedProfile1D> profile,
    const Grid1D& grid, int quad_order) {
  if (!profile) throw ConstructionError("reference_from_table: null profile");
  if (sys.two_dimensional())
    throw ConstructionError("1-D tabulated reference needs a 1-D system");
  if (profile->nvars() != sys.nvars())
    throw ConstructionError("profile variable count does not match system");
  const int pts = quad_points_for_order(quad_order);
  const GaussRule& rule = gauss_rule(pts);

  std::vector<std::pair<int, int>> bad;
  double lo = 1e300, hi = -1e300;
  for (int i = -grid.ng; i < grid.nx + grid.ng; ++i) {
    bool ok = true;
    for (int q = 0; q < rule.n; ++q) {
      const double x = grid.center(i) + rule.nodes[q] * grid.dx;
      lo = std::min(lo, x);
      hi = std::max(hi, x);
      if (x < profile->s_min() || x > profile->s_max()) ok = false;
    }
    if (!ok) bad.emplace_back(i, 0);
  }
  if (!bad.empty())
    throw_coverage(bad, lo, hi, profile->s_min(), profile->s_max(), false);

  ProfileMap map{std::move(profile), ProfileGeometry::aligned(), sys.nvars()};
  return std::make_unique<AnalyticReference>(
      sys.nvars(), &grid,
      [map](double x, double y, double, double* out) { map.state(x, y, out); },
      false, pts);
}

std::unique_ptr<ReferenceSolution> reference_from_table(
    const System& sys, std::shared_ptr<const TabulatedProfile1D> profile,
    const ProfileGeometry& geometry, const Grid2D& grid, int quad_order) {
  if (!profile) throw ConstructionError("reference_from_table: null profile");
  if (!sys.two_dimensional())
    throw ConstructionError("2-D tabulated reference needs a 2-D system");
  if (profile->nvars() != sys.nvars() &&
      !(profile->nvars() == 3 && sys.nvars() == 4))
    throw ConstructionError(
        "profile must match the system or be a 1-D conservative triple");
  const int pts = quad_points_for_order(quad_order);
  const GaussRule& rule = gauss_rule(pts);

  ProfileMap map{std::move(profile), geometry, sys.nvars()};
  std::vector<std::pair<int, int>> bad;
  double lo = 1e300, hi = -1e300;
  for (int j = -grid.ng; j < grid.ny + grid.ng; ++j) {
    for (int i = -grid.ng; i < grid.nx + grid.ng; ++i) {
      bool ok = true;
      if (grid.kind == GridKind::cartesian) {
        for (int qy = 0; qy < rule.n; ++qy)
          for (int qx = 0; qx < rule.n; ++qx) {
            const double x =
                grid.cell_x_lo(i) + (rule.nodes[qx] + 0.5) * grid.dxi;
            const double y =
                grid.cell_y_lo(j) + (rule.nodes[qy] + 0.5) * grid.deta;
            const double s = map.coord(x, y);
            lo = std::min(lo, s);
            hi = std::max(hi, s);
            if (s < map.prof->s_min() || s > map.prof->s_max()) ok = false;
          }
      } else {
        const double s = map.coord(grid.center_x(i, j), grid.center_y(i, j));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
        if (s < map.prof->s_min() || s > map.prof->s_max()) ok = false;
      }
      if (!ok) bad.emplace_back(i, j);
    }
  }
  if (!bad.empty())
    throw_coverage(bad, lo, hi, map.prof->s_min(), map.prof->s_max(), true);

  return std::make_unique<AnalyticReference>(
      sys.nvars(), &grid,
      [map](double x, double y, double, double* out) { map.state(x, y, out); },
      false, pts);
}

Snapshot load_snapshot(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open snapshot file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw IoError("empty snapshot file: " + path);
  Snapshot s;
  if (std::sscanf(line.c_str(), "# t=%lf nx=%d ny=%d", &s.time, &s.nx,
                  &s.ny) != 3)
    throw IoError("snapshot header must be '# t=<t> nx=<N> ny=<N>': " + path);
  if (s.nx <= 0 || s.ny <= 0)
    throw IoError("snapshot has non-positive dimensions: " + path);
  double v;
  while (in >> v) s.data.push_back(v);
  const std::size_t cells = static_cast<std::size_t>(s.nx) * s.ny;
  if (s.data.empty() || s.data.size() % cells != 0)
    throw IoError("snapshot value count is not a multiple of nx*ny: " + path);
  s.nvars = static_cast<int>(s.data.size() / cells);
  return s;
}

void save_snapshot(const Snapshot& snap, const std::string& path) {
  if (snap.nx <= 0 || snap.ny <= 0 || snap.nvars <= 0 ||
      snap.data.size() !=
          static_cast<std::size_t>(snap.nx) * snap.ny * snap.nvars)
    throw ConstructionError("snapshot shape is inconsistent with its data");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write snapshot file: " + path);
  out << "# t=" << g17(snap.time) << " nx=" << snap.nx << " ny=" << snap.ny
      << '\n';
  for (int j = 0; j < snap.ny; ++j)
    for (int i = 0; i < snap.nx; ++i) {
      const double* q = snap.cell(i, j);
      for (int v = 0; v < snap.nvars; ++v)
        out << (v ? " " : "") << g17(q[v]);
      out << '\n';
    }
  if (!out) throw IoError("failed writing snapshot file: " + path);
}

std::string save_snapshot_series(const std::string& dir,
                                 const std::string& prefix,
                                 const std::vector<Snapshot>& snaps) {
  if (snaps.empty())
    throw ConstructionError("snapshot series must not be empty");
  for (std::size_t n = 1; n < snaps.size(); ++n)
    if (!(snaps[n - 1].time < snaps[n].time))
      throw ConstructionError("snapshot series times must increase");
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::vector<std::string> files;
  for (std::size_t n = 0; n < snaps.size(); ++n) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%04zu.dat", prefix.c_str(), n);
    save_snapshot(snaps[n], (fs::path(dir) / name).string());
    files.emplace_back(name);
  }
  const std::string index = (fs::path(dir) / (prefix + "_index.txt")).string();
  std::ofstream out(index);
  if (!out) throw IoError("cannot write snapshot index: " + index);
  for (const auto& f : files) out << f << '\n';
  if (!out) throw IoError("failed writing snapshot index: " + index);
  return index;
}

std::vector<Snapshot> load_snapshot_series(const std::string& index_path) {
  std::ifstream in(index_path);
  if (!in) throw IoError("cannot open snapshot index: " + index_path);
  namespace fs = std::filesystem;
  const fs::path base = fs::path(index_path).parent_path();
  std::vector<Snapshot> snaps;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    snaps.push_back(load_snapshot((base / line).string()));
  }
  if (snaps.empty()) throw IoError("snapshot index lists no files: " + index_path);
  for (std::size_t n = 1; n < snaps.size(); ++n) {
    if (!(snaps[n - 1].time < snaps[n].time))
      throw IoError("snapshot series times must increase: " + index_path);
    if (snaps[n].nx != snaps[0].nx || snaps[n].ny != snaps[0].ny ||
        snaps[n].nvars != snaps[0].nvars)
      throw IoError("snapshot series shapes differ: " + index_path);
  }
  return snaps;
}

Snapshot coarsen_snapshot(const Snapshot& fine, const Grid2D& fine_grid,
                          const Grid2D& coarse_grid) {
  if (fine.nx != fine_grid.nx || fine.ny != fine_grid.ny)
    throw ConstructionError("snapshot dimensions do not match the fine grid");
  const auto [rx, ry] = nested_ratio(fine_grid, coarse_grid);
  if (rx == 1 && ry == 1) return fine;

  Snapshot out;
  out.time = fine.time;
  out.nx = coarse_grid.nx;
  out.ny = coarse_grid.ny;
  out.nvars = fine.nvars;
  out.data.assign(static_cast<std::size_t>(out.nx) * out.ny * out.nvars, 0.0);
  std::vector<double> acc(fine.nvars);
  for (int cj = 0; cj < out.ny; ++cj)
    for (int ci = 0; ci < out.nx; ++ci) {
      std::fill(acc.begin(), acc.end(), 0.0);
      double vsum = 0.0;
      for (int b = 0; b < ry; ++b)
        for (int a = 0; a < rx; ++a) {
          const int fi = ci * rx + a, fj = cj * ry + b;
          const double vol = fine_grid.volume(fi, fj);
          vsum += vol;
          const double* q = fine.cell(fi, fj);
          for (int v = 0; v < fine.nvars; ++v) acc[v] += vol * q[v];
        }
      double* o = out.cell(ci, cj);
      for (int v = 0; v < fine.nvars; ++v) o[v] = acc[v] / vsum;
    }
  return out;
}

SnapshotReference::SnapshotReference(const System& sys,
                                     const Grid2D& solver_grid,
                                     const Grid2D& fine_grid,
                                     std::vector<Snapshot> snaps, int order_k,
                                     BoundarySpec2D bc)
    : nv_(sys.nvars()), g_(solver_grid), fine_(fine_grid),
      snaps_(std::move(snaps)), k_(order_k), bc_(bc) {
  if (g_.kind != GridKind::cartesian || fine_.kind != GridKind::cartesian)
    throw ConstructionError("snapshot references require Cartesian grids");
  if (snaps_.empty())
    throw ConstructionError("snapshot reference needs at least one snapshot");
  if (k_ < 1 || k_ > 3)
    throw ConstructionError("snapshot temporal order must be 1, 2 or 3");
  for (std::size_t n = 0; n < snaps_.size(); ++n) {
    const Snapshot& s = snaps_[n];
    if (s.nx != fine_.nx || s.ny != fine_.ny)
      throw ConstructionError("snapshot dimensions do not match the fine grid");
    if (s.nvars != nv_)
      throw ConstructionError("snapshot variable count does not match system");
    if (n > 0 && !(snaps_[n - 1].time < s.time))
      throw ConstructionError("snapshot times must be strictly increasing");
  }
  for (BcKind k : {bc_.xlo, bc_.xhi, bc_.ylo, bc_.yhi})
    if (k == BcKind::dirichlet_ref)
      throw ConstructionError(
          "snapshot reference ghosts cannot come from another reference");
  nested_ratio(fine_, g_); // fail fast on non-nested grids
  if (g_.ng < 2)
    throw ConstructionError("snapshot reference grid needs 2 ghost layers");

  avg_ = Field(g_.nx, g_.ny, nv_, 2, 2);
  coarse_cache_.resize(snaps_.size());
  coarse_ready_.assign(snaps_.size(), false);
  centers_.assign(static_cast<std::size_t>(g_.nx + 2) * (g_.ny + 2) * nv_, 0.0);
  wpoly_.assign(static_cast<std::size_t>(g_.nx) * g_.ny * nv_ * 6, 0.0);
}

const Snapshot& SnapshotReference::coarse(std::size_t n) {
  if (!coarse_ready_[n]) {
    coarse_cache_[n] = coarsen_snapshot(snaps_[n], fine_, g_);
    coarse_ready_[n] = true;
  }
  return coarse_cache_[n];
}

void SnapshotReference::prepare(double t) {
  if (prepared_ && t == prep_t_) return;
  const std::size_t N = snaps_.size();
  const int nx = g_.nx, ny = g_.ny;

  double tc = t;
  std::ptrdiff_t exact = -1;
  if (N == 1) {
    exact = 0;
  } else {
    const double t0 = snaps_.front().time, tN = snaps_.back().time;
    const double tol = 1e-12 * std::max(1.0, std::abs(tN - t0));
    if (t < t0 - tol || t > tN + tol)
      throw CoverageError("query time " + g17(t) + " outside snapshot span [" +
                          g17(t0) + ", " + g17(tN) + "]");
    tc = std::clamp(t, t0, tN);
    for (std::size_t n = 0; n < N; ++n)
      if (snaps_[n].time == tc) {
        exact = static_cast<std::ptrdiff_t>(n);
        break;
      }
  }

  if (exact >= 0) {
    const Snapshot& c = coarse(static_cast<std::size_t>(exact));
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i < nx; ++i)
        std::copy(c.cell(i, j), c.cell(i, j) + nv_, avg_.cell(i, j));
  } else {
    // degree-k Lagrange window nearest tc, extra point toward earlier times
    const int keff = std::min<int>(k_, static_cast<int>(N) - 1);
    std::size_t j = 0;
    while (j + 1 < N && snaps_[j + 1].time <= tc) ++j;
    std::ptrdiff_t s0 = static_cast<std::ptrdiff_t>(j) - keff / 2;
    s0 = std::clamp<std::ptrdiff_t>(s0, 0,
                                    static_cast<std::ptrdiff_t>(N) - 1 - keff);
    double w[4];
    for (int a = 0; a <= keff; ++a) {
      const double ta = snaps_[static_cast<std::size_t>(s0) + a].time;
      double prod = 1.0;
      for (int b = 0; b <= keff; ++b) {
        if (b == a) continue;
        const double tb = snaps_[static_cast<std::size_t>(s0) + b].time;
        prod *= (tc - tb) / (ta - tb);
      }
      w[a] = prod;
    }
    for (int jj = 0; jj < ny; ++jj)
      for (int ii = 0; ii < nx; ++ii) {
        double* o = avg_.cell(ii, jj);
        for (int v = 0; v < nv_; ++v) o[v] = 0.0;
        for (int a = 0; a <= keff; ++a) {
          const double* c = coarse(static_cast<std::size_t>(s0) + a).cell(ii, jj);
          for (int v = 0; v < nv_; ++v) o[v] += w[a] * c[v];
        }
      }
  }

  fill_ghosts_2d(avg_, g_, bc_, nullptr, t, false);
  const ReconKind rk = snapshot_recon(k_);
  reconstruct_2d(rk, avg_, -1, nx + 1, -1, ny + 1, rc_);
  const int pitch = nx + 2;
  for (int j = -1; j <= ny; ++j)
    for (int i = -1; i <= nx; ++i) {
      double* c = &centers_[(static_cast<std::size_t>(j + 1) * pitch + (i + 1)) *
                            nv_];
      for (int v = 0; v < nv_; ++v) c[v] = rc_.at(i, j, v)[0];
    }
  double win[9];
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (int v = 0; v < nv_; ++v) {
        for (int b = -1; b <= 1; ++b)
          for (int a = -1; a <= 1; ++a)
            win[(b + 1) * 3 + (a + 1)] =
                centers_[(static_cast<std::size_t>(j + b + 1) * pitch +
                          (i + a + 1)) *
                             nv_ +
                         v];
        interp_centers_2d(
            win, &wpoly_[((static_cast<std::size_t>(j) * nx + i) * nv_ + v) * 6]);
      }

  prepared_ = true;
  prep_t_ = t;
}

void SnapshotReference::point_value(double x, double y, double t, int owner_i,
                                    int owner_j, double* out) const {
  if (!prepared_ || t != prep_t_)
    throw StateError("snapshot reference queried without prepare at this time");
  const int oi = std::clamp(owner_i, 0, g_.nx - 1);
  const int oj = std::clamp(owner_j, 0, g_.ny - 1);
  const double X = (x - g_.center_x(oi, oj)) / g_.dxi;
  const double Y = (y - g_.center_y(oi, oj)) / g_.deta;
  const std::size_t base =
      (static_cast<std::size_t>(oj) * g_.nx + oi) * nv_ * 6;
  for (int v = 0; v < nv_; ++v)
    out[v] = eval_poly_2d(&wpoly_[base + static_cast<std::size_t>(v) * 6], 6, X, Y);
}

void SnapshotReference::cell_average(int i, int j, double t,
                                     double* out) const {
  if (!prepared_ || t != prep_t_)
    throw StateError("snapshot reference queried without prepare at this time");
  if (i < 0 || i >= g_.nx || j < 0 || j >= g_.ny)
    throw CoverageError("snapshot reference has no ghost-cell averages");
  const double* c = avg_.cell(i, j);
  for (int v = 0; v < nv_; ++v) out[v] = c[v];
}

} // namespace wbfv
