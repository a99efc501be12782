#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace wbfv {

// Cell-centered multi-component data on a structured grid, stored with ghost
// layers. Index i runs in [-ng, nx+ng), j in [-ng, ny+ng); 1-D fields use
// ny = 1 with ghost layers in x only. Component index is fastest, then i,
// then j, so loops over (j, i, v) touch memory in order.
class Field {
public:
  Field() = default;
  Field(int nx, int ny, int nvars, int ng_x, int ng_y)
      : nx_(nx), ny_(ny), nv_(nvars), ngx_(ng_x), ngy_(ng_y),
        stride_((nx + 2 * ng_x) * nvars),
        data_((nx + 2 * ng_x) * (ny + 2 * ng_y) * nvars, 0.0) {}

  static Field like(const Field& f) {
    return Field(f.nx_, f.ny_, f.nv_, f.ngx_, f.ngy_);
  }

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nvars() const { return nv_; }
  int ghosts_x() const { return ngx_; }
  int ghosts_y() const { return ngy_; }

  double* cell(int i, int j) {
    assert(i >= -ngx_ && i < nx_ + ngx_ && j >= -ngy_ && j < ny_ + ngy_);
    return data_.data() + (j + ngy_) * stride_ + (i + ngx_) * nv_;
  }
  const double* cell(int i, int j) const {
    assert(i >= -ngx_ && i < nx_ + ngx_ && j >= -ngy_ && j < ny_ + ngy_);
    return data_.data() + (j + ngy_) * stride_ + (i + ngx_) * nv_;
  }
  double& operator()(int i, int j, int v) { return cell(i, j)[v]; }
  double operator()(int i, int j, int v) const { return cell(i, j)[v]; }

  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }
  std::size_t size() const { return data_.size(); }

  void fill(double value) { data_.assign(data_.size(), value); }

private:
  int nx_ = 0, ny_ = 0, nv_ = 0, ngx_ = 0, ngy_ = 0;
  int stride_ = 0;
  std::vector<double> data_;
};

} // namespace wbfv
