#include "wbfv/time_integrator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wbfv {

ButcherTableau ButcherTableau::forward_euler() {
  ButcherTableau t;
  t.stages = 1;
  t.a = {0.0};
  t.b = {1.0};
  t.c = {0.0};
  return t;
}

ButcherTableau ButcherTableau::ssprk43() {
  const double h = 0.5;
  const double s = 1.0 / 6.0;
  ButcherTableau t;
  t.stages = 4;
  t.a = {0.0, 0.0, 0.0, 0.0, //
         h,   0.0, 0.0, 0.0, //
         h,   h,   0.0, 0.0, //
         s,   s,   s,   0.0};
  t.b = {s, s, s, h};
  t.c = {0.0, h, 1.0, h};
  return t;
}

ButcherTableau ButcherTableau::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open tableau file: " + path);

  // Token stream with '#' comments stripped.
  std::vector<double> nums;
  int stages = 0;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok.rfind("stages=", 0) == 0) {
        stages = std::stoi(tok.substr(7));
        continue;
      }
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        nums.push_back(v);
      } catch (const std::exception&) {
        throw IoError("bad token '" + tok + "' in tableau file: " + path);
      }
    }
  }
  if (stages <= 0)
    throw IoError("tableau file missing 'stages=N' header: " + path);
  const std::size_t want =
      static_cast<std::size_t>(stages) * stages + 2 * static_cast<std::size_t>(stages);
  if (nums.size() != want)
    throw IoError("tableau file has " + std::to_string(nums.size()) +
                  " numbers, expected " + std::to_string(want) + ": " + path);

  ButcherTableau t;
  t.stages = stages;
  t.a.assign(nums.begin(), nums.begin() + static_cast<std::ptrdiff_t>(stages) * stages);
  t.b.assign(nums.begin() + static_cast<std::ptrdiff_t>(stages) * stages,
             nums.begin() + static_cast<std::ptrdiff_t>(stages) * stages + stages);
  t.c.assign(nums.end() - stages, nums.end());
  t.validate();
  return t;
}

void ButcherTableau::validate() const {
  if (stages <= 0) throw ConstructionError("tableau has no stages");
  if (a.size() != static_cast<std::size_t>(stages) * stages ||
      b.size() != static_cast<std::size_t>(stages) ||
      c.size() != static_cast<std::size_t>(stages))
    throw ConstructionError("tableau array sizes inconsistent with stage count");

  const double tol = 1e-12;
  for (int i = 0; i < stages; ++i) {
    for (int j = i; j < stages; ++j)
      if (a[static_cast<std::size_t>(i) * stages + j] != 0.0)
        throw ConstructionError("tableau is not explicit: a(" + std::to_string(i) +
                                "," + std::to_string(j) + ") != 0");
    double row = 0.0;
    for (int j = 0; j < i; ++j) row += a[static_cast<std::size_t>(i) * stages + j];
    if (std::abs(row - c[i]) > tol)
      throw ConstructionError("tableau row " + std::to_string(i) +
                              " sum does not match abscissa");
  }
  double bsum = 0.0;
  for (double w : b) bsum += w;
  if (std::abs(bsum - 1.0) > tol)
    throw ConstructionError("tableau weights do not sum to one");
}

RKIntegrator::RKIntegrator(ButcherTableau tab) : tab_(std::move(tab)) {
  tab_.validate();
}

void RKIntegrator::step(const Rhs& rhs, std::vector<double>& U, double t, double dt) {
  const int S = tab_.stages;
  const std::size_t n = U.size();
  k_.resize(static_cast<std::size_t>(S));
  for (auto& k : k_) k.assign(n, 0.0);
  stage_.resize(n);

  rhs(U, t, k_[0]);
  for (int s = 1; s < S; ++s) {
    std::copy(U.begin(), U.end(), stage_.begin());
    for (int j = 0; j < s; ++j) {
      const double asj = tab_.a[static_cast<std::size_t>(s) * S + j];
      if (asj == 0.0) continue;
      const double w = dt * asj;
      const double* kj = k_[static_cast<std::size_t>(j)].data();
      for (std::size_t m = 0; m < n; ++m) stage_[m] += w * kj[m];
    }
    rhs(stage_, t + tab_.c[static_cast<std::size_t>(s)] * dt, k_[static_cast<std::size_t>(s)]);
  }

  // Combined slope in delta form: k0 + sum_{s>=1} b_s (k_s - k0). When every
  // stage returns the same derivative the deltas are exact zeros and the
  // update collapses to U += dt*k0 with no roundoff from the weights.
  const double* k0 = k_[0].data();
  if (S == 1) {
    for (std::size_t m = 0; m < n; ++m) U[m] += dt * k0[m];
    return;
  }
  std::copy(k_[0].begin(), k_[0].end(), stage_.begin());
  for (int s = 1; s < S; ++s) {
    const double bs = tab_.b[static_cast<std::size_t>(s)];
    if (bs == 0.0) continue;
    const double* ks = k_[static_cast<std::size_t>(s)].data();
    for (std::size_t m = 0; m < n; ++m) stage_[m] += bs * (ks[m] - k0[m]);
  }
  for (std::size_t m = 0; m < n; ++m) U[m] += dt * stage_[m];
}

} // namespace wbfv
