#pragma once

#include <functional>
#include <string>
#include <vector>

#include "wbfv/errors.hpp"

namespace wbfv {

// Explicit Runge-Kutta tableau. Loading validates shape, explicitness,
// row-sum consistency a_i . 1 = c_i and sum(b) = 1 (to 1e-12).
struct ButcherTableau {
  int stages = 0;
  std::vector<double> a; // stages x stages, row-major, strictly lower
  std::vector<double> b;
  std::vector<double> c;

  static ButcherTableau forward_euler();
  static ButcherTableau ssprk43();
  static ButcherTableau from_file(const std::string& path);

  void validate() const;
};

// Explicit RK stepper over flat state vectors. The final combination is
// computed as U += dt * (K0 + sum_{s>=1} b_s (K_s - K0)), algebraically the
// usual weighted sum (since sum b = 1) but exact when all stage derivatives
// coincide: a constant-RHS problem advances by exactly fl(U + fl(dt*K)),
// and an identically zero RHS leaves U bitwise unchanged.
class RKIntegrator {
public:
  using Rhs =
      std::function<void(std::vector<double>& u, double t, std::vector<double>& dudt)>;

  explicit RKIntegrator(ButcherTableau tab);

  // Advances U from t by dt in place. The RHS may modify u (ghost fill).
  void step(const Rhs& rhs, std::vector<double>& U, double t, double dt);

  int stages() const { return tab_.stages; }
  const ButcherTableau& tableau() const { return tab_; }

private:
  ButcherTableau tab_;
  std::vector<std::vector<double>> k_;
  std::vector<double> stage_;
};

} // namespace wbfv
