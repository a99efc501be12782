#pragma once

#include "wbfv/errors.hpp"

namespace wbfv {

// Equation of state, mapping (rho, specific internal energy) <-> pressure.
//
// ideal:            p = (gamma - 1) rho eps
// ideal_radiation:  p = rho T + T^4,  rho eps = rho T/(gamma - 1) + 3 T^4
//                   (gas constant and radiation constant normalized to 1)
class Eos {
public:
  enum class Kind { ideal, ideal_radiation };

  static Eos ideal(double gamma) { return Eos(Kind::ideal, gamma); }
  static Eos ideal_radiation(double gamma) {
    return Eos(Kind::ideal_radiation, gamma);
  }

  Kind kind() const { return kind_; }
  double gamma() const { return gamma_; }

  double pressure(double rho, double eps) const {
    if (kind_ == Kind::ideal) return (gamma_ - 1.0) * rho * eps;
    const double T = temperature_from_energy(rho, eps);
    const double T2 = T * T;
    return rho * T + T2 * T2;
  }

  double specific_internal_energy(double rho, double p) const {
    if (kind_ == Kind::ideal) return p / ((gamma_ - 1.0) * rho);
    const double T = temperature_from_pressure(rho, p);
    const double T2 = T * T;
    return T / (gamma_ - 1.0) + 3.0 * T2 * T2 / rho;
  }

  // Upper bound for the adiabatic sound speed, used for dissipation and CFL.
  // For the ideal gas it is exact; for gas + radiation the effective Gamma_1
  // lies in [4/3, gamma], so sqrt(gamma p / rho) bounds it from above.
  double sound_speed(double rho, double p) const;

  // Newton solves for the gas+radiation temperature; monotone convergence
  // from the chosen starting values since both residuals are increasing and
  // convex in T. Residual tolerance 1e-13 * max(1, target).
  double temperature_from_pressure(double rho, double p) const;
  double temperature_from_energy(double rho, double eps) const;

private:
  Eos(Kind kind, double gamma) : kind_(kind), gamma_(gamma) {
    if (!(gamma > 1.0)) throw ConstructionError("Eos: gamma must exceed 1");
  }
  Kind kind_;
  double gamma_;
};

} // namespace wbfv
