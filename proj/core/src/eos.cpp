#include "wbfv/eos.hpp"

#include <cmath>
#include <string>

namespace wbfv {

double Eos::sound_speed(double rho, double p) const {
  if (!(rho > 0.0) || !(p > 0.0))
    throw StateError("Eos::sound_speed: non-positive density or pressure");
  return std::sqrt(gamma_ * p / rho);
}

namespace {
[[noreturn]] void newton_failure(const char* what, double rho, double target) {
  throw ConvergenceError(std::string("Eos: temperature Newton solve for ") +
                         what + " did not converge (rho=" +
                         std::to_string(rho) + ", target=" +
                         std::to_string(target) + ")");
}
} // namespace

double Eos::temperature_from_pressure(double rho, double p) const {
  if (!(rho > 0.0) || !(p > 0.0))
    throw StateError("Eos::temperature_from_pressure: non-positive input");
  // f(T) = rho T + T^4 - p is increasing and convex; T0 = p/rho gives
  // f(T0) >= 0, so Newton descends monotonically to the root.
  const double tol = 1e-13 * std::max(1.0, p);
  double T = p / rho;
  for (int it = 0; it < 50; ++it) {
    const double T2 = T * T;
    const double f = rho * T + T2 * T2 - p;
    if (std::abs(f) <= tol) return T;
    T -= f / (rho + 4.0 * T2 * T);
  }
  newton_failure("pressure", rho, p);
}

double Eos::temperature_from_energy(double rho, double eps) const {
  if (!(rho > 0.0) || !(eps > 0.0))
    throw StateError("Eos::temperature_from_energy: non-positive input");
  // g(T) = rho T/(gamma-1) + 3 T^4 - rho eps, same monotone setup with
  // T0 = (gamma-1) eps.
  const double target = rho * eps;
  const double tol = 1e-13 * std::max(1.0, target);
  const double c1 = rho / (gamma_ - 1.0);
  double T = (gamma_ - 1.0) * eps;
  for (int it = 0; it < 50; ++it) {
    const double T2 = T * T;
    const double g = c1 * T + 3.0 * T2 * T2 - target;
    if (std::abs(g) <= tol) return T;
    T -= g / (c1 + 12.0 * T2 * T);
  }
  newton_failure("energy", rho, target);
}

} // namespace wbfv
