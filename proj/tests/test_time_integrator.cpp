#include <cmath>
#include <vector>

#include "doctest.h"
#include "wbfv/errors.hpp"
#include "wbfv/time_integrator.hpp"

using namespace wbfv;

namespace {

// b . A^{k-1} . 1 = 1/k!, the order conditions that govern linear problems
double linear_order_condition(const ButcherTableau& t, int k) {
  const int s = t.stages;
  std::vector<double> v(s, 1.0);
  for (int pow = 1; pow < k; ++pow) {
    std::vector<double> w(s, 0.0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) w[i] += t.a[i * s + j] * v[j];
    v = std::move(w);
  }
  double acc = 0.0;
  for (int i = 0; i < s; ++i) acc += t.b[i] * v[i];
  return acc;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// measured convergence order on y' = cos(t) y, y(0) = 1
double measured_order(const ButcherTableau& tab, int steps) {
  RKIntegrator rk(tab);
  auto rhs = [](std::vector<double>& u, double t, std::vector<double>& d) {
    d[0] = std::cos(t) * u[0];
  };
  auto solve = [&](int n) {
    std::vector<double> U{1.0};
    const double dt = 1.0 / n;
    for (int i = 0; i < n; ++i) rk.step(rhs, U, i * dt, dt);
    return std::abs(U[0] - std::exp(std::sin(1.0)));
  };
  const double e1 = solve(steps), e2 = solve(2 * steps);
  return std::log2(e1 / e2);
}

} // namespace

TEST_CASE("tableau validation") {
  CHECK_NOTHROW(ButcherTableau::forward_euler().validate());
  CHECK_NOTHROW(ButcherTableau::ssprk43().validate());

  ButcherTableau bad = ButcherTableau::ssprk43();
  bad.b[0] += 0.5; // weights no longer sum to one
  CHECK_THROWS_AS(bad.validate(), ConstructionError);

  ButcherTableau inconsistent = ButcherTableau::ssprk43();
  inconsistent.c[1] += 0.25; // row sum no longer matches c
  CHECK_THROWS_AS(inconsistent.validate(), ConstructionError);

  ButcherTableau implicit = ButcherTableau::forward_euler();
  implicit.a[0] = 0.3; // diagonal entry
  CHECK_THROWS_AS(implicit.validate(), ConstructionError);
}

TEST_CASE("bundled eighth order tableau loads and validates") {
  const ButcherTableau t =
      ButcherTableau::from_file(std::string(WBFV_TABLEAU_DIR) +
                                "/rk8_dop853.txt");
  CHECK(t.stages >= 12);
  CHECK_NOTHROW(t.validate());
  for (int k = 1; k <= 8; ++k)
    CHECK(linear_order_condition(t, k) ==
          doctest::Approx(1.0 / factorial(k)).epsilon(1e-12));

  CHECK_THROWS_AS(ButcherTableau::from_file("/nonexistent/tableau.txt"),
                  IoError);
}

TEST_CASE("linear order conditions hold through the claimed order") {
  const ButcherTableau euler = ButcherTableau::forward_euler();
  CHECK(linear_order_condition(euler, 1) == doctest::Approx(1.0));

  const ButcherTableau ssp = ButcherTableau::ssprk43();
  for (int k = 1; k <= 3; ++k)
    CHECK(linear_order_condition(ssp, k) ==
          doctest::Approx(1.0 / factorial(k)).epsilon(1e-13));
}

TEST_CASE("measured convergence on a smooth scalar problem") {
  CHECK(measured_order(ButcherTableau::forward_euler(), 64) ==
        doctest::Approx(1.0).epsilon(0.1));
  CHECK(measured_order(ButcherTableau::ssprk43(), 16) ==
        doctest::Approx(3.0).epsilon(0.1));
}

TEST_CASE("stage times follow the c coefficients") {
  const ButcherTableau tab = ButcherTableau::ssprk43();
  RKIntegrator rk(tab);
  std::vector<double> seen;
  auto rhs = [&](std::vector<double>&, double t, std::vector<double>& d) {
    seen.push_back(t);
    d[0] = 0.0;
  };
  std::vector<double> U{1.0};
  rk.step(rhs, U, 2.0, 0.5);
  REQUIRE(static_cast<int>(seen.size()) == tab.stages);
  for (int s = 0; s < tab.stages; ++s)
    CHECK(seen[s] == doctest::Approx(2.0 + 0.5 * tab.c[s]).epsilon(1e-14));
}

TEST_CASE("update form is exact in degenerate cases") {
  SUBCASE("zero RHS leaves the state bitwise unchanged") {
    for (const ButcherTableau& tab :
         {ButcherTableau::forward_euler(), ButcherTableau::ssprk43(),
          ButcherTableau::from_file(std::string(WBFV_TABLEAU_DIR) +
                                    "/rk8_dop853.txt")}) {
      RKIntegrator rk(tab);
      auto rhs = [](std::vector<double>&, double, std::vector<double>& d) {
        d.assign(d.size(), 0.0);
      };
      std::vector<double> U{0.1, -3.7, 1e-17, 6.02e23};
      const std::vector<double> before = U;
      rk.step(rhs, U, 0.0, 0.01);
      for (size_t i = 0; i < U.size(); ++i) CHECK(U[i] == before[i]);
    }
  }
  SUBCASE("constant RHS advances by exactly fl(U + fl(dt*K))") {
    const double K = 2.718281828459045, dt = 0.01 * (1.0 + std::pow(2.0, -30));
    for (const ButcherTableau& tab :
         {ButcherTableau::forward_euler(), ButcherTableau::ssprk43()}) {
      RKIntegrator rk(tab);
      auto rhs = [&](std::vector<double>&, double, std::vector<double>& d) {
        d[0] = K;
      };
      std::vector<double> U{3141.592653589793};
      volatile double prod = dt * K; // block fused contraction
      const double want = U[0] + prod;
      rk.step(rhs, U, 0.0, dt);
      CHECK(U[0] == want);
    }
  }
}
