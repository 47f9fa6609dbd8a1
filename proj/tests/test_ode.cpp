#include <doctest.h>

#include <cmath>

#include "liesys/errors.hpp"
#include "liesys/ode.hpp"

using namespace liesys;
using namespace liesys::ode;

namespace {

IvpProblem scalar(std::function<double(double, double)> f, double y0, std::vector<double> grid) {
  IvpProblem p;
  p.rhs = [f](double t, const Vec& y, Vec& dy) { dy(0) = f(t, y(0)); };
  p.y0 = Vec::Constant(1, y0);
  p.grid = std::move(grid);
  return p;
}

}  // namespace

TEST_CASE("solve_ivp basics") {
  SUBCASE("constant solution") {
    const auto sol = solve_ivp(scalar([](double, double) { return 0.0; }, 3.0, {0.0, 0.5, 2.0}));
    for (const Vec& y : sol.y) CHECK(y(0) == 3.0);
  }
  SUBCASE("exponential growth") {
    const auto sol = solve_ivp(scalar([](double, double y) { return y; }, 1.0, {0.0, 1.0}));
    CHECK(std::abs(sol.y.back()(0) - std::exp(1.0)) < 1e-9);
  }
  SUBCASE("classical particle under a constant force") {
    const double m = 2.0, f0 = 0.7, q0 = 0.3, p0 = -1.1;
    IvpProblem p;
    p.rhs = [&](double, const Vec& y, Vec& dy) { dy << y(1) / m, -f0; };
    p.y0 = Vec(2);
    p.y0 << q0, p0;
    for (int i = 0; i <= 40; ++i) p.grid.push_back(0.125 * i);
    const auto sol = solve_ivp(p);
    for (std::size_t i = 0; i < sol.t.size(); ++i) {
      const double t = sol.t[i];
      CHECK(std::abs(sol.y[i](0) - (q0 + p0 * t / m - f0 * t * t / (2 * m))) < 1e-9);
      CHECK(std::abs(sol.y[i](1) - (p0 - f0 * t)) < 1e-9);
    }
  }
  SUBCASE("dense output between large steps") {
    std::vector<double> grid;
    for (int i = 0; i <= 2000; ++i) grid.push_back(0.005 * i);
    auto p = scalar([](double t, double) { return std::cos(t); }, 0.0, grid);
    p.tol = {1e-12, 1e-12};
    const auto sol = solve_ivp(p);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      worst = std::max(worst, std::abs(sol.y[i](0) - std::sin(grid[i])));
    CHECK(worst < 1e-10);
    // Far fewer steps than output points.
    CHECK(sol.stats.accepted < 500);

    p.land_on_grid = true;
    const auto landed = solve_ivp(p);
    CHECK(landed.stats.accepted >= 2000);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(landed.y[i](0) - std::sin(grid[i])) < 1e-11);
  }
  SUBCASE("landing on an irregular grid") {
    auto p = scalar([](double, double y) { return y; }, 1.0, {0.0, 0.37, 0.38, 2.0, 5.0});
    p.land_on_grid = true;
    const auto sol = solve_ivp(p);
    REQUIRE(sol.t == p.grid);
    for (std::size_t i = 0; i < sol.t.size(); ++i)
      CHECK(std::abs(sol.y[i](0) - std::exp(sol.t[i])) < 1e-8 * std::exp(sol.t[i]));
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(solve_ivp(scalar([](double, double y) { return y * y; }, 1.0, {0.0, 2.0})), Error);
    CHECK_THROWS_AS(solve_ivp(scalar([](double, double) { return std::nan(""); }, 1.0, {0.0, 1.0})),
                    NonFiniteValue);
    CHECK_THROWS_AS(solve_ivp(scalar([](double, double) { return 0.0; }, 1.0, {1.0, 0.5})), Error);
  }
}

TEST_CASE("fixed-step RK4 converges at fourth order") {
  std::vector<double> hs, errs;
  for (double h : {0.2, 0.1, 0.05, 0.025, 0.0125}) {
    auto p = scalar([](double, double y) { return -y; }, 1.0, {0.0, 2.0});
    p.fixed_step = h;
    const auto sol = solve_ivp(p);
    hs.push_back(std::log(h));
    errs.push_back(std::log(std::abs(sol.y.back()(0) - std::exp(-2.0))));
  }
  // Least-squares slope of log error against log h.
  const double n = static_cast<double>(hs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    sx += hs[i];
    sy += errs[i];
    sxx += hs[i] * hs[i];
    sxy += hs[i] * errs[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  CHECK(slope == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("iterated integrals") {
  auto zero = [](double) { return 0.0; };
  auto one = [](double) { return 1.0; };
  for (int d : {1, 2, 3}) CHECK(iterated_integral({zero, d, 2.0}) == 0.0);
  CHECK(iterated_integral({one, 2, 1.7}) == doctest::Approx(1.7 * 1.7 / 2).epsilon(1e-13));
  CHECK(iterated_integral({one, 3, 1.7}) == doctest::Approx(1.7 * 1.7 * 1.7 / 6).epsilon(1e-11));
  const double w = 2.3;
  for (double t : {0.5, 2.0, 4.5})
    CHECK(std::abs(iterated_integral({[w](double s) { return std::cos(w * s); }, 2, t}) -
                   (1 - std::cos(w * t)) / (w * w)) < 1e-11);
  CHECK_THROWS_AS(iterated_integral({one, 4, 1.0}), Error);
  CHECK_THROWS_AS(iterated_integral({[](double s) { return 1.0 / (s - 0.5); }, 1, 1.0}), Error);

  SUBCASE("depth 2 equals cumulative of cumulative") {
    auto f = [](double s) { return std::exp(-s) * std::sin(3 * s); };
    auto inner = [&](double s) { return cumulative(f, std::vector<double>{0.0, s}).back(); };
    for (double t : {0.7, 2.5}) {
      const double nested = cumulative(inner, std::vector<double>{0.0, t}).back();
      CHECK(std::abs(iterated_integral({f, 2, t}) - nested) < 1e-10);
    }
  }
}

TEST_CASE("cumulative antiderivatives") {
  const std::vector<double> grid = {0.0, 0.3, 1.0, 2.2, 5.0};
  const auto c = cumulative([](double) { return 2.5; }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(c[i] == doctest::Approx(2.5 * grid[i]).epsilon(1e-15));
  const auto lin = cumulative([](double s) { return s; }, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(lin[i] - grid[i] * grid[i] / 2) < 1e-14);
  CHECK(c.front() == 0.0);

  SUBCASE("monochromatic driving field") {
    const double e0 = 0.4, e1 = 1.2, w = 3.0;
    const auto f = cumulative([&](double s) { return e0 + e1 * std::cos(w * s); }, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      CHECK(std::abs(f[i] - (e0 * grid[i] + e1 / w * std::sin(w * grid[i]))) < 1e-12);
  }
  SUBCASE("additivity for a polynomial") {
    auto p = [](double s) { return 1.0 - 2.0 * s + 0.5 * s * s * s; };
    const auto f = cumulative(p, grid);
    for (std::size_t i = 1; i < grid.size(); ++i)
      CHECK(std::abs(f[i] - (f[i - 1] + adaptive_simpson(p, grid[i - 1], grid[i]))) < 1e-12);
  }
  SUBCASE("tabulated antiderivative") {
    const Antiderivative a([](double s) { return std::sin(s) + s; }, 4.0);
    for (double t : {0.0, 0.01, 1.234, 3.99, 4.0})
      CHECK(std::abs(a(t) - (1 - std::cos(t) + t * t / 2)) < 1e-12);
    CHECK(a.derivative(1.0) == std::sin(1.0) + 1.0);
  }
}
