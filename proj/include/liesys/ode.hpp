#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "liesys/linalg.hpp"

namespace liesys::ode {

/// dy/dt = rhs(t, y); the callee writes into `dydt` (already sized).
using Rhs = std::function<void(double t, const Vec& y, Vec& dydt)>;

struct Tolerances {
  double abs = 1e-10;
  double rel = 1e-10;
};

struct IvpProblem {
  Rhs rhs;
  Vec y0;
  /// Output grid; grid.front() is the initial time, grid.back() the final time.
  std::vector<double> grid;
  Tolerances tol;
  /// When set, classical RK4 with this maximal step instead of adaptive DOPRI5.
  std::optional<double> fixed_step;
  /// Adaptive mode only: shorten steps so that every grid point is a step
  /// endpoint instead of an interpolated value. Samples then carry the
  /// fifth-order step accuracy, at the price of more steps on fine grids.
  bool land_on_grid = false;
  double min_step = 1e-13;
  long max_steps = 5'000'000;
};

struct StepStatistics {
  long accepted = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

struct IvpSolution {
  std::vector<double> t;
  std::vector<Vec> y;
  StepStatistics stats;
};

/// Integrates the problem and returns the solution sampled at `grid`.
/// Adaptive mode: Dormand-Prince 5(4), local error per component bounded by
/// abs + rel * |y|, dense output from the fourth-order continuous extension
/// of the method. Throws StepUnderflow or NonFiniteValue.
IvpSolution solve_ivp(const IvpProblem& problem);

/// Composite adaptive Simpson on [a, b] with absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

/// F(t_i) = integral_0^{t_i} f. Grid must be increasing and start at >= 0.
std::vector<double> cumulative(const std::function<double(double)>& f,
                               std::span<const double> grid, double tol = 1e-12);

/// Continuous antiderivative F(t) = integral_0^t f on [0, T], tabulated on a
/// fine uniform grid and evaluated by cubic Hermite interpolation (F' = f is
/// known exactly). Antiderivatives can be chained to build iterated integrals.
class Antiderivative {
 public:
  Antiderivative(std::function<double(double)> f, double t_end, int intervals = 4096,
                 double tol = 1e-13);
  double operator()(double t) const;
  double derivative(double t) const { return f_(t); }
  double t_end() const { return t_end_; }

 private:
  std::function<double(double)> f_;
  double t_end_;
  double h_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

struct QuadratureSpec {
  std::function<double(double)> integrand;
  int depth = 1;  ///< 1, 2 or 3
  double upper = 0.0;
  double tol = 1e-12;
  int intervals = 4096;  ///< resolution of inner antiderivative tables
};

/// integral_0^t dt1 integral_0^{t1} dt2 ... f, nested `depth` times.
/// Depths 2 and 3 cascade one-dimensional rules over inner antiderivatives.
double iterated_integral(const QuadratureSpec& spec);

}  // namespace liesys::ode
