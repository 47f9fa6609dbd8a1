#include "liesys/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "liesys/errors.hpp"

namespace liesys::ode {
namespace {

void check_finite(const Vec& v, double t) {
  if (!v.allFinite())
    throw NonFiniteValue("non-finite right-hand side at t=" + std::to_string(t));
}

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Continuous extension of order 4 (Hairer, Norsett, Wanner).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

void validate(const IvpProblem& p) {
  if (p.grid.size() < 2) throw Error("solve_ivp: output grid needs at least two points");
  for (std::size_t i = 1; i < p.grid.size(); ++i)
    if (!(p.grid[i] > p.grid[i - 1])) throw Error("solve_ivp: output grid must be increasing");
  if (!(p.tol.abs > 0.0) || !(p.tol.rel > 0.0)) throw Error("solve_ivp: tolerances must be positive");
  if (p.fixed_step && !(*p.fixed_step > 0.0)) throw Error("solve_ivp: fixed step must be positive");
}

IvpSolution solve_fixed(const IvpProblem& p) {
  IvpSolution sol;
  const auto n = p.y0.size();
  Vec y = p.y0, k1(n), k2(n), k3(n), k4(n);
  sol.t.push_back(p.grid.front());
  sol.y.push_back(y);
  for (std::size_t i = 1; i < p.grid.size(); ++i) {
    const double t0 = p.grid[i - 1], t1 = p.grid[i];
    const auto steps = static_cast<long>(std::ceil((t1 - t0) / *p.fixed_step - 1e-9));
    const double h = (t1 - t0) / static_cast<double>(std::max(1L, steps));
    double t = t0;
    for (long s = 0; s < std::max(1L, steps); ++s) {
      p.rhs(t, y, k1);
      p.rhs(t + 0.5 * h, y + 0.5 * h * k1, k2);
      p.rhs(t + 0.5 * h, y + 0.5 * h * k2, k3);
      p.rhs(t + h, y + h * k3, k4);
      sol.stats.rhs_evaluations += 4;
      y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      check_finite(y, t);
      t = t0 + static_cast<double>(s + 1) * h;
      ++sol.stats.accepted;
    }
    sol.t.push_back(t1);
    sol.y.push_back(y);
  }
  return sol;
}

IvpSolution solve_adaptive(const IvpProblem& p) {
  IvpSolution sol;
  const auto n = p.y0.size();
  const double t_end = p.grid.back();
  double t = p.grid.front();
  Vec y = p.y0;
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y_new(n), err(n);

  p.rhs(t, y, k1);
  ++sol.stats.rhs_evaluations;
  check_finite(k1, t);

  auto error_norm = [&](const Vec& e, const Vec& ya, const Vec& yb) {
    double worst = 0.0;
    for (Eigen::Index i = 0; i < e.size(); ++i) {
      const double scale = p.tol.abs + p.tol.rel * std::max(std::abs(ya(i)), std::abs(yb(i)));
      worst = std::max(worst, std::abs(e(i)) / scale);
    }
    return worst;
  };

  // Initial step from the usual two-evaluation heuristic.
  double h;
  {
    const double d0 = y.cwiseAbs().maxCoeff(), d1 = k1.cwiseAbs().maxCoeff();
    h = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h = std::min(h, t_end - t);
    Vec y1 = y + h * k1, f1(n);
    p.rhs(t + h, y1, f1);
    ++sol.stats.rhs_evaluations;
    const double d2 = (f1 - k1).cwiseAbs().maxCoeff() / h;
    const double scale = p.tol.abs + p.tol.rel * d0;
    const double h1 = std::max(d1, d2) <= 1e-15
                          ? std::max(1e-6, h * 1e-3)
                          : std::pow(0.01 * scale / std::max(d1, d2), 1.0 / 5.0);
    h = std::min({100 * h, h1, t_end - t});
    h = std::max(h, p.min_step);
  }

  std::size_t next_out = 1;
  sol.t.push_back(t);
  sol.y.push_back(y);

  while (next_out < p.grid.size()) {
    if (sol.stats.accepted + sol.stats.rejected > p.max_steps) throw StepUnderflow(t);
    if (t + h > t_end) h = t_end - t;
    double hs = h;
    const bool landing = p.land_on_grid && t + hs >= p.grid[next_out];
    if (landing) hs = p.grid[next_out] - t;

    p.rhs(t + c2 * hs, y + hs * (a21 * k1), k2);
    p.rhs(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2), k3);
    p.rhs(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3), k4);
    p.rhs(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), k5);
    p.rhs(t + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), k6);
    y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    p.rhs(t + hs, y_new, k7);
    sol.stats.rhs_evaluations += 6;
    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    const double en = y_new.allFinite() && k7.allFinite() ? error_norm(err, y, y_new)
                                                          : std::numeric_limits<double>::infinity();
    if (en <= 1.0) {
      const Vec ydiff = y_new - y;
      const Vec bspl = hs * k1 - ydiff;
      const Vec r4 = ydiff - hs * k7 - bspl;
      const Vec r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      double t_new = t + hs;
      if (landing)
        t_new = p.grid[next_out];
      else if (t_end - t_new < 1e-12 * std::max(1.0, std::abs(t_end)))
        t_new = t_end;
      while (next_out < p.grid.size() && p.grid[next_out] <= t_new) {
        const double tg = p.grid[next_out];
        sol.t.push_back(tg);
        if (tg == t_new) {
          sol.y.push_back(y_new);
        } else {
          const double th = (tg - t) / hs, th1 = 1.0 - th;
          sol.y.push_back(y + th * (ydiff + th1 * (bspl + th * (r4 + th1 * r5))));
        }
        ++next_out;
      }
      t = t_new;
      y = y_new;
      k1 = k7;
      ++sol.stats.accepted;
      const double factor = en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
      h = landing ? std::max(h, hs * factor) : hs * factor;
    } else {
      ++sol.stats.rejected;
      if (!std::isfinite(en)) {
        h = hs * 0.1;
      } else {
        h = hs * std::clamp(0.9 * std::pow(en, -0.2), 0.1, 0.9);
      }
      if (h < p.min_step) {
        if (!y_new.allFinite() || !k7.allFinite()) check_finite(y_new.allFinite() ? k7 : y_new, t);
        throw StepUnderflow(t);
      }
    }
  }
  return sol;
}

double simpson_recursive(const std::function<double(double)>& f, double a, double b, double fa,
                         double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  const double floor = 1e-15 * (std::abs(left) + std::abs(right));
  if (depth <= 0 || std::abs(delta) <= std::max(15.0 * tol, floor)) return left + right + delta / 15.0;
  return simpson_recursive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recursive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

IvpSolution solve_ivp(const IvpProblem& problem) {
  validate(problem);
  return problem.fixed_step ? solve_fixed(problem) : solve_adaptive(problem);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
    throw NonFiniteValue("non-finite integrand on [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]");
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double result = simpson_recursive(f, a, b, fa, fm, fb, whole, tol, 30);
  if (!std::isfinite(result)) throw NonFiniteValue("non-finite integrand");
  return result;
}

std::vector<double> cumulative(const std::function<double(double)>& f,
                               std::span<const double> grid, double tol) {
  std::vector<double> out;
  out.reserve(grid.size());
  double acc = 0.0, prev = 0.0;
  for (double t : grid) {
    if (t < prev) throw Error("cumulative: grid must be increasing from 0");
    acc += adaptive_simpson(f, prev, t, tol);
    out.push_back(acc);
    prev = t;
  }
  return out;
}

Antiderivative::Antiderivative(std::function<double(double)> f, double t_end, int intervals,
                               double tol)
    : f_(std::move(f)), t_end_(t_end) {
  if (!(t_end >= 0.0) || intervals < 1) throw Error("Antiderivative: invalid range");
  h_ = t_end > 0.0 ? t_end / intervals : 1.0;
  values_.assign(static_cast<std::size_t>(intervals) + 1, 0.0);
  slopes_.assign(values_.size(), 0.0);
  slopes_[0] = f_(0.0);
  for (int i = 1; i <= intervals && t_end > 0.0; ++i) {
    const double a = (i - 1) * h_, b = i * h_;
    values_[static_cast<std::size_t>(i)] =
        values_[static_cast<std::size_t>(i - 1)] + adaptive_simpson(f_, a, b, std::max(tol / intervals, 1e-17));
    slopes_[static_cast<std::size_t>(i)] = f_(b);
  }
}

double Antiderivative::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  const double slack = 1e-9 * std::max(1.0, t_end_);
  if (t > t_end_ + slack) throw Error("Antiderivative evaluated beyond its table");
  t = std::min(t, t_end_);
  auto i = static_cast<std::size_t>(std::floor(t / h_));
  i = std::min(i, values_.size() - 2);
  const double s = (t - i * h_) / h_;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s);
  const double h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s);
  const double h11 = s * s * (s - 1);
  return h00 * values_[i] + h10 * h_ * slopes_[i] + h01 * values_[i + 1] +
         h11 * h_ * slopes_[i + 1];
}

double iterated_integral(const QuadratureSpec& spec) {
  if (spec.depth < 1 || spec.depth > 3) throw Error("iterated_integral: depth must be 1, 2 or 3");
  if (spec.upper == 0.0) return 0.0;
  if (spec.depth == 1) return adaptive_simpson(spec.integrand, 0.0, spec.upper, spec.tol);

  Antiderivative first(spec.integrand, spec.upper, spec.intervals, spec.tol);
  if (spec.depth == 2)
    return adaptive_simpson([&](double s) { return first(s); }, 0.0, spec.upper, spec.tol);

  Antiderivative second([&](double s) { return first(s); }, spec.upper, spec.intervals, spec.tol);
  return adaptive_simpson([&](double s) { return second(s); }, 0.0, spec.upper, spec.tol);
}

}  // namespace liesys::ode
