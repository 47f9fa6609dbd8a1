#include "liesys/weinorman.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "liesys/errors.hpp"

namespace liesys {
namespace {

void check_times(const std::vector<double>& times) {
  if (times.empty() || times.front() != 0.0)
    throw Error("Wei-Norman sample times must start at t = 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (!(times[i] > times[i - 1])) throw Error("Wei-Norman sample times must increase strictly");
}

void check_sizes(const StructureConstants& sc, const FactorizationOrder& order) {
  if (order.size() != sc.dim())
    throw DimensionMismatch("factorization order " + order.to_string() + " does not match dim " +
                            std::to_string(sc.dim()) + " of " + sc.name());
}

}  // namespace

Mat wn_matrix(const StructureConstants& sc, const FactorizationOrder& order, const Vec& v) {
  check_sizes(sc, order);
  const int r = sc.dim();
  if (v.size() != r) throw DimensionMismatch("wn_matrix: v has wrong length");
  Mat m(r, r);
  Mat prefix = Mat::Identity(r, r);
  for (int k = 0; k < r; ++k) {
    const int alpha = order[k];
    m.col(alpha) = prefix.col(alpha);
    if (k + 1 < r && v(alpha) != 0.0) prefix = prefix * exp_ad(v(alpha), alpha, sc);
  }
  return m;
}

Vec wn_rhs(const StructureConstants& sc, const FactorizationOrder& order, const Vec& v,
           const Vec& b, double t) {
  if (b.size() != sc.dim()) throw DimensionMismatch("wn_rhs: control vector has wrong length");
  const Mat m = wn_matrix(sc, order, v);
  const double cond = condition_number(m);
  if (!(cond <= kBreakdownCondition)) throw FactorizationBreakdown(t, cond);
  return m.colPivHouseholderQr().solve(b);
}

WeiNormanTrajectory integrate(const StructureConstants& sc, const FactorizationOrder& order,
                              const ControlSignal& controls, const std::vector<double>& times,
                              const WnOptions& options) {
  check_sizes(sc, order);
  check_times(times);
  if (controls.dim() != sc.dim())
    throw DimensionMismatch("control dimension " + std::to_string(controls.dim()) +
                            " does not match algebra " + sc.name());
  ode::IvpProblem p;
  p.rhs = [&](double t, const Vec& v, Vec& dv) { dv = wn_rhs(sc, order, v, controls(t), t); };
  p.y0 = Vec::Zero(sc.dim());
  p.grid = times;
  p.tol = options.tol;
  p.fixed_step = options.fixed_step;
  p.land_on_grid = options.land_on_grid;
  ode::IvpSolution sol = ode::solve_ivp(p);
  return {sc.name(), order, std::move(sol.t), std::move(sol.y)};
}

std::vector<Mat> group_curve(const MatrixRep& rep, const WeiNormanTrajectory& wn) {
  std::vector<Mat> g;
  g.reserve(wn.v.size());
  for (const Vec& v : wn.v) g.push_back(product_of_exponentials(rep, wn.order, v));
  return g;
}

double residual(const MatrixRep& rep, const std::vector<double>& t, const std::vector<Mat>& g,
                const ControlSignal& controls) {
  const std::size_t n = t.size();
  if (n < 3 || g.size() != n) throw Error("residual needs at least 3 samples");
  if (controls.dim() != static_cast<int>(rep.generators.size()))
    throw DimensionMismatch("residual: control dimension does not match representation");
  // Five-point Lagrange derivative (fourth order), stencil shifted at the ends.
  const std::size_t width = std::min<std::size_t>(5, n);
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first =
        std::min(i > width / 2 ? i - width / 2 : std::size_t{0}, n - width);
    const double x = t[i];
    Mat gdot = Mat::Zero(g[i].rows(), g[i].cols());
    for (std::size_t k = first; k < first + width; ++k) {
      double denom = 1.0, weight = 0.0;
      for (std::size_t l = first; l < first + width; ++l) {
        if (l == k) continue;
        denom *= t[k] - t[l];
        double term = 1.0;
        for (std::size_t m = first; m < first + width; ++m)
          if (m != k && m != l) term *= x - t[m];
        weight += term;
      }
      gdot += (weight / denom) * (g[k] - g[i]);
    }
    const Mat r = gdot * g[i].inverse() + rep_element(rep, controls(t[i]));
    worst = std::max(worst, r.norm());
  }
  return worst;
}

double residual(const MatrixRep& rep, const WeiNormanTrajectory& wn, const ControlSignal& controls) {
  return residual(rep, wn.t, group_curve(rep, wn), controls);
}

QuadratureStructure probe_quadrature_structure(const StructureConstants& sc,
                                               const FactorizationOrder& order,
                                               const ControlSignal& controls, double t_end) {
  check_sizes(sc, order);
  const int r = sc.dim();
  QuadratureStructure out;
  out.depends.assign(static_cast<std::size_t>(r), std::vector<bool>(static_cast<std::size_t>(r)));
  std::mt19937_64 rng(20240917);
  std::uniform_real_distribution<double> coord(-1.0, 1.0), when(0.0, t_end);
  constexpr int kProbes = 12;
  constexpr double kDelta = 1e-3;
  for (int probe = 0; probe < kProbes; ++probe) {
    Vec v(r);
    for (int i = 0; i < r; ++i) v(i) = coord(rng);
    const double t = when(rng);
    const Vec b = controls(t);
    Vec base;
    try {
      base = wn_rhs(sc, order, v, b, t);
    } catch (const FactorizationBreakdown&) {
      continue;
    }
    for (int j = 0; j < r; ++j) {
      Vec w = v;
      w(j) += kDelta;
      Vec moved;
      try {
        moved = wn_rhs(sc, order, w, b, t);
      } catch (const FactorizationBreakdown&) {
        continue;
      }
      for (int k = 0; k < r; ++k)
        if (std::abs(moved(k) - base(k)) > 1e-9 * (1.0 + std::abs(base(k))))
          out.depends[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = true;
    }
  }
  // Kahn-style ordering; a component is ready once all its dependencies are solved.
  std::vector<bool> solved(static_cast<std::size_t>(r), false);
  for (int round = 0; round < r; ++round) {
    int next = -1;
    for (int k = 0; k < r && next < 0; ++k) {
      if (solved[static_cast<std::size_t>(k)]) continue;
      bool ready = true;
      for (int j = 0; j < r; ++j)
        if (out.depends[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] &&
            !solved[static_cast<std::size_t>(j)])
          ready = false;
      if (ready) next = k;
    }
    if (next < 0) return out;
    solved[static_cast<std::size_t>(next)] = true;
    out.solve_order.push_back(next);
  }
  out.applicable = true;
  return out;
}

std::optional<WeiNormanTrajectory> solve_by_quadratures(const StructureConstants& sc,
                                                        const FactorizationOrder& order,
                                                        const ControlSignal& controls,
                                                        const std::vector<double>& times,
                                                        double max_step) {
  check_times(times);
  if (controls.dim() != sc.dim())
    throw DimensionMismatch("control dimension does not match algebra " + sc.name());
  const int r = sc.dim();
  const QuadratureStructure structure =
      probe_quadrature_structure(sc, order, controls, std::max(times.back(), 1.0));
  if (!structure.applicable) return std::nullopt;

  // Fine grid: nodes 2i are grid points, nodes 2i+1 interval midpoints.
  std::vector<double> nodes{0.0};
  std::vector<std::size_t> sample_node{0};
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double span = times[i] - times[i - 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(span / max_step)));
    for (int k = 1; k <= pieces; ++k) {
      const double a = times[i - 1] + span * (k - 1) / pieces;
      const double b = k == pieces ? times[i] : times[i - 1] + span * k / pieces;
      nodes.push_back(0.5 * (a + b));
      nodes.push_back(b);
    }
    sample_node.push_back(nodes.size() - 1);
  }
  std::vector<Vec> v(nodes.size(), Vec::Zero(r));
  std::vector<double> f(nodes.size());
  for (int k : structure.solve_order) {
    for (std::size_t n = 0; n < nodes.size(); ++n)
      f[n] = wn_rhs(sc, order, v[n], controls(nodes[n]), nodes[n])(k);
    for (std::size_t n = 2; n < nodes.size(); n += 2) {
      const double h = nodes[n] - nodes[n - 2];
      const double start = v[n - 2](k);
      v[n - 1](k) = start + h / 24.0 * (5.0 * f[n - 2] + 8.0 * f[n - 1] - f[n]);
      v[n](k) = start + h / 6.0 * (f[n - 2] + 4.0 * f[n - 1] + f[n]);
    }
  }
  WeiNormanTrajectory out{sc.name(), order, times, {}};
  for (std::size_t idx : sample_node) out.v.push_back(v[idx]);
  return out;
}

}  // namespace liesys
