#include "liesys/control.hpp"

#include <cmath>

#include "liesys/errors.hpp"
#include "liesys/ode.hpp"
#include "liesys/registry.hpp"

namespace liesys {
namespace {

// Sample times refined to spacing <= max_step, with interval midpoints.
// Even nodes are grid points, odd nodes midpoints.
struct RefinedGrid {
  std::vector<double> nodes;
  std::vector<std::size_t> sample_node;
};

RefinedGrid refine(const std::vector<double>& times, double max_step) {
  if (times.empty() || times.front() != 0.0) throw Error("reduction sample times must start at 0");
  RefinedGrid g{{0.0}, {0}};
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double span = times[i] - times[i - 1];
    if (!(span > 0.0)) throw Error("reduction sample times must increase strictly");
    const int pieces = std::max(1, static_cast<int>(std::ceil(span / max_step)));
    for (int k = 1; k <= pieces; ++k) {
      const double a = times[i - 1] + span * (k - 1) / pieces;
      const double b = k == pieces ? times[i] : times[i - 1] + span * k / pieces;
      g.nodes.push_back(0.5 * (a + b));
      g.nodes.push_back(b);
    }
    g.sample_node.push_back(g.nodes.size() - 1);
  }
  return g;
}

// Composite Simpson over the node pairs; returns the running integral at
// every even node.
std::vector<double> simpson_running(const RefinedGrid& g, const std::vector<double>& f) {
  std::vector<double> out(g.nodes.size(), 0.0);
  for (std::size_t n = 2; n < g.nodes.size(); n += 2) {
    const double h = g.nodes[n] - g.nodes[n - 2];
    out[n] = out[n - 2] + h / 6.0 * (f[n - 2] + 4.0 * f[n - 1] + f[n]);
  }
  return out;
}

std::vector<Vec> integrate_homogeneous(const ode::Rhs& rhs, const Vec& z0,
                                       const std::vector<double>& nodes, const WnOptions& options) {
  ode::IvpProblem p;
  p.rhs = rhs;
  p.y0 = z0;
  p.grid = nodes;
  p.tol = options.tol;
  p.fixed_step = options.fixed_step;
  return ode::solve_ivp(p).y;
}

constexpr double kQuadratureStep = 1e-3;

}  // namespace

ControllabilityVerdict controllability(const StructureConstants& sc, const std::vector<Vec>& gens) {
  ControllabilityVerdict v;
  v.full_dim = sc.dim();
  v.basis = generated_subalgebra(gens, sc);
  v.generated_dim = static_cast<int>(v.basis.cols());
  v.controllable = v.generated_dim == v.full_dim;
  return v;
}

ControllabilityVerdict controllability(const std::string& algebra_key,
                                       const std::vector<int>& generators) {
  const StructureConstants& sc = find_algebra(algebra_key).constants;
  std::vector<Vec> gens;
  for (int i : generators) gens.push_back(basis_vector(sc.dim(), i));
  return controllability(sc, gens);
}

Se2Reduction reduce_se2(const Signal& b1, const Signal& b2, const std::vector<double>& times,
                        const Vec& z0, const WnOptions& options) {
  const RefinedGrid grid = refine(times, kQuadratureStep);
  const std::vector<Vec> z = integrate_homogeneous(
      [&](double t, const Vec& y, Vec& dy) {
        dy.resize(2);
        dy << -b1(t), -b2(t) * std::cos(y(0));
      },
      z0, grid.nodes, options);
  std::vector<double> f(grid.nodes.size());
  for (std::size_t n = 0; n < f.size(); ++n) f[n] = b2(grid.nodes[n]) * std::sin(z[n](0));
  const std::vector<double> b = simpson_running(grid, f);

  Se2Reduction out;
  GroupElement lifted0{};
  for (std::size_t idx : grid.sample_node) {
    out.t.push_back(grid.nodes[idx]);
    out.z.push_back(z[idx]);
    out.b.push_back(b[idx]);
    Vec g1(3), h(3);
    g1 << z[idx](0), z[idx](1), 0.0;
    h << 0.0, 0.0, b[idx];
    out.lifted.push_back(compose({GroupKind::SE2, g1}, {GroupKind::SE2, h}));
  }
  const GroupElement back = inverse(out.lifted.front());
  for (const auto& l : out.lifted) out.g.push_back(compose(l, back));
  return out;
}

GbarReduction reduce_gbar(int eps, const Signal& b1, const Signal& b2, const Signal& b3,
                          const std::vector<double>& times, const Vec& z0,
                          const WnOptions& options) {
  if (eps < -1 || eps > 1) throw Error("reduce_gbar: eps must be -1, 0 or 1");
  const double e = eps;
  const RefinedGrid grid = refine(times, kQuadratureStep);
  const std::vector<Vec> z = integrate_homogeneous(
      [&](double t, const Vec& y, Vec& dy) {
        const double z1 = y(0), z2 = y(1), d = z1 * z1 - z2 * z2;
        dy.resize(2);
        dy << b1(t) * z2 - 0.5 * b2(t) * (1.0 + e * d) - b3(t) * e * z1 * z2,
            -b1(t) * z1 - b2(t) * e * z1 * z2 - 0.5 * b3(t) * (1.0 - e * d);
      },
      z0, grid.nodes, options);
  std::vector<double> f(grid.nodes.size());
  for (std::size_t n = 0; n < f.size(); ++n) {
    const double t = grid.nodes[n];
    f[n] = -b1(t) + e * (b3(t) * z[n](0) - b2(t) * z[n](1));
  }
  const std::vector<double> v = simpson_running(grid, f);

  GbarReduction out;
  out.eps = eps;
  for (std::size_t idx : grid.sample_node) {
    const double t = grid.nodes[idx];
    const Vec& zi = z[idx];
    const double n2 = 1.0 + e * zi.squaredNorm();
    if (!(n2 > 0.0))
      throw ChartBreakdown("reduce_gbar: lift undefined at t=" + std::to_string(t) +
                           " (1 + eps |z|^2 = " + std::to_string(n2) + ")");
    Vec g1(4), h(4);
    g1 << 1.0, 0.0, zi(0), zi(1);
    g1 /= std::sqrt(n2);
    h << std::cos(v[idx] / 2.0), std::sin(v[idx] / 2.0), 0.0, 0.0;
    out.t.push_back(t);
    out.z.push_back(zi);
    out.v.push_back(v[idx]);
    out.lifted.push_back(compose({GroupKind::Gbar, g1, eps}, {GroupKind::Gbar, h, eps}));
  }
  const GroupElement back = inverse(out.lifted.front());
  for (const auto& l : out.lifted) out.g.push_back(compose(l, back));
  return out;
}

Vec tau_se2(const GroupElement& g) {
  if (g.group != GroupKind::SE2) throw Error("tau_se2: not an SE(2) element");
  return g.coords.head(2);
}

Vec tau_gbar(const GroupElement& g) {
  if (g.group != GroupKind::Gbar) throw Error("tau_gbar: not a Gbar element");
  const double a = g.coords(0), b = g.coords(1), c = g.coords(2), d = g.coords(3);
  const double n = a * a + b * b;
  if (n <= 1e-14) throw ChartBreakdown("tau_gbar: a^2 + b^2 vanishes");
  Vec z(2);
  z << (a * c - b * d) / n, (b * c + a * d) / n;
  return z;
}

std::vector<PlanarField> se2_homogeneous_fields() {
  auto vec2 = [](double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
  };
  auto mat2 = [](double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
  };
  return {
      {[=](const Vec&) { return vec2(-1.0, 0.0); }, [=](const Vec&) { return mat2(0, 0, 0, 0); }},
      {[=](const Vec& z) { return vec2(0.0, -std::cos(z(0))); },
       [=](const Vec& z) { return mat2(0, 0, std::sin(z(0)), 0); }},
      {[=](const Vec& z) { return vec2(0.0, -std::sin(z(0))); },
       [=](const Vec& z) { return mat2(0, 0, -std::cos(z(0)), 0); }},
  };
}

std::vector<PlanarField> gbar_homogeneous_fields(int eps) {
  const double e = eps;
  auto vec2 = [](double x, double y) {
    Vec v(2);
    v << x, y;
    return v;
  };
  auto mat2 = [](double a, double b, double c, double d) {
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
  };
  return {
      {[=](const Vec& z) { return vec2(z(1), -z(0)); }, [=](const Vec&) { return mat2(0, 1, -1, 0); }},
      {[=](const Vec& z) {
         return vec2(-0.5 * (1.0 + e * (z(0) * z(0) - z(1) * z(1))), -e * z(0) * z(1));
       },
       [=](const Vec& z) { return mat2(-e * z(0), e * z(1), -e * z(1), -e * z(0)); }},
      {[=](const Vec& z) {
         return vec2(-e * z(0) * z(1), -0.5 * (1.0 - e * (z(0) * z(0) - z(1) * z(1))));
       },
       [=](const Vec& z) { return mat2(-e * z(1), -e * z(0), e * z(0), -e * z(1)); }},
  };
}

Vec planar_bracket(const PlanarField& x, const PlanarField& y, const Vec& z) {
  return y.jacobian(z) * x.value(z) - x.jacobian(z) * y.value(z);
}

FieldCheckReport verify_fundamental_fields(bool se2, int eps, const std::vector<Vec>& points) {
  const auto fields = se2 ? se2_homogeneous_fields() : gbar_homogeneous_fields(eps);
  const double e = se2 ? 0.0 : eps;
  struct Relation {
    std::string label;
    int i, j;
    std::function<Vec(const Vec&)> expected;
  };
  const std::vector<Relation> relations{
      {"[X1,X2] = X3", 0, 1, fields[2].value},
      {"[X2,X3] = eps X1", 1, 2, [&](const Vec& z) { return Vec(e * fields[0].value(z)); }},
      {"[X1,X3] = -X2", 0, 2, [&](const Vec& z) { return Vec(-fields[1].value(z)); }},
      {"[X1,X1] = 0", 0, 0, [](const Vec&) { return Vec(Vec::Zero(2)); }},
      {"[X2,X2] = 0", 1, 1, [](const Vec&) { return Vec(Vec::Zero(2)); }},
      {"[X3,X3] = 0", 2, 2, [](const Vec&) { return Vec(Vec::Zero(2)); }},
  };
  FieldCheckReport report;
  for (const auto& rel : relations) {
    double worst = 0.0;
    for (const Vec& z : points) {
      const Vec got = planar_bracket(fields[static_cast<std::size_t>(rel.i)],
                                     fields[static_cast<std::size_t>(rel.j)], z);
      worst = std::max(worst, (got - rel.expected(z)).cwiseAbs().maxCoeff());
    }
    report.relations.emplace_back(rel.label, worst);
    report.max_residual = std::max(report.max_residual, worst);
  }
  return report;
}

}  // namespace liesys
