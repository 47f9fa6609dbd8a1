#include <cmath>

#include "liesys/errors.hpp"
#include "liesys/models.hpp"
#include "liesys/ode.hpp"
#include "liesys/registry.hpp"

namespace liesys {
namespace {

Vec vec3(double a, double b, double c) {
  Vec v(3);
  v << a, b, c;
  return v;
}

std::optional<int> parse_elastic_eps(const std::string& key) {
  for (int eps : {1, 0, -1}) {
    const std::string e = std::to_string(eps);
    if (key == "elastic-euler(" + e + ")" || key == "elastic-euler(eps=" + e + ")") return eps;
  }
  return std::nullopt;
}

// Leg-angle coupling of the exact hopper: m (l+1)^2 / (1 + m (l+1)^2).
double hopper_coupling(double m, double l) {
  const double u = m * (l + 1.0) * (l + 1.0);
  return u / (1.0 + u);
}

}  // namespace

Vec ControlSystemDef::rhs(const Vec& x, const Vec& u) const {
  if (u.size() != control_dim) throw DimensionMismatch(key + ": wrong number of controls");
  Vec dx = Vec::Zero(state_dim);
  for (int i = 0; i < control_dim; ++i)
    if (u(i) != 0.0) dx += u(i) * field(x, i);
  return dx;
}

std::vector<std::string> control_system_keys() {
  return {"unicycle-x",    "unicycle-y",       "brockett",         "hopper-exact",
          "hopper-linear", "elastic-euler(1)", "elastic-euler(0)", "elastic-euler(-1)"};
}

ControlSystemDef control_system(const std::string& key, double leg_mass) {
  ControlSystemDef d;
  d.key = key;
  d.state_dim = 3;
  d.control_dim = 2;
  if (key == "unicycle-x") {
    d.field = [](const Vec& x, int i) {
      return i == 0 ? vec3(0, 0, 1) : vec3(std::sin(x(2)), std::cos(x(2)), 0);
    };
    d.algebra = "se2";
    d.chart = "unicycle-x";
  } else if (key == "unicycle-y") {
    d.field = [](const Vec& y, int i) { return i == 0 ? vec3(1, y(2), -y(1)) : vec3(0, 1, 0); };
    d.algebra = "se2";
    d.chart = "unicycle-y";
  } else if (key == "brockett") {
    d.field = [](const Vec& x, int i) { return i == 0 ? vec3(1, 0, -x(1)) : vec3(0, 1, x(0)); };
    d.algebra = "h3";
    d.chart = "brockett";
  } else if (key == "hopper-exact" || key == "hopper-linear") {
    d.leg_mass = leg_mass;
    d.hopper = HopperConstants::from_leg_mass(leg_mass);
    if (key == "hopper-exact") {
      d.field = [m = leg_mass](const Vec& x, int i) {
        return i == 0 ? vec3(1, 0, -hopper_coupling(m, x(1))) : vec3(0, 1, 0);
      };
    } else {
      d.field = [k = d.hopper](const Vec& x, int i) {
        return i == 0 ? vec3(1, 0, -(k.k1 + k.k2 * x(1))) : vec3(0, 1, 0);
      };
      d.algebra = "h3";
      d.chart = "hopper";
    }
  } else if (auto eps = parse_elastic_eps(key)) {
    d.key = "elastic-euler(" + std::to_string(*eps) + ")";
    d.eps = *eps;
    d.control_dim = 3;
    d.field = [e = double(*eps)](const Vec& x, int i) {
      switch (i) {
        case 0: return vec3(-x(1), x(0), 0);
        case 1: return vec3(-x(2), 0, e * x(0));
        default: return vec3(0, x(2), -e * x(1));
      }
    };
    d.algebra = g_eps_key(*eps);
    d.chart = "linear";
  } else {
    std::string valid;
    for (const auto& k : control_system_keys()) valid += (valid.empty() ? "" : ", ") + k;
    throw UnknownKey("unknown model '" + key + "'; valid models: " + valid);
  }
  return d;
}

StateTrajectory direct_integrate(const ControlSystemDef& def, const ControlSignal& controls,
                                 const Vec& x0, const std::vector<double>& times,
                                 const WnOptions& options) {
  if (controls.dim() != def.control_dim)
    throw DimensionMismatch(def.key + " expects " + std::to_string(def.control_dim) + " controls");
  if (x0.size() != def.state_dim) throw DimensionMismatch(def.key + ": wrong initial state size");
  ode::IvpProblem p;
  p.rhs = [&](double t, const Vec& x, Vec& dx) { dx = def.rhs(x, controls(t)); };
  p.y0 = x0;
  p.grid = times;
  p.tol = options.tol;
  p.fixed_step = options.fixed_step;
  ode::IvpSolution sol = ode::solve_ivp(p);
  return {std::move(sol.t), std::move(sol.y)};
}

ControlSignal LieScenario::algebra_controls(const ControlSignal& controls) const {
  if (controls.dim() != static_cast<int>(channel_map.size()))
    throw DimensionMismatch("scenario expects " + std::to_string(channel_map.size()) + " controls");
  std::vector<Signal> b(rep.generators.size(), Signal::constant(0.0));
  for (std::size_t i = 0; i < channel_map.size(); ++i)
    b[static_cast<std::size_t>(channel_map[i])] = controls.channel(static_cast<int>(i));
  return ControlSignal(std::move(b));
}

LieScenario lie_scenario(const ControlSystemDef& def) {
  if (!def.is_lie_system())
    throw NotALieSystem(def.key +
                        " is not a Lie system: iterated brackets of its input fields keep "
                        "producing new independent directions; use hopper-linear");
  const AlgebraEntry& entry = find_algebra(def.algebra);
  LieScenario s{def.algebra, FactorizationOrder(entry.default_order), Chart{ChartKind::Linear},
                builtin_rep(def.algebra), {}};
  for (int i = 0; i < def.control_dim; ++i) s.channel_map.push_back(i);
  if (def.chart == "linear")
    s.chart = Chart::linear(s.rep, false);
  else
    s.chart = Chart::named(def.chart, def.hopper, def.eps);
  return s;
}

VectorField lie_bracket(VectorField x, VectorField y, double h) {
  return [x = std::move(x), y = std::move(y), h](const Vec& p) -> Vec {
    const Vec xp = x(p), yp = y(p);
    const Vec dy_x = (y(p + h * xp) - y(p - h * xp)) / (2.0 * h);
    const Vec dx_y = (x(p + h * yp) - x(p - h * yp)) / (2.0 * h);
    return dy_x - dx_y;
  };
}

BracketGrowthReport bracket_growth_probe(const ControlSystemDef& def, int depth, const Vec& x) {
  if (def.key != "hopper-exact" && def.key != "hopper-linear")
    throw Error("bracket_growth_probe is defined for the hopper systems");
  if (depth < 0 || depth > 5) throw Error("bracket_growth_probe: depth must be in [0, 5]");
  const VectorField y1 = [def](const Vec& p) { return def.field(p, 0); };
  const VectorField y2 = [def](const Vec& p) { return def.field(p, 1); };
  std::vector<VectorField> fields{y1, y2};
  constexpr double kRankTol = 1e-6;
  constexpr int kStencil = 9;
  constexpr double kSpacing = 0.1;

  BracketGrowthReport report;
  VectorField last = y1;
  for (int d = 0; d <= depth; ++d) {
    if (d > 0) {
      last = lie_bracket(y2, last);
      fields.push_back(last);
    }
    const auto n = static_cast<Eigen::Index>(fields.size());
    Mat point(3, n), span(3 * kStencil, n);
    for (Eigen::Index k = 0; k < n; ++k) {
      point.col(k) = fields[static_cast<std::size_t>(k)](x);
      for (int s = 0; s < kStencil; ++s) {
        Vec xs = x;
        xs(1) += (s - kStencil / 2) * kSpacing;
        span.block(3 * s, k, 3, 1) = fields[static_cast<std::size_t>(k)](xs);
      }
    }
    report.field_count.push_back(static_cast<int>(n));
    report.pointwise_rank.push_back(numerical_rank(point, kRankTol));
    report.span_rank.push_back(numerical_rank(span, kRankTol));
  }
  return report;
}

}  // namespace liesys
