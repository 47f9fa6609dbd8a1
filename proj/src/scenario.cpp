#include "liesys/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "liesys/control.hpp"
#include "liesys/errors.hpp"
#include "liesys/models.hpp"
#include "liesys/ode.hpp"
#include "liesys/registry.hpp"
#include "liesys/trajectory_io.hpp"

namespace liesys {
namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

const std::set<std::string> kSections{"scenario", "controls", "tolerances", "output",
                                      "wavefunction"};
const std::set<std::string> kTasks{"direct",          "weinorman", "reduce", "compare",
                                   "controllability", "quantum-evolve"};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Typed access to a parsed config with line-aware errors.
class Reader {
 public:
  explicit Reader(const ScenarioConfig& c) : c_(c) {}

  std::string text(const std::string& section, const std::string& key,
                   std::optional<std::string> fallback = std::nullopt) const {
    if (const ConfigValue* v = c_.find(section, key)) return v->text;
    if (fallback) return *fallback;
    throw Error(c_.source + ": missing required field [" + section + "] " + key);
  }

  double number(const std::string& section, const std::string& key,
                std::optional<double> fallback = std::nullopt) const {
    const ConfigValue* v = c_.find(section, key);
    if (!v) {
      if (fallback) return *fallback;
      throw Error(c_.source + ": missing required field [" + section + "] " + key);
    }
    return parse_number(v->text, *v, key);
  }

  std::optional<double> maybe_number(const std::string& section, const std::string& key) const {
    const ConfigValue* v = c_.find(section, key);
    if (!v) return std::nullopt;
    return parse_number(v->text, *v, key);
  }

  std::vector<double> numbers(const std::string& section, const std::string& key) const {
    const ConfigValue* v = c_.find(section, key);
    if (!v) throw Error(c_.source + ": missing required field [" + section + "] " + key);
    std::vector<double> out;
    for (const auto& item : split_list(v->text)) out.push_back(parse_number(item, *v, key));
    return out;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& what) const {
    const ConfigValue* v = c_.find(section, key);
    throw ParseError(c_.source + ": field '" + key + "': " + what, v ? v->line : 0);
  }

 private:
  double parse_number(const std::string& s, const ConfigValue& v, const std::string& key) const {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(trim(s), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != trim(s).size())
      throw ParseError(c_.source + ": field '" + key + "': not a number: '" + s + "'", v.line);
    return x;
  }

  const ScenarioConfig& c_;
};

struct Settings {
  ode::Tolerances tol;
  std::optional<double> fixed_step;
  double compare = kDefaultCompareThreshold;
  double residual = kDefaultResidualThreshold;
  double drift = kDefaultDriftThreshold;
  double norm = kDefaultNormThreshold;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir;
  std::string prefix;

  WnOptions wn() const { return {tol, fixed_step}; }
};

// Records a measured quantity against its threshold.
void check(json& task, bool& ok, const std::string& name, double value, double threshold) {
  const bool pass = std::isfinite(value) && value <= threshold;
  task[name] = value;
  task[name + "_threshold"] = threshold;
  task[name + "_pass"] = pass;
  if (!pass) {
    task["status"] = "threshold-violated";
    ok = false;
  }
}

Vec to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::optional<FactorizationOrder> order_override(const Reader& r, const ScenarioConfig& c) {
  if (!c.has("scenario", "order")) return std::nullopt;
  std::vector<int> zero;
  for (double x : r.numbers("scenario", "order")) zero.push_back(static_cast<int>(x) - 1);
  try {
    return FactorizationOrder(zero);
  } catch (const Error& e) {
    r.fail("scenario", "order", e.what());
  }
}

Signal read_signal(const Reader& r, const std::string& key) {
  const std::string text = r.text("controls", key, std::string("const 0"));
  try {
    return Signal::parse(text);
  } catch (const Error& e) {
    r.fail("controls", key, e.what());
  }
}

ControlSignal read_controls(const Reader& r, const ScenarioConfig& c, int dim) {
  std::vector<Signal> ch;
  for (int i = 1; i <= dim; ++i) {
    const std::string b = "b" + std::to_string(i), u = "u" + std::to_string(i);
    ch.push_back(read_signal(r, c.has("controls", u) ? u : b));
  }
  for (const auto& [key, value] : c.sections.count("controls") ? c.sections.at("controls")
                                                               : std::map<std::string, ConfigValue>{}) {
    const bool known = (key.size() >= 2 && (key[0] == 'b' || key[0] == 'u') &&
                        std::all_of(key.begin() + 1, key.end(), ::isdigit) &&
                        std::stoi(key.substr(1)) >= 1 && std::stoi(key.substr(1)) <= dim);
    if (!known)
      throw ParseError(c.source + ": control channel '" + key + "' does not exist (model has " +
                           std::to_string(dim) + " controls)",
                       value.line);
  }
  return ControlSignal(std::move(ch));
}

std::string file(const Settings& s, const std::string& suffix) {
  return (s.out_dir / (s.prefix + "_" + suffix)).string();
}

json order_json(const FactorizationOrder& o) { return o.to_string(); }

// Max Frobenius distance between two matrix curves.
double curve_distance(const std::vector<Mat>& a, const std::vector<Mat>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, (a[i] - b[i]).norm());
  return worst;
}

// ---------------------------------------------------------------------------

struct Context {
  const ScenarioConfig& config;
  Reader reader;
  Settings settings;
  std::set<std::string> tasks;
  std::vector<double> times;
  json report;
  bool ok = true;
  std::vector<std::string> files;

  bool wants(const std::string& t) const { return tasks.count(t) > 0; }
  json& task(const std::string& t) {
    if (!report["tasks"].contains(t)) report["tasks"][t] = json{{"status", "ok"}};
    return report["tasks"][t];
  }
  void not_applicable(const std::string& t, const std::string& why) {
    task(t)["status"] = "not-applicable";
    task(t)["message"] = why;
    ok = false;
  }
  void write_states_file(const std::string& suffix, const StateTrajectory& traj,
                         const std::vector<int>& angles = {}) {
    const std::string path = file(settings, suffix);
    write_states(path, traj, angles);
    files.push_back(path);
  }
  void write_wn_file(const WeiNormanTrajectory& wn) {
    const std::string path = file(settings, "wn.csv");
    write_wei_norman(path, wn);
    files.push_back(path);
  }
};

void run_control_model(Context& ctx, const std::string& model) {
  const Reader& r = ctx.reader;
  const ControlSystemDef def = control_system(model, r.number("scenario", "leg_mass", 1.0));
  ctx.report["model"] = def.key;
  const ControlSignal controls = read_controls(r, ctx.config, def.control_dim);
  const Vec x0 = to_vec(r.numbers("scenario", "x0"));
  if (x0.size() != def.state_dim)
    r.fail("scenario", "x0", "expected " + std::to_string(def.state_dim) + " values");
  std::vector<int> angles;
  if (def.key == "unicycle-x") angles = {2};
  if (def.key == "unicycle-y") angles = {0};

  std::optional<StateTrajectory> direct, reconstructed;
  if (ctx.wants("direct") || ctx.wants("compare")) {
    direct = direct_integrate(def, controls, x0, ctx.times, ctx.settings.wn());
    ctx.task("direct")["samples"] = direct->t.size();
    ctx.write_states_file("direct.csv", *direct, angles);
  }

  std::optional<LieScenario> scen;
  std::optional<WeiNormanTrajectory> wn;
  if (ctx.wants("weinorman") || ctx.wants("compare") || ctx.wants("reduce")) {
    try {
      scen = lie_scenario(def);
    } catch (const NotALieSystem& e) {
      for (const char* t : {"weinorman", "compare", "reduce"})
        if (ctx.wants(t)) ctx.not_applicable(t, e.what());
    }
  }
  if (scen && (ctx.wants("weinorman") || ctx.wants("compare"))) {
    const StructureConstants& sc = find_algebra(scen->algebra).constants;
    const FactorizationOrder order = order_override(r, ctx.config).value_or(scen->order);
    if (order.size() != sc.dim()) r.fail("scenario", "order", "wrong length for " + scen->algebra);
    const ControlSignal b = scen->algebra_controls(controls);
    wn = integrate(sc, order, b, ctx.times, ctx.settings.wn());
    reconstructed = reconstruct_state(*wn, x0, scen->chart);
    json& t = ctx.task("weinorman");
    t["algebra"] = scen->algebra;
    t["order"] = order_json(order);
    t["chart"] = scen->chart.key();
    check(t, ctx.ok, "residual", residual(scen->rep, *wn, b), ctx.settings.residual);
    ctx.write_wn_file(*wn);
    ctx.write_states_file("weinorman.csv", *reconstructed, angles);
  }
  if (ctx.wants("compare") && direct && reconstructed)
    check(ctx.task("compare"), ctx.ok, "max_state_error", max_state_error(*direct, *reconstructed),
          ctx.settings.compare);

  if (ctx.wants("reduce") && scen) {
    json& t = ctx.task("reduce");
    const StructureConstants& sc = find_algebra(scen->algebra).constants;
    const ControlSignal b = scen->algebra_controls(controls);
    const FactorizationOrder order = FactorizationOrder::ascending(3);
    std::vector<double> z0v{0.0, 0.0};
    if (ctx.config.has("scenario", "z0")) z0v = r.numbers("scenario", "z0");
    if (z0v.size() != 2) r.fail("scenario", "z0", "expected 2 values");
    const Vec z0 = to_vec(z0v);
    const WeiNormanTrajectory full = integrate(sc, order, b, ctx.times, ctx.settings.wn());
    CsvTable table{{"t", "z1", "z2", "h"}, {}};
    std::vector<Mat> reduced_curve;
    double tau_err = 0.0;
    MatrixRep rep;
    if (scen->algebra == "se2") {
      const Se2Reduction red = reduce_se2(b.channel(0), b.channel(1), ctx.times, z0, ctx.settings.wn());
      rep = group_rep(GroupKind::SE2);
      for (std::size_t i = 0; i < red.t.size(); ++i) {
        reduced_curve.push_back(group_matrix(red.g[i]));
        tau_err = std::max(tau_err, (tau_se2(red.lifted[i]) - red.z[i]).cwiseAbs().maxCoeff());
        table.rows.push_back({red.t[i], red.z[i](0), red.z[i](1), red.b[i]});
      }
      t["subgroup"] = "{(0,0,b)}";
    } else if (def.key.rfind("elastic-euler", 0) == 0) {
      const GbarReduction red = reduce_gbar(def.eps, b.channel(0), b.channel(1), b.channel(2),
                                            ctx.times, z0, ctx.settings.wn());
      rep = gbar_rep(def.eps);
      for (std::size_t i = 0; i < red.t.size(); ++i) {
        reduced_curve.push_back(group_matrix(red.g[i]));
        tau_err = std::max(tau_err, (tau_gbar(red.lifted[i]) - red.z[i]).cwiseAbs().maxCoeff());
        table.rows.push_back({red.t[i], red.z[i](0), red.z[i](1), red.v[i]});
      }
      t["subgroup"] = "exp(R a1)";
    } else {
      ctx.not_applicable("reduce", "reduction is available for the unicycle and elastic-euler models");
      return;
    }
    t["group"] = scen->algebra == "se2" ? "SE(2)" : "Gbar_" + std::to_string(def.eps);
    check(t, ctx.ok, "group_curve_error", curve_distance(reduced_curve, group_curve(rep, full)),
          ctx.settings.compare);
    check(t, ctx.ok, "projection_error", tau_err, ctx.settings.drift);
    const std::string path = file(ctx.settings, "reduce.csv");
    write_csv(path, table);
    ctx.files.push_back(path);
  }

  if (ctx.wants("controllability")) {
    json& t = ctx.task("controllability");
    if (def.is_lie_system()) {
      std::vector<int> gens;
      for (int i = 0; i < def.control_dim; ++i) gens.push_back(i);
      const ControllabilityVerdict v = controllability(def.algebra, gens);
      t["algebra"] = def.algebra;
      t["generated_dim"] = v.generated_dim;
      t["full_dim"] = v.full_dim;
      t["controllable"] = v.controllable;
    } else {
      const BracketGrowthReport g = bracket_growth_probe(def, 3, x0);
      t["lie_system"] = false;
      t["pointwise_rank"] = g.pointwise_rank;
      t["span_rank"] = g.span_rank;
      t["controllable"] = g.pointwise_rank.back() == def.state_dim;
    }
  }
}

void run_quadratic_model(Context& ctx, bool quantum) {
  const Reader& r = ctx.reader;
  ctx.report["model"] = quantum ? "quadratic-quantum" : "quadratic-classical";
  for (const auto& [key, v] : ctx.config.sections.count("controls")
                                  ? ctx.config.sections.at("controls")
                                  : std::map<std::string, ConfigValue>{}) {
    static const std::set<std::string> names{"alpha", "beta", "gamma", "delta", "epsilon", "phi"};
    if (!names.count(key))
      throw ParseError(ctx.config.source + ": unknown coefficient '" + key +
                           "' (expected alpha, beta, gamma, delta, epsilon, phi)",
                       v.line);
  }
  QuadraticCoeffs c{read_signal(r, "alpha"),   read_signal(r, "beta"),    read_signal(r, "gamma"),
                    read_signal(r, "delta"),   read_signal(r, "epsilon"), read_signal(r, "phi")};
  const Vec x0 = to_vec(r.numbers("scenario", "x0"));
  if (x0.size() != 2) r.fail("scenario", "x0", "expected (q0, p0)");

  std::optional<StateTrajectory> direct, reconstructed;
  if (ctx.wants("direct") || ctx.wants("compare")) {
    ode::IvpProblem p;
    p.rhs = [&](double t, const Vec& x, Vec& dx) { dx = classical_quadratic_field(c, t, x); };
    p.y0 = x0;
    p.grid = ctx.times;
    p.tol = ctx.settings.tol;
    p.fixed_step = ctx.settings.fixed_step;
    ode::IvpSolution sol = ode::solve_ivp(p);
    direct = StateTrajectory{sol.t, sol.y};
    ctx.task("direct")["samples"] = sol.t.size();
    ctx.write_states_file("direct.csv", *direct);
  }
  if (ctx.wants("weinorman") || ctx.wants("compare")) {
    const LieScenario scen = quadratic_scenario(quantum);
    const StructureConstants& sc = find_algebra(scen.algebra).constants;
    const FactorizationOrder order = order_override(r, ctx.config).value_or(scen.order);
    const ControlSignal b = c.b_vector(quantum);
    const WeiNormanTrajectory wn = integrate(sc, order, b, ctx.times, ctx.settings.wn());
    json& t = ctx.task("weinorman");
    t["algebra"] = scen.algebra;
    t["order"] = order_json(order);
    check(t, ctx.ok, "residual", residual(scen.rep, wn, b), ctx.settings.residual);
    ctx.write_wn_file(wn);
    if (quantum) {
      // The classical coordinates must be the first five quantum ones.
      const LieScenario cl = quadratic_scenario(false);
      const WeiNormanTrajectory wc = integrate(find_algebra(cl.algebra).constants, cl.order,
                                               c.b_vector(false), ctx.times, ctx.settings.wn());
      double diff = 0.0;
      for (std::size_t i = 0; i < wn.v.size(); ++i)
        diff = std::max(diff, (wn.v[i].head(5) - wc.v[i]).cwiseAbs().maxCoeff());
      check(t, ctx.ok, "classical_consistency", diff, ctx.settings.compare);
    } else {
      reconstructed = reconstruct_state(wn, x0, scen.chart);
      ctx.write_states_file("weinorman.csv", *reconstructed);
    }
  }
  if (ctx.wants("compare")) {
    if (quantum)
      ctx.not_applicable("compare", "the quantum model has no phase-space trajectory");
    else
      check(ctx.task("compare"), ctx.ok, "max_state_error", max_state_error(*direct, *reconstructed),
            ctx.settings.compare);
  }
  for (const char* t : {"reduce", "controllability", "quantum-evolve"})
    if (ctx.wants(t)) ctx.not_applicable(t, "not available for quadratic Hamiltonian models");
}

void run_linear_potential(Context& ctx, bool quantum) {
  const Reader& r = ctx.reader;
  ctx.report["model"] = quantum ? "quantum-linear-potential" : "linear-potential";
  const double m = r.number("scenario", "mass", 1.0);
  if (!(m > 0.0)) r.fail("scenario", "mass", "must be positive");
  for (const auto& [key, v] : ctx.config.sections.count("controls")
                                  ? ctx.config.sections.at("controls")
                                  : std::map<std::string, ConfigValue>{})
    if (key != "f")
      throw ParseError(ctx.config.source + ": unknown control '" + key + "' (expected f)", v.line);
  const Signal f = read_signal(r, "f");
  const std::vector<Signal> bs{Signal::constant(1.0 / m),
                               Signal::custom([f](double t) { return -f(t); }, "-f"),
                               Signal::constant(0.0), Signal::constant(0.0)};

  if (!quantum) {
    const Vec x0 = to_vec(r.numbers("scenario", "x0"));
    if (x0.size() != 2) r.fail("scenario", "x0", "expected (q0, p0)");
    std::optional<StateTrajectory> direct, reconstructed;
    if (ctx.wants("direct") || ctx.wants("compare")) {
      ode::IvpProblem p;
      p.rhs = [&](double t, const Vec& x, Vec& dx) {
        dx.resize(2);
        dx << x(1) / m, -f(t);
      };
      p.y0 = x0;
      p.grid = ctx.times;
      p.tol = ctx.settings.tol;
      p.fixed_step = ctx.settings.fixed_step;
      ode::IvpSolution sol = ode::solve_ivp(p);
      direct = StateTrajectory{sol.t, sol.y};
      json& t = ctx.task("direct");
      double closed = 0.0, drift = 0.0;
      const LinearPotentialPath path(m, f, ctx.times.back());
      const auto c0 = path.constants({x0(0), x0(1)}, 0.0);
      for (std::size_t i = 0; i < sol.t.size(); ++i) {
        const PhasePoint cf = path.classical(x0(0), x0(1), sol.t[i]);
        closed = std::max({closed, std::abs(cf.q - sol.y[i](0)), std::abs(cf.p - sol.y[i](1))});
        const auto ci = path.constants({sol.y[i](0), sol.y[i](1)}, sol.t[i]);
        drift = std::max({drift, std::abs(ci[0] - c0[0]), std::abs(ci[1] - c0[1])});
      }
      check(t, ctx.ok, "closed_form_error", closed, ctx.settings.compare);
      check(t, ctx.ok, "constants_drift", drift, ctx.settings.drift);
      ctx.write_states_file("direct.csv", *direct);
    }
    if (ctx.wants("weinorman") || ctx.wants("compare")) {
      const AlgebraEntry& e = find_algebra("h3-classical");
      const ControlSignal b({bs[0], bs[1], bs[2]});
      const FactorizationOrder order = order_override(r, ctx.config).value_or(FactorizationOrder(e.default_order));
      const WeiNormanTrajectory wn = integrate(e.constants, order, b, ctx.times, ctx.settings.wn());
      json& t = ctx.task("weinorman");
      t["algebra"] = e.key;
      t["order"] = order_json(order);
      check(t, ctx.ok, "residual", residual(builtin_rep(e.key), wn, b), ctx.settings.residual);
      reconstructed = reconstruct_state(wn, x0, Chart::named("affine-plane"));
      ctx.write_wn_file(wn);
      ctx.write_states_file("weinorman.csv", *reconstructed);
    }
    if (ctx.wants("compare"))
      check(ctx.task("compare"), ctx.ok, "max_state_error", max_state_error(*direct, *reconstructed),
            ctx.settings.compare);
    for (const char* t : {"reduce", "controllability", "quantum-evolve"})
      if (ctx.wants(t)) ctx.not_applicable(t, "not available for the classical linear potential");
    return;
  }

  if (ctx.wants("weinorman")) {
    const AlgebraEntry& e = find_algebra("h3-ext4");
    const ControlSignal b(bs);
    const FactorizationOrder order = order_override(r, ctx.config).value_or(FactorizationOrder(e.default_order));
    const WeiNormanTrajectory wn = integrate(e.constants, order, b, ctx.times, ctx.settings.wn());
    json& t = ctx.task("weinorman");
    t["algebra"] = e.key;
    t["order"] = order_json(order);
    check(t, ctx.ok, "residual", residual(builtin_rep(e.key), wn, b), ctx.settings.residual);
    if (auto quad = solve_by_quadratures(e.constants, order, b, ctx.times)) {
      double diff = 0.0;
      for (std::size_t i = 0; i < wn.v.size(); ++i)
        diff = std::max(diff, (wn.v[i] - quad->v[i]).cwiseAbs().maxCoeff());
      t["quadratures"] = "applicable";
      check(t, ctx.ok, "quadrature_difference", diff, ctx.settings.compare);
    } else {
      t["quadratures"] = "not-applicable";
    }
    ctx.write_wn_file(wn);
  }
  if (ctx.wants("quantum-evolve")) {
    const double t_end = ctx.times.back();
    const WaveFunctionGrid phi0 = WaveFunctionGrid::gaussian(
        static_cast<int>(r.number("wavefunction", "points", 2048)),
        r.number("wavefunction", "p_min", -20.0), r.number("wavefunction", "p_max", 20.0),
        r.number("wavefunction", "mean", 0.0), r.number("wavefunction", "width", 1.0),
        r.number("wavefunction", "position", 0.0));
    const EvolvedWaveFunction out = evolve_wavefunction(phi0, m, f, t_end);
    const EvolutionFactors u = evolution_operator_factors(m, f, t_end);
    const EvolvedWaveFunction via_u = apply_evolution_factors(u, phi0);
    double uv = 0.0;
    for (std::size_t i = 0; i < out.phi.values.size(); ++i)
      uv = std::max(uv, std::abs(out.phi.values[i] - via_u.phi.values[i]));
    json& t = ctx.task("quantum-evolve");
    t["t"] = t_end;
    t["factors"] = u.str();
    t["lost_mass"] = out.lost_mass;
    if (out.truncated) t["warning"] = "shift moved part of the wavefunction off the grid";
    t["mean_momentum_initial"] = phi0.mean_momentum();
    t["mean_momentum_final"] = out.phi.mean_momentum();
    check(t, ctx.ok, "norm_drift", std::abs(out.phi.norm() - phi0.norm()), ctx.settings.norm);
    check(t, ctx.ok, "factorization_difference", uv, ctx.settings.compare);
    const std::string p0 = file(ctx.settings, "wavefunction_initial.csv");
    const std::string p1 = file(ctx.settings, "wavefunction.csv");
    write_wavefunction(p0, phi0);
    write_wavefunction(p1, out.phi);
    ctx.files.push_back(p0);
    ctx.files.push_back(p1);
  }
  for (const char* t : {"direct", "compare", "reduce", "controllability"})
    if (ctx.wants(t)) ctx.not_applicable(t, "not available for the quantum linear potential");
}

}  // namespace

bool ScenarioConfig::has(const std::string& section, const std::string& key) const {
  return find(section, key) != nullptr;
}

const ConfigValue* ScenarioConfig::find(const std::string& section, const std::string& key) const {
  auto s = sections.find(section);
  if (s == sections.end()) return nullptr;
  auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

ScenarioConfig parse_scenario(std::istream& in, const std::string& source) {
  ScenarioConfig cfg;
  cfg.source = source;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(source + ": malformed section header", lineno);
      section = trim(line.substr(1, line.size() - 2));
      if (!kSections.count(section))
        throw ParseError(source + ": unknown section [" + section + "]", lineno);
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(source + ": expected 'key = value'", lineno);
    if (section.empty()) throw ParseError(source + ": entry outside of any section", lineno);
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(source + ": empty key", lineno);
    auto [it, inserted] = cfg.sections[section].try_emplace(key, ConfigValue{trim(line.substr(eq + 1)), lineno});
    if (!inserted) throw ParseError(source + ": duplicate key '" + key + "'", lineno);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scenario file '" + path + "'");
  return parse_scenario(in, path);
}

RunResult run_scenario(const ScenarioConfig& config, const RunOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx{config, Reader(config), {}, {}, {}, json::object(), true, {}};
  const Reader& r = ctx.reader;

  Settings& s = ctx.settings;
  s.tol.abs = r.number("tolerances", "abs", 1e-10);
  s.tol.rel = r.number("tolerances", "rel", 1e-10);
  if (overrides.tol) s.tol.abs = s.tol.rel = *overrides.tol;
  s.fixed_step = r.maybe_number("tolerances", "fixed_step");
  if (overrides.fixed_step) s.fixed_step = overrides.fixed_step;
  s.compare = r.number("tolerances", "compare", kDefaultCompareThreshold);
  s.residual = r.number("tolerances", "residual", kDefaultResidualThreshold);
  s.drift = r.number("tolerances", "drift", kDefaultDriftThreshold);
  s.norm = r.number("tolerances", "norm", kDefaultNormThreshold);
  if (!(s.tol.abs > 0.0) || !(s.tol.rel > 0.0)) r.fail("tolerances", "abs", "tolerances must be positive");
  if (s.fixed_step && !(*s.fixed_step > 0.0)) r.fail("tolerances", "fixed_step", "must be positive");
  s.seed = overrides.seed.value_or(static_cast<std::uint64_t>(r.number("scenario", "seed", 0)));
  s.out_dir = overrides.out_dir.value_or(r.text("output", "dir", std::string(".")));
  const std::string model = r.text("scenario", "model");
  s.prefix = r.text("output", "prefix", model);

  for (const auto& t : split_list(r.text("scenario", "tasks"))) {
    if (!kTasks.count(t))
      r.fail("scenario", "tasks", "unknown task '" + t +
                                      "' (valid: direct, weinorman, reduce, compare, "
                                      "controllability, quantum-evolve)");
    ctx.tasks.insert(t);
  }
  if (ctx.tasks.empty()) r.fail("scenario", "tasks", "at least one task is required");
  const double t_end = r.number("scenario", "t_end");
  const double step = r.number("scenario", "step", t_end / 100.0);
  if (!(t_end > 0.0)) r.fail("scenario", "t_end", "span must be positive");
  if (!(step > 0.0)) r.fail("scenario", "step", "output step must be positive");
  ctx.times = uniform_grid(t_end, step);
  std::filesystem::create_directories(s.out_dir);

  ctx.report["model"] = model;
  ctx.report["tasks"] = json::object();
  if (model == "quadratic-classical" || model == "quadratic-quantum") {
    run_quadratic_model(ctx, model == "quadratic-quantum");
  } else if (model == "linear-potential" || model == "quantum-linear-potential") {
    run_linear_potential(ctx, model == "quantum-linear-potential");
  } else {
    try {
      run_control_model(ctx, model);
    } catch (const UnknownKey& e) {
      throw UnknownKey(std::string(e.what()) +
                       ", quadratic-classical, quadratic-quantum, linear-potential, "
                       "quantum-linear-potential");
    }
  }

  json tol{{"abs", s.tol.abs}, {"rel", s.tol.rel}};
  tol["integrator"] = s.fixed_step ? "rk4-fixed" : "dopri5-adaptive";
  tol["fixed_step"] = s.fixed_step ? json(*s.fixed_step) : json(nullptr);
  tol["output_step"] = step;
  tol["t_end"] = t_end;
  tol["compare"] = s.compare;
  tol["residual"] = s.residual;
  tol["drift"] = s.drift;
  tol["norm"] = s.norm;
  tol["rank_tolerance"] = kRankTolerance;
  tol["breakdown_condition"] = kBreakdownCondition;
  ctx.report["tolerances"] = tol;
  ctx.report["seed"] = s.seed;
  json echo = json::object();
  for (const auto& [sec, kv] : config.sections)
    for (const auto& [k, v] : kv) echo[sec][k] = v.text;
  ctx.report["config"] = echo;
  ctx.report["ok"] = ctx.ok;
  ctx.report["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const std::string report_path = file(s, "report.json");
  std::ofstream out(report_path);
  if (!out) throw Error("cannot write report '" + report_path + "'");
  out << ctx.report.dump(2) << '\n';
  ctx.files.push_back(report_path);
  return {ctx.report, ctx.ok, ctx.files};
}

std::string list_models() {
  std::ostringstream os;
  auto row = [&os](const std::string& key, const std::string& state, const std::string& controls,
                   const std::string& algebra, const std::string& note) {
    os << std::left << std::setw(28) << key << std::setw(14) << state << std::setw(13) << controls
       << std::setw(22) << algebra << note << '\n';
  };
  row("model", "state", "controls", "algebra", "notes");
  row("unicycle-x", "3", "2", "se2", "unicycle / car, chart (x1,x2,x3)  [control]");
  row("unicycle-y", "3", "2", "se2", "unicycle in rectifying coordinates (y1,y2,y3)  [control]");
  row("brockett", "3", "2", "h3", "nonholonomic integrator  [control]");
  row("hopper-exact", "3", "2", "-", "not a Lie system (hopping robot, flight phase)  [control]");
  row("hopper-linear", "3", "2", "h3", "hopping robot linearized in l, leg_mass = 1  [control]");
  row("elastic-euler(eps=-1|0|1)", "3", "3", "g_eps(-1|0|1)",
      "generalized elastic problem kinematics  [control]");
  row("quadratic-classical", "2", "5", "g5",
      "H = alpha p^2/2 + beta qp/2 + gamma q^2/2 + delta p + eps q  [hamiltonian]");
  row("quadratic-quantum", "-", "6", "hsp2", "quantum quadratic Hamiltonian, central extension  [hamiltonian]");
  row("linear-potential", "2", "1 (f)", "h3-classical", "H = p^2/(2m) + f(t) q, closed forms  [linear potential]");
  row("quantum-linear-potential", "wavefunction", "1 (f)", "h3-ext4",
      "momentum-space evolution  [linear potential]");
  return os.str();
}

}  // namespace liesys
