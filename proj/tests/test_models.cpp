#include <doctest.h>

#include <cmath>
#include <complex>

#include "liesys/errors.hpp"
#include "liesys/models.hpp"
#include "liesys/registry.hpp"
#include "support.hpp"

using namespace liesys;
using testing_support::random_vec;
using testing_support::uniform;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec out(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) out(i++) = x;
  return out;
}

double equivalence_error(const std::string& key, const ControlSignal& u, const Vec& x0,
                         double t_end = 5.0) {
  const ControlSystemDef def = control_system(key);
  const LieScenario s = lie_scenario(def);
  const auto times = uniform_grid(t_end, 0.01);
  const auto wn = integrate(find_algebra(s.algebra).constants, s.order, s.algebra_controls(u), times);
  return max_state_error(direct_integrate(def, u, x0, times), reconstruct_state(wn, x0, s.chart));
}

}  // namespace

TEST_CASE("classical quadratic field") {
  QuadraticCoeffs zero;
  CHECK(classical_quadratic_field(zero, 0.3, vec({1.0, 2.0})).norm() == 0.0);
  QuadraticCoeffs lin;
  lin.alpha = Signal::constant(0.5);
  lin.epsilon = Signal::constant(0.7);
  const Vec d = classical_quadratic_field(lin, 1.0, vec({3.0, 4.0}));
  CHECK(d(0) == doctest::Approx(2.0));
  CHECK(d(1) == doctest::Approx(-0.7));
  QuadraticCoeffs osc;
  osc.alpha = Signal::constant(1.0);
  osc.gamma = Signal::constant(1.0);
  const Vec o = classical_quadratic_field(osc, 0.0, vec({1.0, 0.0}));
  CHECK(o(0) == 0.0);
  CHECK(o(1) == -1.0);
  QuadraticCoeffs all{Signal::constant(1), Signal::constant(2), Signal::constant(3),
                      Signal::constant(4), Signal::constant(5), Signal::constant(6)};
  const Vec b = all.b_vector(true)(0.0);
  CHECK(b == vec({1, 2, 3, -4, 5, -6}));
  CHECK(all.b_vector(false).dim() == 5);
}

TEST_CASE("control system fields") {
  std::mt19937_64 rng(21);
  const double m = 1.7;
  const double k1 = m / (1 + m), k2 = 2 * m / ((1 + m) * (1 + m));
  for (int k = 0; k < 50; ++k) {
    const Vec x = random_vec(rng, 3);
    CHECK(control_system("unicycle-x").field(x, 1) == vec({std::sin(x(2)), std::cos(x(2)), 0.0}));
    CHECK(control_system("unicycle-x").field(x, 0) == vec({0, 0, 1}));
    CHECK(control_system("unicycle-y").field(x, 0) == vec({1, x(2), -x(1)}));
    CHECK(control_system("brockett").field(x, 0) == vec({1, 0, -x(1)}));
    CHECK(control_system("brockett").field(x, 1) == vec({0, 1, x(0)}));
    const double c = m * (x(1) + 1) * (x(1) + 1);
    CHECK((control_system("hopper-exact", m).field(x, 0) - vec({1, 0, -c / (1 + c)})).norm() < 1e-15);
    CHECK((control_system("hopper-linear", m).field(x, 0) - vec({1, 0, -(k1 + k2 * x(1))})).norm() < 1e-15);
    for (int e : {-1, 0, 1}) {
      const auto def = control_system("elastic-euler(" + std::to_string(e) + ")");
      CHECK(def.field(x, 0) == vec({-x(1), x(0), 0}));
      CHECK(def.field(x, 1) == vec({-x(2), 0, e * x(0)}));
      CHECK(def.field(x, 2) == vec({0, x(2), -e * x(1)}));
    }
  }
  const auto h = control_system("hopper-linear", m).hopper;
  CHECK(h.k1 == doctest::Approx(k1));
  CHECK(h.k2 == doctest::Approx(k2));
  CHECK(control_system("elastic-euler(eps=-1)").eps == -1);
  CHECK_THROWS_AS(control_system("bicycle"), UnknownKey);
}

TEST_CASE("direct integration") {
  const auto times = uniform_grid(2.0, 0.1);
  const auto br = direct_integrate(control_system("brockett"), ControlSignal::constant({1, 1}), Vec::Zero(3), times);
  for (std::size_t i = 0; i < times.size(); ++i) CHECK((br.x[i] - vec({times[i], times[i], 0})).norm() < 1e-12);
  for (const auto& key : control_system_keys()) {
    const auto def = control_system(key);
    const Vec x0 = vec({0.3, 0.1, -0.2});
    for (const Vec& x : direct_integrate(def, ControlSignal::zero(def.control_dim), x0, times).x)
      CHECK(x == x0);
  }
  const auto hop = control_system("hopper-exact", 1.0);
  CHECK(hop.rhs(vec({0, 0, 0}), vec({1, 0}))(2) == doctest::Approx(-0.5));
}

TEST_CASE("Lie scenarios") {
  const auto u = lie_scenario(control_system("unicycle-x"));
  CHECK(u.algebra == "se2");
  CHECK(u.order == FactorizationOrder::ascending(3));
  CHECK(u.chart.key() == "unicycle-x");
  CHECK(lie_scenario(control_system("elastic-euler(0)")).algebra == "g_eps(0)");
  const auto h = lie_scenario(control_system("hopper-linear", 1.0));
  CHECK(h.algebra == "h3");
  CHECK(h.chart.kind == ChartKind::Hopper);
  CHECK_THROWS_AS(lie_scenario(control_system("hopper-exact")), NotALieSystem);
  for (const auto& key : control_system_keys()) {
    const auto def = control_system(key);
    CHECK(def.is_lie_system() == (key != "hopper-exact"));
  }
}

TEST_CASE("Wei-Norman reconstruction equals direct integration") {
  const Vec x0 = vec({0.4, -0.3, 0.25});
  const std::vector<ControlSignal> two = {
      ControlSignal::constant({0.8, 0.5}),
      ControlSignal({Signal::sine(0.7, 1.0), Signal::cosine(0.6, 2.5)}),
      ControlSignal({Signal::ramp(0.2, 0.1), Signal::ramp(-0.3, 0.05)})};
  const std::vector<ControlSignal> hopper = {
      ControlSignal::constant({0.8, 0.05}),
      ControlSignal({Signal::sine(0.7, 1.0), Signal::cosine(0.6, 2.5)}),
      ControlSignal({Signal::ramp(0.2, 0.1), Signal::polynomial({0.0, -0.1, 0.02})})};
  const std::vector<ControlSignal> three = {
      ControlSignal::constant({1.0, 0.0, 0.5}),
      ControlSignal({Signal::constant(1.0), Signal(), Signal::sine(1.0, 1.0)}),
      ControlSignal({Signal::cosine(0.5, 2.5), Signal::sine(0.2, 1.0), Signal::ramp(0.1, 0.05)})};
  for (const std::string key : {"unicycle-x", "unicycle-y", "brockett"})
    for (const auto& u : two) {
      INFO(key);
      CHECK(equivalence_error(key, u, x0) < 1e-6);
    }
  for (const auto& u : hopper) CHECK(equivalence_error("hopper-linear", u, vec({0.1, 0.0, 0.2})) < 1e-6);
  for (int e : {-1, 0, 1})
    for (const auto& u : three) {
      INFO("eps " << e);
      CHECK(equivalence_error("elastic-euler(" + std::to_string(e) + ")", u, x0) < 1e-6);
    }
}

TEST_CASE("unicycle coordinate systems agree") {
  const ControlSignal u({Signal::sine(0.8, 1.0, 0.3), Signal::cosine(1.0, 2.5, 0.0, 0.2)});
  const auto times = uniform_grid(5.0, 0.05);
  const Vec x0 = vec({1.0, -0.5, 0.7});
  auto to_y = [](const Vec& x) {
    return vec({x(2), x(0) * std::sin(x(2)) + x(1) * std::cos(x(2)), x(0) * std::cos(x(2)) - x(1) * std::sin(x(2))});
  };
  const auto xs = direct_integrate(control_system("unicycle-x"), u, x0, times);
  const auto ys = direct_integrate(control_system("unicycle-y"), u, to_y(x0), times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) worst = std::max(worst, (to_y(xs.x[i]) - ys.x[i]).norm());
  CHECK(worst < 1e-7);
}

TEST_CASE("quadratic Hamiltonians through g5 and hsp2") {
  std::mt19937_64 rng(17);
  const auto times = uniform_grid(4.0, 0.01);
  for (int trial = 0; trial < 3; ++trial) {
    auto sig = [&](double scale) {
      return Signal::sine(uniform(rng, -scale, scale), uniform(rng, 0.5, 2.5), uniform(rng, -1, 1),
                          uniform(rng, -scale, scale));
    };
    // Keep alpha positive and gamma negative so the (4,5,1,2,3) chart stays valid.
    QuadraticCoeffs c{Signal::constant(uniform(rng, 0.5, 1.0)), sig(0.3), Signal::constant(uniform(rng, -0.6, -0.2)),
                      sig(0.5), sig(0.5), sig(0.5)};
    const Vec x0 = random_vec(rng, 2);
    ode::IvpProblem p;
    p.rhs = [&](double t, const Vec& x, Vec& dx) { dx = classical_quadratic_field(c, t, x); };
    p.y0 = x0;
    p.grid = times;
    const auto direct = ode::solve_ivp(p);
    const LieScenario cl = quadratic_scenario(false);
    const auto wn = integrate(find_algebra(cl.algebra).constants, cl.order, c.b_vector(false), times);
    const auto rec = reconstruct_state(wn, x0, cl.chart);
    CHECK(max_state_error({direct.t, direct.y}, rec) < 1e-6);

    const LieScenario qu = quadratic_scenario(true);
    WnOptions tight;
    tight.tol = {1e-12, 1e-12};
    const auto wq = integrate(find_algebra(qu.algebra).constants, qu.order, c.b_vector(true), times, tight);
    const auto wc = integrate(find_algebra(cl.algebra).constants, cl.order, c.b_vector(false), times, tight);
    double diff = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) diff = std::max(diff, (wq.v[i].head(5) - wc.v[i]).norm());
    CHECK(diff < 1e-9);
    CHECK(residual(qu.rep, wq, c.b_vector(true)) < 1e-6);
  }
}

TEST_CASE("Poisson brackets") {
  SUBCASE("quadratic set follows the g5 table plus a central term") {
    const auto& sc = find_algebra("g5").constants;
    for (int i = 1; i <= 5; ++i)
      for (int j = 1; j <= 5; ++j) {
        const PoissonReport r = poisson_bracket("quadratic", i, j);
        INFO(i << "," << j);
        CHECK(r.fit_residual == 0.0);
        for (int k = 1; k <= 5; ++k) CHECK(r.coeffs.at(k - 1) == sc(k - 1, i - 1, j - 1));
        const double central = (i == 4 && j == 5) ? 1.0 : (i == 5 && j == 4 ? -1.0 : 0.0);
        CHECK(r.central == central);
      }
  }
  SUBCASE("hand-computed values") {
    // {-p^2/2, -qp/2} = f_q g_p - f_p g_q = -p^2/2
    const Poly2 v = poisson_bracket("quadratic", 1, 2).value;
    CHECK(v.coeff(0, 2) == -0.5);
    CHECK(v.terms().size() == 1);
    CHECK(poisson_bracket("quadratic", 1, 1).value.terms().empty());
  }
  SUBCASE("linear potential set") {
    const auto r12 = poisson_bracket("linear-potential", 1, 2);
    CHECK(r12.coeffs == std::vector<double>{0, 0, -1});
    CHECK(r12.central == 0.0);
    const auto r13 = poisson_bracket("linear-potential", 1, 3);
    CHECK(r13.value.terms().empty());
    const auto r23 = poisson_bracket("linear-potential", 2, 3);
    CHECK(r23.coeffs == std::vector<double>{0, 0, 0});
    CHECK(r23.central == -1.0);
  }
  CHECK_THROWS_AS(poisson_bracket("cubic", 1, 2), UnknownKey);
  CHECK_THROWS(poisson_bracket("quadratic", 0, 2));
}

TEST_CASE("linear potential closed forms") {
  const double m = 1.3, q0 = 0.4, p0 = -0.8;
  SUBCASE("free particle and constant force") {
    const auto fr = linear_potential_classical(q0, p0, m, Signal(), 2.0);
    CHECK(fr.q == doctest::Approx(q0 + p0 * 2.0 / m));
    CHECK(fr.p == p0);
    const double f0 = 0.6, t = 3.0;
    const auto cf = linear_potential_classical(q0, p0, m, Signal::constant(f0), t);
    CHECK(std::abs(cf.q - (q0 + p0 * t / m - f0 * t * t / (2 * m))) < 1e-12);
    CHECK(std::abs(cf.p - (p0 - f0 * t)) < 1e-12);
    const auto i = constants_of_motion(cf, t, Signal::constant(f0), m);
    CHECK(std::abs(i[0] - p0) < 1e-12);
    CHECK(std::abs(i[1] - q0) < 1e-12);
    const auto i0 = constants_of_motion({q0, p0}, 0.0, Signal::constant(f0), m);
    CHECK(i0[0] == p0);
    CHECK(i0[1] == q0);
  }
  SUBCASE("against direct integration, with conserved quantities") {
    const Signal f = Signal::cosine(0.9, 2.5, 0.0, 0.3);
    const auto times = uniform_grid(10.0, 0.01);
    ode::IvpProblem p;
    p.rhs = [&](double t, const Vec& x, Vec& dx) { dx << x(1) / m, -f(t); };
    p.y0 = vec({q0, p0});
    p.grid = times;
    // Reference solve tight enough that its own global error is negligible here.
    p.tol = {1e-12, 1e-12};
    const auto sol = ode::solve_ivp(p);
    const LinearPotentialPath path(m, f, 10.0);
    const auto c0 = path.constants({q0, p0}, 0.0);
    double closed = 0.0, drift = 0.0, table = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
      const auto c = path.classical(q0, p0, times[i]);
      closed = std::max({closed, std::abs(c.q - sol.y[i](0)), std::abs(c.p - sol.y[i](1))});
      const auto ci = path.constants({sol.y[i](0), sol.y[i](1)}, times[i]);
      drift = std::max({drift, std::abs(ci[0] - c0[0]), std::abs(ci[1] - c0[1])});
      if (i % 100 == 0) {
        const auto direct = linear_potential_classical(q0, p0, m, f, times[i]);
        table = std::max({table, std::abs(direct.q - c.q), std::abs(direct.p - c.p)});
      }
    }
    CHECK(closed < 1e-9);
    CHECK(drift < 1e-8);
    CHECK(table < 1e-11);
  }
}

TEST_CASE("quantum linear potential coordinates") {
  const double m = 1.5;
  SUBCASE("free particle") {
    for (char variant : {'u', 'v'}) CHECK(linear_potential_quantum_uv(m, Signal(), 2.0, variant) == vec({2.0 / m, 0, 0, 0}));
  }
  SUBCASE("constant force") {
    const double f0 = 0.7, t = 2.2;
    const Vec v = linear_potential_quantum_uv(m, Signal::constant(f0), t, 'v');
    CHECK((v - vec({t / m, -f0 * t, f0 * t * t / (2 * m), -f0 * f0 * t * t * t / (6 * m)})).norm() < 1e-12);
    const auto u = evolution_operator_factors(m, Signal::constant(f0), t);
    const Vec uu = linear_potential_quantum_uv(m, Signal::constant(f0), t, 'u');
    CHECK(u.u1 == uu(0));
    CHECK(u.u4 == uu(3));
    const auto z = evolution_operator_factors(m, Signal::constant(f0), 0.0);
    CHECK(z.u1 == 0.0);
    CHECK(z.u2 == 0.0);
    CHECK(z.u3 == 0.0);
    CHECK(z.u4 == 0.0);
  }
  SUBCASE("both coordinate sets satisfy their differential equations") {
    const Signal f = Signal::sine(1.1, 2.5, 0.2, -0.3);
    const double h = 1e-3;
    double worst = 0.0;
    for (double t = 0.2; t < 5.0; t += 0.35) {
      for (char variant : {'u', 'v'}) {
        // Fourth-order central difference.
        const Vec d = (linear_potential_quantum_uv(m, f, t - 2 * h, variant) -
                       8.0 * linear_potential_quantum_uv(m, f, t - h, variant) +
                       8.0 * linear_potential_quantum_uv(m, f, t + h, variant) -
                       linear_potential_quantum_uv(m, f, t + 2 * h, variant)) /
                      (12.0 * h);
        const Vec x = linear_potential_quantum_uv(m, f, t, variant);
        const Vec rhs = variant == 'u' ? quantum_u_rhs(m, f(t), x) : quantum_v_rhs(m, f(t), x);
        worst = std::max(worst, (d - rhs).cwiseAbs().maxCoeff());
      }
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("wavefunction evolution") {
  const double m = 1.0;
  const auto phi0 = WaveFunctionGrid::gaussian(2048, -20.0, 20.0, 0.0, 0.7, 0.3);
  CHECK(std::abs(phi0.norm() - 1.0) < 1e-12);
  SUBCASE("t = 0 leaves the state unchanged") {
    const auto e = evolve_wavefunction(phi0, m, Signal::sine(1.0, 1.0), 0.0);
    for (std::size_t i = 0; i < phi0.values.size(); ++i) CHECK(std::abs(e.phi.values[i] - phi0.values[i]) < 1e-15);
  }
  SUBCASE("free evolution is a pure phase") {
    const double t = 1.7;
    const auto e = evolve_wavefunction(phi0, m, Signal(), t);
    double worst = 0.0;
    for (std::size_t i = 0; i < phi0.values.size(); ++i) {
      const double p = phi0.p[i];
      const std::complex<double> expect = std::exp(std::complex<double>(0, t * p * p / (2 * m))) * phi0.values[i];
      worst = std::max(worst, std::abs(e.phi.values[i] - expect));
      CHECK(std::abs(std::norm(e.phi.values[i]) - std::norm(phi0.values[i])) < 1e-14);
    }
    CHECK(worst < 1e-12);
  }
  SUBCASE("constant force shifts the momentum distribution") {
    const double f0 = 0.5, t = 2.0;
    const auto e = evolve_wavefunction(phi0, m, Signal::constant(f0), t);
    CHECK_FALSE(e.truncated);
    CHECK(std::abs(e.phi.norm() - phi0.norm()) <= 1e-6);
    // The momentum-space map moves the packet by -v2(t) = +f0 t.
    CHECK(std::abs(e.phi.mean_momentum() - phi0.mean_momentum() - f0 * t) < 1e-6);
    // Analytic Gaussian evaluated at the shifted argument.
    const Vec v = linear_potential_quantum_uv(m, Signal::constant(f0), t, 'v');
    double worst = 0.0;
    const double norm = std::pow(2.0 * std::numbers::pi * 0.49, -0.25);
    for (std::size_t i = 0; i < phi0.p.size(); ++i) {
      const double ps = phi0.p[i] + v(1);
      const std::complex<double> g0 =
          norm * std::exp(-ps * ps / (4 * 0.49)) * std::exp(std::complex<double>(0, -ps * 0.3));
      const std::complex<double> expect =
          std::exp(std::complex<double>(0, -v(3) + v(2) * ps + v(0) * ps * ps / 2)) * g0;
      worst = std::max(worst, std::abs(e.phi.values[i] - expect));
    }
    CHECK(worst < 1e-6);
  }
  SUBCASE("u and v orderings give the same state") {
    const Signal f = Signal::cosine(0.8, 2.5, 0.0, 0.2);
    for (double t : {0.5, 1.9, 3.3}) {
      const auto a = evolve_wavefunction(phi0, m, f, t);
      const auto b = apply_evolution_factors(evolution_operator_factors(m, f, t), phi0);
      double worst = 0.0;
      for (std::size_t i = 0; i < phi0.values.size(); ++i) worst = std::max(worst, std::abs(a.phi.values[i] - b.phi.values[i]));
      CHECK(worst < 1e-8);
      CHECK(std::abs(a.phi.norm() - 1.0) <= 1e-6);
    }
  }
  SUBCASE("large shifts report lost mass") {
    const auto e = evolve_wavefunction(phi0, m, Signal::constant(-10.0), 2.0);
    CHECK(e.truncated);
    CHECK(e.lost_mass > 0.4);
  }
}

TEST_CASE("Riccati superposition") {
  SUBCASE("fixed point") {
    CHECK(riccati_superpose(1.0, 2.0, 5.0, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS(riccati_superpose(1.0, 1.0, 5.0, 0.3));
  }
  SUBCASE("xdot = -x^2") {
    // Particular solutions 1/(t + c).
    auto sol = [](double c) { return [c](double t) { return 1.0 / (t + c); }; };
    const auto x1 = sol(1.0), x2 = sol(2.0), x3 = sol(4.0);
    const double y0 = 1.0 / 3.0;
    const double k = cross_ratio(y0, x1(0), x2(0), x3(0));
    ode::IvpProblem p;
    p.rhs = [](double, const Vec& y, Vec& dy) { dy(0) = -y(0) * y(0); };
    p.y0 = Vec::Constant(1, y0);
    p.grid = uniform_grid(5.0, 0.25);
    const auto direct = ode::solve_ivp(p);
    for (std::size_t i = 0; i < p.grid.size(); ++i) {
      const double t = p.grid[i];
      CHECK(std::abs(riccati_superpose(x1(t), x2(t), x3(t), k) - direct.y[i](0)) < 1e-8);
    }
  }
  SUBCASE("cross ratio of four solutions is constant") {
    ode::IvpProblem p;
    p.rhs = [](double t, const Vec& y, Vec& dy) {
      for (int i = 0; i < 4; ++i) dy(i) = 0.3 * std::sin(t) + 0.5 * std::cos(2 * t) * y(i) - 0.4 * y(i) * y(i);
    };
    p.y0 = vec({-0.5, 0.1, 0.7, 1.2});
    p.grid = uniform_grid(3.0, 0.1);
    p.tol = {1e-12, 1e-12};
    const auto s = ode::solve_ivp(p);
    const double k0 = cross_ratio(s.y[0](0), s.y[0](1), s.y[0](2), s.y[0](3));
    double worst = 0.0;
    for (const Vec& y : s.y) worst = std::max(worst, std::abs(cross_ratio(y(0), y(1), y(2), y(3)) - k0));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("bracket growth of the hopper fields") {
  const double m = 1.0, l = 0.1;
  const auto exact = control_system("hopper-exact", m);
  const auto linear = control_system("hopper-linear", m);
  const Vec x = vec({0.0, l, 0.0});
  const VectorField y1 = [&](const Vec& p) { return exact.field(p, 0); };
  const VectorField y2 = [&](const Vec& p) { return exact.field(p, 1); };
  // [Y2, Y1] = d/dl of Y1, whose angle component is -m(l+1)^2/(1+m(l+1)^2).
  const double s = 1 + m * (l + 1) * (l + 1);
  const Vec b = lie_bracket(y2, y1)(x);
  CHECK((b - vec({0, 0, -2 * m * (l + 1) / (s * s)})).norm() < 1e-6);
  CHECK(lie_bracket(y2, y2)(x).norm() < 1e-12);

  const auto r1 = bracket_growth_probe(exact, 1, x);
  CHECK(r1.pointwise_rank == std::vector<int>{2, 3});
  const auto r3 = bracket_growth_probe(exact, 3, x);
  CHECK(r3.span_rank == std::vector<int>{2, 3, 4, 5});
  const auto rl = bracket_growth_probe(linear, 3, x);
  CHECK(rl.pointwise_rank == std::vector<int>{2, 3, 3, 3});
  CHECK(rl.span_rank == std::vector<int>{2, 3, 3, 3});
  CHECK_THROWS(bracket_growth_probe(control_system("brockett"), 2, x));
}
