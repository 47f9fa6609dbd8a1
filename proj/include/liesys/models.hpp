#pragma once

#include <array>
#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "liesys/matgroups.hpp"
#include "liesys/ode.hpp"
#include "liesys/signal.hpp"
#include "liesys/trajectory.hpp"
#include "liesys/weinorman.hpp"

namespace liesys {

// ---------------------------------------------------------------------------
// Drift-free control systems xdot = sum_i u_i(t) X_i(x)

struct ControlSystemDef {
  std::string key;
  int state_dim = 0;
  int control_dim = 0;
  /// Input fields X_i(x), one per control channel.
  std::function<Vec(const Vec& x, int channel)> field;
  /// Empty algebra key marks a system that is not a Lie system.
  std::string algebra;
  std::string chart;
  double leg_mass = 1.0;
  HopperConstants hopper{};
  int eps = 0;

  bool is_lie_system() const { return !algebra.empty(); }
  Vec rhs(const Vec& x, const Vec& u) const;
};

/// unicycle-x, unicycle-y, brockett, hopper-exact, hopper-linear,
/// elastic-euler(1), elastic-euler(0), elastic-euler(-1).
std::vector<std::string> control_system_keys();

/// Accepts the keys above; "elastic-euler(eps=1)" is also understood.
ControlSystemDef control_system(const std::string& key, double leg_mass = 1.0);

/// Reference solution of the raw coordinate equations.
StateTrajectory direct_integrate(const ControlSystemDef& def, const ControlSignal& controls,
                                 const Vec& x0, const std::vector<double>& times,
                                 const WnOptions& options = {});

/// Everything the Wei-Norman path needs for one model.
struct LieScenario {
  std::string algebra;
  FactorizationOrder order;
  Chart chart;
  /// Faithful representation used for residuals and group comparisons.
  MatrixRep rep;
  /// channel_map[i] = basis index driven by control channel i.
  std::vector<int> channel_map;

  /// Pads the model controls to the full b-vector (unused channels zero).
  ControlSignal algebra_controls(const ControlSignal& controls) const;
};

/// Throws NotALieSystem for hopper-exact.
LieScenario lie_scenario(const ControlSystemDef& def);

/// Numerical Lie bracket [X, Y](x) = DY(x) X(x) - DX(x) Y(x) with central
/// differences of step h.
using VectorField = std::function<Vec(const Vec&)>;
VectorField lie_bracket(VectorField x, VectorField y, double h = 2e-3);

struct BracketGrowthReport {
  /// Field count at each depth d: Y1, Y2 and d iterated brackets.
  std::vector<int> field_count;
  /// Rank of the fields evaluated at the single point x.
  std::vector<int> pointwise_rank;
  /// Dimension of the real span of the fields as functions, sampled on a
  /// stencil of leg extensions around x.
  std::vector<int> span_rank;
};

/// Iterated brackets [Y2,[Y2,...[Y2,Y1]]] up to `depth` (at most 5) for the
/// hopper systems, evaluated at x = (psi, l, theta).
BracketGrowthReport bracket_growth_probe(const ControlSystemDef& def, int depth, const Vec& x);

// ---------------------------------------------------------------------------
// Quadratic Hamiltonians

/// Coefficients of H = alpha p^2/2 + beta qp/2 + gamma q^2/2 + delta p + eps q + phi.
struct QuadraticCoeffs {
  Signal alpha, beta, gamma, delta, epsilon, phi;
  /// b = (alpha, beta, gamma, -delta, epsilon) and, in quantum mode, -phi.
  ControlSignal b_vector(bool quantum) const;
};

/// (qdot, pdot) = (alpha p + beta q/2 + delta, -(beta p/2 + gamma q + epsilon))
Vec classical_quadratic_field(const QuadraticCoeffs& c, double t, const Vec& qp);

/// g5 with the affine action on (q, p), or hsp2 (quantum) with its 4x4 rep
/// acting on homogenized (q, p) and the phase slot.
LieScenario quadratic_scenario(bool quantum);

/// Real polynomial in two variables, keyed by exponents (i, j) of q^i p^j.
class Poly2 {
 public:
  Poly2() = default;
  static Poly2 constant(double c);
  static Poly2 monomial(double c, int i, int j);
  Poly2 operator+(const Poly2& o) const;
  Poly2 operator-(const Poly2& o) const;
  Poly2 operator*(const Poly2& o) const;
  Poly2 operator*(double s) const;
  Poly2 dq() const;
  Poly2 dp() const;
  double operator()(double q, double p) const;
  const std::map<std::pair<int, int>, double>& terms() const { return terms_; }
  double coeff(int i, int j) const;
  double max_abs() const;
  std::string str() const;

 private:
  void add(int i, int j, double c);
  std::map<std::pair<int, int>, double> terms_;
};

/// {f, g} = f_q g_p - f_p g_q
Poly2 poisson(const Poly2& f, const Poly2& g);

/// "quadratic": h1 = -p^2/2, h2 = -qp/2, h3 = -q^2/2, h4 = p, h5 = -q.
/// "linear-potential": h1 = -p^2/2, h2 = q, h3 = -p.
const std::vector<Poly2>& hamiltonian_set(const std::string& set);

struct PoissonReport {
  Poly2 value;
  /// value = sum_k coeffs[k] h_k + central
  std::vector<double> coeffs;
  double central = 0.0;
  /// Coefficient mismatch of the fit; zero when the bracket closes.
  double fit_residual = 0.0;
  std::string str() const;
};

/// Bracket of h_i and h_j (one-based) from the named set.
PoissonReport poisson_bracket(const std::string& set, int i, int j);

// ---------------------------------------------------------------------------
// Time-dependent linear potential H = p^2/(2m) + f(t) q

struct PhasePoint {
  double q = 0.0;
  double p = 0.0;
};

PhasePoint linear_potential_classical(double q0, double p0, double m, const Signal& f, double t,
                                      double tol = 1e-12);

/// (I1, I2) along a trajectory point x observed at time t.
std::array<double, 2> constants_of_motion(const PhasePoint& x, double t, const Signal& f,
                                          double m, double tol = 1e-12);

/// Tabulated F1 = int f and F2 = int F1 on [0, t_end] for evaluating the closed
/// forms along a whole trajectory without repeating the quadratures.
class LinearPotentialPath {
 public:
  LinearPotentialPath(double m, const Signal& f, double t_end);
  PhasePoint classical(double q0, double p0, double t) const;
  std::array<double, 2> constants(const PhasePoint& x, double t) const;

 private:
  double m_;
  std::shared_ptr<const ode::Antiderivative> f1_;
  std::shared_ptr<const ode::Antiderivative> f2_;
};

/// Coordinates (u1..u4) of the factorization (4,3,2,1) or (v1..v4) of
/// (4,2,3,1) of the quantum evolution, from their quadrature formulas.
Vec linear_potential_quantum_uv(double m, const Signal& f, double t, char variant);

/// Right-hand sides of the printed u and v systems.
Vec quantum_u_rhs(double m, double f_t, const Vec& u);
Vec quantum_v_rhs(double m, double f_t, const Vec& v);

struct WaveFunctionGrid {
  std::vector<double> p;
  std::vector<std::complex<double>> values;

  static WaveFunctionGrid gaussian(int points, double p_min, double p_max, double mean,
                                   double width, double position = 0.0);
  double step() const;
  /// sum |phi|^2 dp
  double norm() const;
  double mean_momentum() const;
};

struct EvolvedWaveFunction {
  WaveFunctionGrid phi;
  /// Mass of phi0 that the shift moved outside the grid.
  double lost_mass = 0.0;
  bool truncated = false;
};

/// phi(p,t) = exp(-i v4) exp(i (v3 (p+v2) + v1 (p+v2)^2/2)) phi0(p+v2),
/// cubic interpolation with zero padding for the shift.
EvolvedWaveFunction evolve_wavefunction(const WaveFunctionGrid& phi0, double m, const Signal& f,
                                        double t);

struct EvolutionFactors {
  /// U = exp(-i u4) exp(i u3 P) exp(-i u2 Q) exp(i u1 P^2/2)
  double u1 = 0.0, u2 = 0.0, u3 = 0.0, u4 = 0.0;
  std::string str() const;
};

EvolutionFactors evolution_operator_factors(double m, const Signal& f, double t);

/// Applies the u-ordered product of factors to a momentum-space grid.
EvolvedWaveFunction apply_evolution_factors(const EvolutionFactors& u, const WaveFunctionGrid& phi0);

// ---------------------------------------------------------------------------
// Riccati equations

/// ((x - x1)(x2 - x3)) / ((x - x3)(x2 - x1))
double cross_ratio(double x, double x1, double x2, double x3);

/// Solution x with cross_ratio(x, x1, x2, x3) = k.
double riccati_superpose(double x1, double x2, double x3, double k);

}  // namespace liesys
