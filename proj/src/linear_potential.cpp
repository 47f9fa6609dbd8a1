#include <cmath>
#include <numbers>
#include <sstream>

#include "liesys/errors.hpp"
#include "liesys/models.hpp"
#include "liesys/ode.hpp"

namespace liesys {
namespace {

using Cplx = std::complex<double>;

void require_mass(double m) {
  if (!(m > 0.0)) throw Error("mass must be positive");
}

// Integrals of f from 0 to t: F1(t), F2(t) = int F1.
struct Primitives {
  double f1;
  double f2;
};

Primitives primitives(const Signal& f, double t, double tol) {
  if (t == 0.0) return {0.0, 0.0};
  auto fn = [&f](double s) { return f(s); };
  const double f1 = ode::iterated_integral({fn, 1, t, tol});
  const double f2 = ode::iterated_integral({fn, 2, t, tol});
  return {f1, f2};
}

// psi(p) = phase(p) * phi0(p + shift) with cubic Lagrange interpolation on
// the uniform grid and zeros outside it.
EvolvedWaveFunction shift_with_phase(const WaveFunctionGrid& phi0, double shift,
                                     const std::function<Cplx(double)>& phase) {
  const std::size_t n = phi0.p.size();
  if (n < 4 || phi0.values.size() != n) throw Error("wavefunction grid needs at least 4 points");
  const double dp = phi0.step();
  const double p0 = phi0.p.front();
  auto sample = [&](long j) -> Cplx {
    return j < 0 || j >= static_cast<long>(n) ? Cplx{} : phi0.values[static_cast<std::size_t>(j)];
  };
  EvolvedWaveFunction out;
  out.phi.p = phi0.p;
  out.phi.values.resize(n);
  if (shift == 0.0) {
    for (std::size_t i = 0; i < n; ++i) out.phi.values[i] = phase(phi0.p[i]) * phi0.values[i];
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double x = (phi0.p[i] + shift - p0) / dp;
    const double fl = std::floor(x);
    const long j = static_cast<long>(fl);
    const double s = x - fl;
    const double w_m = -s * (s - 1.0) * (s - 2.0) / 6.0;
    const double w_0 = (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0;
    const double w_1 = -(s + 1.0) * s * (s - 2.0) / 2.0;
    const double w_2 = (s + 1.0) * s * (s - 1.0) / 6.0;
    const Cplx v = w_m * sample(j - 1) + w_0 * sample(j) + w_1 * sample(j + 1) + w_2 * sample(j + 2);
    out.phi.values[i] = phase(phi0.p[i]) * v;
  }
  // Source samples whose image p - shift falls off the grid.
  const double lo = phi0.p.front(), hi = phi0.p.back();
  for (std::size_t j = 0; j < n; ++j) {
    const double target = phi0.p[j] - shift;
    if (target < lo - 1e-12 * dp || target > hi + 1e-12 * dp)
      out.lost_mass += std::norm(phi0.values[j]) * dp;
  }
  out.truncated = out.lost_mass > 1e-12 * std::max(phi0.norm(), 1e-300);
  return out;
}

}  // namespace

PhasePoint linear_potential_classical(double q0, double p0, double m, const Signal& f, double t,
                                      double tol) {
  require_mass(m);
  const Primitives pr = primitives(f, t, tol);
  return {q0 + p0 * t / m - pr.f2 / m, p0 - pr.f1};
}

std::array<double, 2> constants_of_motion(const PhasePoint& x, double t, const Signal& f, double m,
                                          double tol) {
  require_mass(m);
  const Primitives pr = primitives(f, t, tol);
  const double i1 = x.p + pr.f1;
  return {i1, x.q - i1 * t / m + pr.f2 / m};
}

LinearPotentialPath::LinearPotentialPath(double m, const Signal& f, double t_end) : m_(m) {
  require_mass(m);
  if (!(t_end > 0.0)) throw Error("LinearPotentialPath needs t_end > 0");
  Signal fc = f;
  f1_ = std::make_shared<const ode::Antiderivative>([fc](double s) { return fc(s); }, t_end);
  auto f1 = f1_;
  f2_ = std::make_shared<const ode::Antiderivative>([f1](double s) { return (*f1)(s); }, t_end);
}

PhasePoint LinearPotentialPath::classical(double q0, double p0, double t) const {
  return {q0 + p0 * t / m_ - (*f2_)(t) / m_, p0 - (*f1_)(t)};
}

std::array<double, 2> LinearPotentialPath::constants(const PhasePoint& x, double t) const {
  const double i1 = x.p + (*f1_)(t);
  return {i1, x.q - i1 * t / m_ + (*f2_)(t) / m_};
}

Vec linear_potential_quantum_uv(double m, const Signal& f, double t, char variant) {
  require_mass(m);
  if (variant != 'u' && variant != 'v') throw Error("variant must be 'u' or 'v'");
  Vec out = Vec::Zero(4);
  if (t == 0.0) return out;
  auto fn = [&f](double s) { return f(s); };
  const ode::Antiderivative f1(fn, t);
  const ode::Antiderivative f2([&f1](double s) { return f1(s); }, t);
  const double sq = ode::adaptive_simpson([&f1](double s) { return f1(s) * f1(s); }, 0.0, t, 1e-14);
  out(0) = t / m;
  out(1) = -f1(t);
  out(2) = f2(t) / m;
  if (variant == 'v') {
    out(3) = -sq / (2.0 * m);
  } else {
    const double drive = ode::adaptive_simpson([&](double s) { return f(s) * f2(s); }, 0.0, t, 1e-14);
    out(3) = drive / m + sq / (2.0 * m);
  }
  return out;
}

Vec quantum_u_rhs(double m, double f_t, const Vec& u) {
  Vec d(4);
  d << 1.0 / m, -f_t, -u(1) / m, f_t * u(2) + u(1) * u(1) / (2.0 * m);
  return d;
}

Vec quantum_v_rhs(double m, double f_t, const Vec& v) {
  Vec d(4);
  d << 1.0 / m, -f_t, -v(1) / m, -v(1) * v(1) / (2.0 * m);
  return d;
}

WaveFunctionGrid WaveFunctionGrid::gaussian(int points, double p_min, double p_max, double mean,
                                            double width, double position) {
  if (points < 4 || !(p_max > p_min) || !(width > 0.0)) throw Error("invalid Gaussian grid");
  WaveFunctionGrid g;
  const double norm = std::pow(2.0 * std::numbers::pi * width * width, -0.25);
  for (int i = 0; i < points; ++i) {
    const double p = p_min + (p_max - p_min) * i / (points - 1);
    g.p.push_back(p);
    const double d = p - mean;
    g.values.push_back(norm * std::exp(-d * d / (4.0 * width * width)) *
                       std::exp(Cplx(0.0, -p * position)));
  }
  return g;
}

double WaveFunctionGrid::step() const {
  if (p.size() < 2) throw Error("wavefunction grid needs at least 2 points");
  return (p.back() - p.front()) / static_cast<double>(p.size() - 1);
}

double WaveFunctionGrid::norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return s * step();
}

double WaveFunctionGrid::mean_momentum() const {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * std::norm(values[i]);
  return s * step() / norm();
}

EvolvedWaveFunction evolve_wavefunction(const WaveFunctionGrid& phi0, double m, const Signal& f,
                                        double t) {
  const Vec v = linear_potential_quantum_uv(m, f, t, 'v');
  return shift_with_phase(phi0, v(1), [&v](double p) {
    const double ps = p + v(1);
    return std::exp(Cplx(0.0, -v(3) + v(2) * ps + v(0) * ps * ps / 2.0));
  });
}

EvolutionFactors evolution_operator_factors(double m, const Signal& f, double t) {
  const Vec u = linear_potential_quantum_uv(m, f, t, 'u');
  return {u(0), u(1), u(2), u(3)};
}

std::string EvolutionFactors::str() const {
  std::ostringstream os;
  os.precision(17);
  os << "U = exp(-i u4) exp(i u3 P) exp(-i u2 Q) exp(i u1 P^2/2) with u1 = " << u1
     << ", u2 = " << u2 << ", u3 = " << u3 << ", u4 = " << u4;
  return os.str();
}

EvolvedWaveFunction apply_evolution_factors(const EvolutionFactors& u,
                                            const WaveFunctionGrid& phi0) {
  return shift_with_phase(phi0, u.u2, [&u](double p) {
    const double ps = p + u.u2;
    return std::exp(Cplx(0.0, -u.u4 + u.u3 * p + u.u1 * ps * ps / 2.0));
  });
}

}  // namespace liesys
