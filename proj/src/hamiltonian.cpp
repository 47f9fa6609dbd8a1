#include <cmath>
#include <sstream>

#include "liesys/errors.hpp"
#include "liesys/models.hpp"
#include "liesys/registry.hpp"

namespace liesys {

ControlSignal QuadraticCoeffs::b_vector(bool quantum) const {
  auto negated = [](const Signal& s) {
    return Signal::custom([s](double t) { return -s(t); }, "-(" + s.describe() + ")");
  };
  std::vector<Signal> b{alpha, beta, gamma, negated(delta), epsilon};
  if (quantum) b.push_back(negated(phi));
  return ControlSignal(std::move(b));
}

Vec classical_quadratic_field(const QuadraticCoeffs& c, double t, const Vec& qp) {
  if (qp.size() != 2) throw DimensionMismatch("phase point must have 2 coordinates");
  const double q = qp(0), p = qp(1);
  Vec out(2);
  out << c.alpha(t) * p + 0.5 * c.beta(t) * q + c.delta(t),
      -(0.5 * c.beta(t) * p + c.gamma(t) * q + c.epsilon(t));
  return out;
}

LieScenario quadratic_scenario(bool quantum) {
  const std::string key = quantum ? "hsp2" : "g5";
  const AlgebraEntry& entry = find_algebra(key);
  MatrixRep rep = builtin_rep(key);
  LieScenario s{key, FactorizationOrder(entry.default_order), Chart::linear(rep, !quantum), rep, {}};
  for (int i = 0; i < entry.constants.dim(); ++i) s.channel_map.push_back(i);
  return s;
}

// ---------------------------------------------------------------------------

Poly2 Poly2::constant(double c) { return monomial(c, 0, 0); }

Poly2 Poly2::monomial(double c, int i, int j) {
  Poly2 p;
  p.add(i, j, c);
  return p;
}

void Poly2::add(int i, int j, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Poly2 Poly2::operator+(const Poly2& o) const {
  Poly2 r = *this;
  for (const auto& [e, c] : o.terms_) r.add(e.first, e.second, c);
  return r;
}

Poly2 Poly2::operator-(const Poly2& o) const { return *this + o * -1.0; }

Poly2 Poly2::operator*(const Poly2& o) const {
  Poly2 r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add(e1.first + e2.first, e1.second + e2.second, c1 * c2);
  return r;
}

Poly2 Poly2::operator*(double s) const {
  Poly2 r;
  for (const auto& [e, c] : terms_) r.add(e.first, e.second, c * s);
  return r;
}

Poly2 Poly2::dq() const {
  Poly2 r;
  for (const auto& [e, c] : terms_)
    if (e.first > 0) r.add(e.first - 1, e.second, c * e.first);
  return r;
}

Poly2 Poly2::dp() const {
  Poly2 r;
  for (const auto& [e, c] : terms_)
    if (e.second > 0) r.add(e.first, e.second - 1, c * e.second);
  return r;
}

double Poly2::operator()(double q, double p) const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * std::pow(q, e.first) * std::pow(p, e.second);
  return s;
}

double Poly2::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly2::max_abs() const {
  double m = 0.0;
  for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
  return m;
}

std::string Poly2::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ")) << std::abs(c);
    if (e.first) os << " q" << (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second) os << " p" << (e.second > 1 ? "^" + std::to_string(e.second) : "");
    first = false;
  }
  return os.str();
}

Poly2 poisson(const Poly2& f, const Poly2& g) { return f.dq() * g.dp() - f.dp() * g.dq(); }

const std::vector<Poly2>& hamiltonian_set(const std::string& set) {
  static const std::vector<Poly2> quadratic{
      Poly2::monomial(-0.5, 0, 2), Poly2::monomial(-0.5, 1, 1), Poly2::monomial(-0.5, 2, 0),
      Poly2::monomial(1.0, 0, 1), Poly2::monomial(-1.0, 1, 0)};
  static const std::vector<Poly2> linear_potential{
      Poly2::monomial(-0.5, 0, 2), Poly2::monomial(1.0, 1, 0), Poly2::monomial(-1.0, 0, 1)};
  if (set == "quadratic") return quadratic;
  if (set == "linear-potential") return linear_potential;
  throw UnknownKey("unknown Hamiltonian set '" + set + "'; valid sets: quadratic, linear-potential");
}

PoissonReport poisson_bracket(const std::string& set, int i, int j) {
  const auto& h = hamiltonian_set(set);
  const int n = static_cast<int>(h.size());
  if (i < 1 || i > n || j < 1 || j > n)
    throw IndexOutOfRange("Hamiltonian index out of range for set " + set);
  PoissonReport r;
  r.value = poisson(h[static_cast<std::size_t>(i - 1)], h[static_cast<std::size_t>(j - 1)]);

  // Least squares over monomials of degree <= 2: columns h_1..h_n and 1.
  const std::vector<std::pair<int, int>> monos{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  Mat a(static_cast<Eigen::Index>(monos.size()), n + 1);
  Vec rhs(static_cast<Eigen::Index>(monos.size()));
  for (std::size_t m = 0; m < monos.size(); ++m) {
    const auto [mi, mj] = monos[m];
    const auto row = static_cast<Eigen::Index>(m);
    for (int k = 0; k < n; ++k) a(row, k) = h[static_cast<std::size_t>(k)].coeff(mi, mj);
    a(row, n) = mi == 0 && mj == 0 ? 1.0 : 0.0;
    rhs(row) = r.value.coeff(mi, mj);
  }
  double higher = 0.0;
  for (const auto& [e, c] : r.value.terms())
    if (e.first + e.second > 2) higher = std::max(higher, std::abs(c));
  const Vec x = a.colPivHouseholderQr().solve(rhs);
  r.coeffs.assign(x.data(), x.data() + n);
  r.central = x(n);
  r.fit_residual = std::max(higher, (a * x - rhs).cwiseAbs().maxCoeff());
  return r;
}

std::string PoissonReport::str() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (std::abs(coeffs[k]) < 1e-15) continue;
    os << (any ? (coeffs[k] < 0 ? " - " : " + ") : (coeffs[k] < 0 ? "-" : ""));
    if (std::abs(std::abs(coeffs[k]) - 1.0) > 1e-15) os << std::abs(coeffs[k]) << " ";
    os << "h" << k + 1;
    any = true;
  }
  if (std::abs(central) >= 1e-15) {
    os << (any ? (central < 0 ? " - " : " + ") : (central < 0 ? "-" : "")) << std::abs(central);
    any = true;
  }
  return any ? os.str() : "0";
}

}  // namespace liesys
