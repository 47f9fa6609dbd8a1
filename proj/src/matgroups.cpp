#include "liesys/matgroups.hpp"

#include <cmath>
#include <numbers>

#include "liesys/eps_trig.hpp"
#include "liesys/errors.hpp"

namespace liesys {
namespace {

Mat unit(int n, int row, int col) {
  Mat m = Mat::Zero(n, n);
  m(row - 1, col - 1) = 1.0;
  return m;
}

// 4x4 block form [[0, w^T J, s], [0, A, w], [0, 0, 0]] of h(3) x| sl(2,R).
Mat jacobi_block(const Mat& a, const Eigen::Vector2d& w, double s) {
  Eigen::Matrix2d j;
  j << 0.0, 1.0, -1.0, 0.0;
  Mat m = Mat::Zero(4, 4);
  m.block(0, 1, 1, 2) = w.transpose() * j;
  m(0, 3) = s;
  m.block(1, 1, 2, 2) = a;
  m.block(1, 3, 2, 1) = w;
  return m;
}

std::vector<Mat> sl2_generators() {
  Mat r1 = Mat::Zero(2, 2), r2 = Mat::Zero(2, 2), r3 = Mat::Zero(2, 2);
  r1(0, 1) = -1.0;
  r2(0, 0) = -0.5;
  r2(1, 1) = 0.5;
  r3(1, 0) = 1.0;
  return {r1, r2, r3};
}

// Left multiplication by q = (a, b, c, d) in the Gbar_eps product.
Mat left_mult(const Vec& q, int eps) {
  const double a = q(0), b = q(1), c = q(2), d = q(3), e = eps;
  Mat l(4, 4);
  l << a, -b, -e * c, -e * d,
       b, a, -e * d, e * c,
       c, d, a, -b,
       d, -c, b, a;
  return l;
}

void require_dim(const Vec& v, Eigen::Index n, const char* what) {
  if (v.size() != n) throw DimensionMismatch(std::string(what) + ": expected " +
                                             std::to_string(n) + " coordinates");
}

}  // namespace

MatrixRep builtin_rep(const std::string& key) {
  if (key == "h3") return {key, {unit(3, 1, 2), unit(3, 2, 3), unit(3, 1, 3)}};
  if (key == "h3-classical") return {key, {-unit(3, 1, 2), -unit(3, 2, 3), -unit(3, 1, 3)}};
  if (key == "h3-ext4")
    return {key, {unit(4, 2, 3), unit(4, 1, 2) + unit(4, 3, 4), unit(4, 2, 4) - unit(4, 1, 3),
                  2.0 * unit(4, 1, 4)}};
  if (key == "se2") {
    Mat rot = unit(3, 2, 1) - unit(3, 1, 2);
    return {key, {rot, unit(3, 1, 3), unit(3, 2, 3)}};
  }
  if (key == "sl2") return {key, sl2_generators()};
  if (key == "g5") {
    MatrixRep rep{key, {}};
    for (const Mat& s : sl2_generators()) {
      Mat m = Mat::Zero(3, 3);
      m.topLeftCorner(2, 2) = s;
      rep.generators.push_back(m);
    }
    rep.generators.push_back(unit(3, 1, 3));
    rep.generators.push_back(unit(3, 2, 3));
    return rep;
  }
  if (key == "hsp2") {
    MatrixRep rep{key, {}};
    for (const Mat& s : sl2_generators()) rep.generators.push_back(jacobi_block(s, {0.0, 0.0}, 0.0));
    rep.generators.push_back(jacobi_block(Mat::Zero(2, 2), {1.0, 0.0}, 0.0));
    rep.generators.push_back(jacobi_block(Mat::Zero(2, 2), {0.0, 1.0}, 0.0));
    rep.generators.push_back(jacobi_block(Mat::Zero(2, 2), {0.0, 0.0}, 2.0));
    return rep;
  }
  for (int eps : {1, 0, -1}) {
    if (key != "g_eps(" + std::to_string(eps) + ")") continue;
    // Linear parts A_alpha of the fields x -> A_alpha x; rho = -A.
    const double e = eps;
    Mat a1 = Mat::Zero(3, 3), a2 = Mat::Zero(3, 3), a3 = Mat::Zero(3, 3);
    a1(0, 1) = -1.0;
    a1(1, 0) = 1.0;
    a2(0, 2) = -1.0;
    a2(2, 0) = e;
    a3(1, 2) = 1.0;
    a3(2, 1) = -e;
    return {key, {-a1, -a2, -a3}};
  }
  if (key == "r2") return {key, {unit(2, 1, 1), unit(2, 2, 2)}};
  throw UnknownKey("no builtin representation for algebra '" + key + "'");
}

MatrixRep gbar_rep(int eps) {
  MatrixRep rep{"g_eps(" + std::to_string(eps) + ")", {}};
  for (int i = 1; i <= 3; ++i) {
    Vec q = Vec::Zero(4);
    q(i) = 0.5;
    rep.generators.push_back(left_mult(q, eps));
  }
  return rep;
}

double homomorphism_residual(const MatrixRep& rep, const StructureConstants& sc) {
  const int r = sc.dim();
  if (static_cast<int>(rep.generators.size()) != r)
    throw DimensionMismatch("representation has wrong number of generators");
  double worst = 0.0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      const Mat& x = rep.generators[static_cast<std::size_t>(a)];
      const Mat& y = rep.generators[static_cast<std::size_t>(b)];
      const Mat lhs = rep_element(rep, bracket(basis_vector(r, a), basis_vector(r, b), sc));
      worst = std::max(worst, (lhs - (x * y - y * x)).norm());
    }
  return worst;
}

Mat rep_element(const MatrixRep& rep, const Vec& x) {
  if (x.size() != static_cast<Eigen::Index>(rep.generators.size()))
    throw DimensionMismatch("rep_element: coefficient length mismatch");
  const int n = rep.size();
  Mat m = Mat::Zero(n, n);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (x(i) != 0.0) m += x(i) * rep.generators[static_cast<std::size_t>(i)];
  return m;
}

Mat rep_exp(const MatrixRep& rep, double v, int alpha) {
  if (alpha < 0 || alpha >= static_cast<int>(rep.generators.size()))
    throw IndexOutOfRange("rep_exp: generator index out of range");
  return expm(-v * rep.generators[static_cast<std::size_t>(alpha)]);
}

Mat product_of_exponentials(const MatrixRep& rep, const FactorizationOrder& order, const Vec& v) {
  const int n = rep.size();
  Mat g = Mat::Identity(n, n);
  for (int k = 0; k < order.size(); ++k) g = g * rep_exp(rep, v(order[k]), order[k]);
  return g;
}

Mat adjoint_in_rep(const MatrixRep& rep, const Mat& g) {
  const auto r = static_cast<Eigen::Index>(rep.generators.size());
  const auto n = g.rows();
  Mat basis(n * n, r);
  for (Eigen::Index a = 0; a < r; ++a)
    basis.col(a) = Eigen::Map<const Vec>(rep.generators[static_cast<std::size_t>(a)].data(), n * n);
  const Mat g_inv = g.inverse();
  auto solver = basis.colPivHouseholderQr();
  Mat ad(r, r);
  for (Eigen::Index a = 0; a < r; ++a) {
    const Mat conj = g * rep.generators[static_cast<std::size_t>(a)] * g_inv;
    ad.col(a) = solver.solve(Eigen::Map<const Vec>(conj.data(), n * n));
  }
  return ad;
}

// ---------------------------------------------------------------------------

GroupElement group_identity(GroupKind group, int eps) {
  switch (group) {
    case GroupKind::SE2:
    case GroupKind::H3:
    case GroupKind::H3Upper:
      return {group, Vec::Zero(3), eps};
    case GroupKind::Gbar: {
      Vec q = Vec::Zero(4);
      q(0) = 1.0;
      return {group, q, eps};
    }
  }
  throw Error("unknown group");
}

GroupElement compose(const GroupElement& g, const GroupElement& h) {
  if (g.group != h.group || (g.group == GroupKind::Gbar && g.eps != h.eps))
    throw Error("compose: elements belong to different groups");
  const Vec& x = g.coords;
  const Vec& y = h.coords;
  switch (g.group) {
    case GroupKind::SE2: {
      require_dim(x, 3, "SE(2)");
      require_dim(y, 3, "SE(2)");
      const double c = std::cos(y(0)), s = std::sin(y(0));
      Vec out(3);
      out << x(0) + y(0), y(1) + x(1) * c + x(2) * s, y(2) - x(1) * s + x(2) * c;
      return {g.group, out, 0};
    }
    case GroupKind::H3: {
      require_dim(x, 3, "H(3)");
      require_dim(y, 3, "H(3)");
      Vec out(3);
      out << x(0) + y(0), x(1) + y(1), x(2) + y(2) - x(1) * y(0);
      return {g.group, out, 0};
    }
    case GroupKind::H3Upper: {
      require_dim(x, 3, "H(3)");
      require_dim(y, 3, "H(3)");
      Vec out(3);
      out << x(0) + y(0), x(1) + y(1), x(2) + y(2) + x(0) * y(1);
      return {g.group, out, 0};
    }
    case GroupKind::Gbar: {
      require_dim(x, 4, "Gbar");
      require_dim(y, 4, "Gbar");
      const double a = x(0), b = x(1), c = x(2), d = x(3);
      const double a2 = y(0), b2 = y(1), c2 = y(2), d2 = y(3);
      const double e = g.eps;
      Vec out(4);
      out << a * a2 - b * b2 - e * (c * c2 + d * d2),
             b * a2 + a * b2 - e * (d * c2 - c * d2),
             c * a2 + d * b2 + a * c2 - b * d2,
             d * a2 - c * b2 + b * c2 + a * d2;
      return {g.group, out, g.eps};
    }
  }
  throw Error("unknown group");
}

GroupElement inverse(const GroupElement& g) {
  const Vec& x = g.coords;
  Vec out(x.size());
  switch (g.group) {
    case GroupKind::SE2: {
      const double c = std::cos(x(0)), s = std::sin(x(0));
      out << -x(0), -x(1) * c + x(2) * s, -x(1) * s - x(2) * c;
      break;
    }
    case GroupKind::H3:
      out << -x(0), -x(1), -x(2) - x(0) * x(1);
      break;
    case GroupKind::H3Upper:
      out << -x(0), -x(1), -x(2) + x(0) * x(1);
      break;
    case GroupKind::Gbar:
      out << x(0), -x(1), -x(2), -x(3);
      out /= gbar_constraint(g);
      break;
  }
  return {g.group, out, g.eps};
}

double gbar_constraint(const GroupElement& g) {
  if (g.group != GroupKind::Gbar) throw Error("gbar_constraint: not a Gbar element");
  const Vec& q = g.coords;
  return q(0) * q(0) + q(1) * q(1) + g.eps * (q(2) * q(2) + q(3) * q(3));
}

MatrixRep group_rep(GroupKind group, int eps) {
  switch (group) {
    case GroupKind::SE2:
      return builtin_rep("se2");
    case GroupKind::H3:
      return builtin_rep("h3");
    case GroupKind::H3Upper:
      return builtin_rep("h3-classical");
    case GroupKind::Gbar:
      return gbar_rep(eps);
  }
  throw Error("unknown group");
}

Mat group_matrix(const GroupElement& g) {
  const Vec& x = g.coords;
  switch (g.group) {
    case GroupKind::SE2: {
      const double c = std::cos(x(0)), s = std::sin(x(0));
      Mat m = Mat::Identity(3, 3);
      m(0, 0) = c;
      m(0, 1) = -s;
      m(1, 0) = s;
      m(1, 1) = c;
      m(0, 2) = c * x(1) - s * x(2);
      m(1, 2) = s * x(1) + c * x(2);
      return m;
    }
    case GroupKind::H3: {
      Mat m = Mat::Identity(3, 3);
      m(0, 1) = x(0);
      m(1, 2) = x(1);
      m(0, 2) = x(0) * x(1) + x(2);
      return m;
    }
    case GroupKind::H3Upper: {
      Mat m = Mat::Identity(3, 3);
      m(0, 1) = x(0);
      m(1, 2) = x(1);
      m(0, 2) = x(2);
      return m;
    }
    case GroupKind::Gbar:
      return left_mult(x, g.eps);
  }
  throw Error("unknown group");
}

// ---------------------------------------------------------------------------

HopperConstants HopperConstants::from_leg_mass(double m) {
  if (!(m > 0.0)) throw Error("hopper leg mass must be positive");
  return {m / (1.0 + m), 2.0 * m / ((1.0 + m) * (1.0 + m))};
}

Chart Chart::named(const std::string& key, HopperConstants hopper, int eps) {
  Chart c{ChartKind::Linear};
  if (key == "unicycle-x") c.kind = ChartKind::UnicycleX;
  else if (key == "unicycle-y") c.kind = ChartKind::UnicycleY;
  else if (key == "brockett") c.kind = ChartKind::Brockett;
  else if (key == "hopper") c.kind = ChartKind::Hopper;
  else if (key == "se2-homogeneous") c.kind = ChartKind::Se2Homogeneous;
  else if (key == "gbar-homogeneous") c.kind = ChartKind::GbarHomogeneous;
  else if (key == "affine-plane") c.kind = ChartKind::AffinePlane;
  else
    throw UnknownKey("unknown chart '" + key +
                     "'; valid charts: unicycle-x, unicycle-y, brockett, hopper, "
                     "se2-homogeneous, gbar-homogeneous, affine-plane");
  c.hopper = hopper;
  c.eps = eps;
  return c;
}

Chart Chart::linear(MatrixRep rep, bool affine) {
  Chart c{ChartKind::Linear};
  c.rep = std::move(rep);
  c.affine = affine;
  return c;
}

std::string Chart::key() const {
  switch (kind) {
    case ChartKind::UnicycleX: return "unicycle-x";
    case ChartKind::UnicycleY: return "unicycle-y";
    case ChartKind::Brockett: return "brockett";
    case ChartKind::Hopper: return "hopper";
    case ChartKind::Se2Homogeneous: return "se2-homogeneous";
    case ChartKind::GbarHomogeneous: return "gbar-homogeneous";
    case ChartKind::AffinePlane: return "affine-plane";
    case ChartKind::Linear: return "linear(" + rep.algebra + ")";
  }
  return "?";
}

namespace {

GroupKind chart_group(const Chart& chart) {
  switch (chart.kind) {
    case ChartKind::UnicycleX:
    case ChartKind::UnicycleY:
    case ChartKind::Se2Homogeneous:
      return GroupKind::SE2;
    case ChartKind::Brockett:
    case ChartKind::Hopper:
      return GroupKind::H3;
    case ChartKind::AffinePlane:
      return GroupKind::H3Upper;
    case ChartKind::GbarHomogeneous:
      return GroupKind::Gbar;
    case ChartKind::Linear:
      break;
  }
  throw Error("linear charts act through matrices, use act_linear");
}

}  // namespace

Vec act(const GroupElement& g, const Vec& x, const Chart& chart) {
  if (g.group != chart_group(chart))
    throw Error("act: group element does not act on chart " + chart.key());
  const Vec& p = g.coords;
  Vec out(x.size());
  switch (chart.kind) {
    case ChartKind::UnicycleX: {
      require_dim(x, 3, "unicycle-x");
      const double th = p(0), a = p(1), b = p(2);
      const double c = std::cos(x(2)), s = std::sin(x(2));
      out << x(0) - b * c - a * s, x(1) + b * s - a * c, x(2) - th;
      return out;
    }
    case ChartKind::UnicycleY: {
      require_dim(x, 3, "unicycle-y");
      const double th = p(0), a = p(1), b = p(2);
      const double c = std::cos(th), s = std::sin(th);
      out << x(0) - th, x(1) * c - x(2) * s - a * c + b * s, x(1) * s + x(2) * c - a * s - b * c;
      return out;
    }
    case ChartKind::Brockett: {
      require_dim(x, 3, "brockett");
      const double a = p(0), b = p(1), c = p(2);
      out << x(0) - a, x(1) - b, x(2) + a * x(1) - b * x(0) - a * b - 2.0 * c;
      return out;
    }
    case ChartKind::Hopper: {
      require_dim(x, 3, "hopper");
      const double a = p(0), b = p(1), c = p(2);
      const double k1 = chart.hopper.k1, k2 = chart.hopper.k2;
      out << x(0) - a, x(1) - b, x(2) + k2 * (a * x(1) - c - a * b) + a * k1;
      return out;
    }
    case ChartKind::Se2Homogeneous: {
      require_dim(x, 2, "se2-homogeneous");
      out << x(0) + p(0), x(1) + p(1) * std::cos(x(0)) + p(2) * std::sin(x(0));
      return out;
    }
    case ChartKind::GbarHomogeneous: {
      require_dim(x, 2, "gbar-homogeneous");
      if (g.eps != chart.eps) throw Error("act: Gbar signature does not match chart");
      const double a = p(0), b = p(1), c = p(2), d = p(3), e = g.eps;
      const double z1 = x(0), z2 = x(1), zz = z1 * z1 + z2 * z2;
      const double n1 = (a * a - b * b - e * (c * c - d * d)) * z1 - 2.0 * (a * b + e * c * d) * z2 +
                        (a * c - b * d) * (1.0 - e * zz);
      const double n2 = 2.0 * (a * b - e * c * d) * z1 + (a * a - b * b + e * (c * c - d * d)) * z2 +
                        (a * d + b * c) * (1.0 - e * zz);
      const double den = a * a + b * b - 2.0 * e * ((a * c + b * d) * z1 + (a * d - b * c) * z2) +
                         e * e * (c * c + d * d) * zz;
      if (den <= 1e-14)
        throw ChartBreakdown("gbar-homogeneous chart breakdown: denominator " + std::to_string(den));
      out << n1 / den, n2 / den;
      return out;
    }
    case ChartKind::AffinePlane: {
      require_dim(x, 2, "affine-plane");
      out << x(0) + p(0) * x(1) + p(2), x(1) + p(1);
      return out;
    }
    case ChartKind::Linear:
      break;
  }
  throw Error("act: unsupported chart");
}

Vec act_linear(const Mat& g, const Vec& x, bool affine) {
  if (!affine) {
    if (g.cols() != x.size()) throw DimensionMismatch("act_linear: size mismatch");
    return g * x;
  }
  if (g.cols() != x.size() + 1) throw DimensionMismatch("act_linear: size mismatch");
  Vec xh(x.size() + 1);
  xh << x, 1.0;
  return (g * xh).head(x.size());
}

GroupElement group_element_from_wn(const Chart& chart, const FactorizationOrder& order,
                                   const Vec& v) {
  const GroupKind group = chart_group(chart);
  switch (group) {
    case GroupKind::SE2:
    case GroupKind::H3:
      if (order != FactorizationOrder::ascending(3))
        throw Error("chart " + chart.key() + " expects factorization order (1,2,3), got " +
                    order.to_string());
      return {group, -v, 0};
    case GroupKind::H3Upper:
      if (order != FactorizationOrder::one_based({3, 2, 1}))
        throw Error("chart affine-plane expects factorization order (3,2,1), got " +
                    order.to_string());
      return {group, v, 0};
    case GroupKind::Gbar: {
      GroupElement g = group_identity(GroupKind::Gbar, chart.eps);
      for (int k = 0; k < order.size(); ++k) {
        const int alpha = order[k];
        // exp(-v a_alpha) with a_1, a_2, a_3 = i/2, j/2, k/2.
        const double half = -0.5 * v(alpha);
        const int sig = alpha == 0 ? 1 : chart.eps;
        Vec q = Vec::Zero(4);
        q(0) = eps_cos(sig, half);
        q(alpha + 1) = eps_sin(sig, half);
        g = compose(g, GroupElement{GroupKind::Gbar, q, chart.eps});
      }
      return g;
    }
  }
  throw Error("unknown group");
}

StateTrajectory reconstruct_state(const WeiNormanTrajectory& wn, const Vec& x0,
                                  const Chart& chart) {
  StateTrajectory out;
  out.t = wn.t;
  out.x.reserve(wn.v.size());
  for (std::size_t i = 0; i < wn.v.size(); ++i) {
    if (chart.kind == ChartKind::Linear) {
      out.x.push_back(act_linear(product_of_exponentials(chart.rep, wn.order, wn.v[i]), x0,
                                 chart.affine));
    } else {
      try {
        out.x.push_back(act(group_element_from_wn(chart, wn.order, wn.v[i]), x0, chart));
      } catch (const ChartBreakdown& e) {
        throw ChartBreakdown(std::string(e.what()) + " at t=" + std::to_string(wn.t[i]));
      }
    }
  }
  return out;
}

double wrap_angle(double a) {
  if (a > -std::numbers::pi && a <= std::numbers::pi) return a;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double w = std::fmod(a + std::numbers::pi, two_pi);
  if (w <= 0.0) w += two_pi;
  return w - std::numbers::pi;
}

}  // namespace liesys
