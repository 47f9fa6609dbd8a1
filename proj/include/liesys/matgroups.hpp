#pragma once

#include <string>
#include <vector>

#include "liesys/algebra.hpp"
#include "liesys/linalg.hpp"
#include "liesys/trajectory.hpp"

namespace liesys {

/// Faithful matrix representation: generators[alpha] = rho(a_alpha).
struct MatrixRep {
  std::string algebra;
  std::vector<Mat> generators;
  int size() const { return generators.empty() ? 0 : static_cast<int>(generators.front().rows()); }
};

/// Builtin representations keyed like the algebra registry:
/// h3, h3-classical, h3-ext4 (4x4), se2, sl2 (2x2), g5 (3x3 affine),
/// hsp2 (4x4), g_eps(e) (3x3, rho = minus the linear parts of the
/// elastic-problem fields), r2 (2x2 diagonal).
MatrixRep builtin_rep(const std::string& algebra_key);

/// 4x4 left-multiplication representation of the covering group Gbar_eps,
/// with a_1, a_2, a_3 = i/2, j/2, k/2.
MatrixRep gbar_rep(int eps);

/// max_{alpha,beta} ||rho([a_alpha,a_beta]) - [rho(a_alpha), rho(a_beta)]||_F
double homomorphism_residual(const MatrixRep& rep, const StructureConstants& sc);

/// sum_alpha x_alpha rho(a_alpha)
Mat rep_element(const MatrixRep& rep, const Vec& x);

/// exp(-v rho(a_alpha)); exact polynomial for nilpotent generators.
Mat rep_exp(const MatrixRep& rep, double v, int alpha);

/// prod_k exp(-v_{o_k} rho(a_{o_k})) in factorization order.
Mat product_of_exponentials(const MatrixRep& rep, const FactorizationOrder& order, const Vec& v);

/// Coordinates in basis {a_alpha} of g X g^{-1} for each generator X: the
/// adjoint matrix of a group element given in a faithful representation.
Mat adjoint_in_rep(const MatrixRep& rep, const Mat& g);

// ---------------------------------------------------------------------------
// Parametrized groups

enum class GroupKind {
  SE2,      ///< (theta, a, b) with g = exp(theta a1) exp(a a2) exp(b a3)
  H3,       ///< (a, b, c) with g = exp(a a1) exp(b a2) exp(c a3), [a1,a2]=a3
  H3Upper,  ///< entries (a1, a2, a3) of [[1,a1,a3],[0,1,a2],[0,0,1]]
  Gbar,     ///< (a, b, c, d) with a^2 + b^2 + eps (c^2 + d^2) = 1
};

struct GroupElement {
  GroupKind group;
  Vec coords;
  int eps = 0;  ///< only meaningful for Gbar
};

GroupElement group_identity(GroupKind group, int eps = 0);

/// Group law of each parametrization. Throws on mismatched groups.
GroupElement compose(const GroupElement& g, const GroupElement& h);

GroupElement inverse(const GroupElement& g);

/// a^2 + b^2 + eps (c^2 + d^2); equals 1 on Gbar_eps.
double gbar_constraint(const GroupElement& g);

/// Image in a faithful matrix representation (the builtin rep of se2, h3,
/// h3-classical, or gbar_rep(eps)).
Mat group_matrix(const GroupElement& g);

/// Representation that `group_matrix` lands in.
MatrixRep group_rep(GroupKind group, int eps = 0);

// ---------------------------------------------------------------------------
// Homogeneous-space actions

enum class ChartKind {
  UnicycleX,        ///< SE(2) on R^2 x S^1, coordinates (x1, x2, x3)
  UnicycleY,        ///< same action in (y1, y2, y3)
  Brockett,         ///< H(3) on R^3
  Hopper,           ///< H(3) on (psi, l, theta), needs k1, k2
  Se2Homogeneous,   ///< SE(2) on SE(2)/{(0,0,b)}, coordinates (z1, z2)
  GbarHomogeneous,  ///< Gbar_eps on Gbar_eps / exp(R a1), coordinates (z1, z2)
  AffinePlane,      ///< H(3) upper-triangular matrices on (q, p)
  Linear,           ///< x -> rho(g) x for a matrix representation
};

struct HopperConstants {
  double k1 = 0.5;
  double k2 = 0.5;
  /// k1 = m/(1+m), k2 = 2m/(1+m)^2
  static HopperConstants from_leg_mass(double leg_mass);
};

struct Chart {
  ChartKind kind;
  HopperConstants hopper{};
  int eps = 0;
  /// Linear charts: representation and whether states are homogenized (x, 1).
  MatrixRep rep{};
  bool affine = false;

  /// unicycle-x, unicycle-y, brockett, hopper, se2-homogeneous,
  /// gbar-homogeneous, affine-plane. Linear charts are built with `linear`.
  static Chart named(const std::string& key, HopperConstants hopper = {}, int eps = 0);
  static Chart linear(MatrixRep rep, bool affine);
  std::string key() const;
};

/// Left action Phi(g, x). Throws ChartBreakdown when the gbar chart
/// denominator drops to 1e-14 or below.
Vec act(const GroupElement& g, const Vec& x, const Chart& chart);

/// Linear action of a representation matrix (homogenized when `affine`).
Vec act_linear(const Mat& g, const Vec& x, bool affine);

/// Group element, in the chart's parametrization, of the Wei-Norman curve
/// g = prod exp(-v_alpha a_alpha). Coordinate charts require the order
/// their formulas were written for: (1,2,3) for the SE(2)/H(3) charts,
/// (3,2,1) for the affine plane. Gbar accepts any order.
GroupElement group_element_from_wn(const Chart& chart, const FactorizationOrder& order,
                                   const Vec& v);

/// x(t) = Phi(g(t), x0) at every sample of the trajectory.
StateTrajectory reconstruct_state(const WeiNormanTrajectory& wn, const Vec& x0,
                                  const Chart& chart);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double a);

}  // namespace liesys
