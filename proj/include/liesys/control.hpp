#pragma once

#include <functional>
#include <string>
#include <vector>

#include "liesys/algebra.hpp"
#include "liesys/matgroups.hpp"
#include "liesys/signal.hpp"
#include "liesys/weinorman.hpp"

namespace liesys {

struct ControllabilityVerdict {
  int generated_dim = 0;
  int full_dim = 0;
  bool controllable = false;
  /// Orthonormal basis (columns) of the generated subalgebra.
  Mat basis;
};

/// A drift-free right-invariant system is controllable iff its input
/// generators bracket-generate the whole algebra.
ControllabilityVerdict controllability(const StructureConstants& sc, const std::vector<Vec>& gens);
/// Generators given as zero-based basis indices of a registry algebra.
ControllabilityVerdict controllability(const std::string& algebra_key,
                                       const std::vector<int>& generators);

/// SE(2) reduction through the subgroup H = {(0, 0, b)}.
struct Se2Reduction {
  std::vector<double> t;
  std::vector<Vec> z;            ///< homogeneous-space solution (z1, z2)
  std::vector<double> b;         ///< subgroup coordinate
  std::vector<GroupElement> lifted;  ///< g1(t) h(t); projects onto z(t)
  std::vector<GroupElement> g;   ///< lifted(t) lifted(0)^{-1}, starts at the identity
};

Se2Reduction reduce_se2(const Signal& b1, const Signal& b2, const std::vector<double>& times,
                        const Vec& z0 = Vec::Zero(2), const WnOptions& options = {});

/// Gbar_eps reduction through the subgroup generated by a1.
struct GbarReduction {
  int eps = 0;
  std::vector<double> t;
  std::vector<Vec> z;
  std::vector<double> v;
  std::vector<GroupElement> lifted;
  std::vector<GroupElement> g;
};

GbarReduction reduce_gbar(int eps, const Signal& b1, const Signal& b2, const Signal& b3,
                          const std::vector<double>& times, const Vec& z0 = Vec::Zero(2),
                          const WnOptions& options = {});

/// tau(theta, a, b) = (theta, a)
Vec tau_se2(const GroupElement& g);
/// tau(a, b, c, d) = ((ac - bd), (bc + ad)) / (a^2 + b^2)
Vec tau_gbar(const GroupElement& g);

/// Planar vector field with its analytic Jacobian.
struct PlanarField {
  std::function<Vec(const Vec&)> value;
  std::function<Mat(const Vec&)> jacobian;
};

/// X1^H, X2^H, X3^H on SE(2)/H.
std::vector<PlanarField> se2_homogeneous_fields();
/// X1^H, X2^H, X3^H on Gbar_eps / exp(R a1).
std::vector<PlanarField> gbar_homogeneous_fields(int eps);

/// [X, Y](z) = DY(z) X(z) - DX(z) Y(z)
Vec planar_bracket(const PlanarField& x, const PlanarField& y, const Vec& z);

struct FieldCheckReport {
  /// Relation label -> max residual over the sample points.
  std::vector<std::pair<std::string, double>> relations;
  double max_residual = 0.0;
};

/// Brackets the printed homogeneous-space fields at each sample point and
/// compares with [X1,X2] = X3, [X2,X3] = eps X1, [X1,X3] = -X2 and
/// [Xi,Xi] = 0. `eps` is ignored for the SE(2) case (se2 = true).
FieldCheckReport verify_fundamental_fields(bool se2, int eps, const std::vector<Vec>& points);

}  // namespace liesys
