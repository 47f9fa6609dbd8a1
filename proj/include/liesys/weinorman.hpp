#pragma once

#include <optional>
#include <vector>

#include "liesys/algebra.hpp"
#include "liesys/matgroups.hpp"
#include "liesys/ode.hpp"
#include "liesys/signal.hpp"
#include "liesys/trajectory.hpp"

namespace liesys {

/// Condition estimate above which the Wei-Norman matrix counts as singular.
inline constexpr double kBreakdownCondition = 1e12;

/// M(v) with column o_k = (prod_{j<k} exp(-v_{o_j} ad a_{o_j})) e_{o_k}.
/// The coordinates obey M(v) vdot = b.
Mat wn_matrix(const StructureConstants& sc, const FactorizationOrder& order, const Vec& v);

/// Solves M(v) vdot = b. `t` only labels the FactorizationBreakdown thrown
/// when the condition estimate exceeds kBreakdownCondition.
Vec wn_rhs(const StructureConstants& sc, const FactorizationOrder& order, const Vec& v,
           const Vec& b, double t = 0.0);

struct WnOptions {
  ode::Tolerances tol{};
  std::optional<double> fixed_step;
  /// Samples are step endpoints rather than dense output, so that the
  /// finite-difference residual sees the integrator's step accuracy.
  bool land_on_grid = true;
};

/// Integrates the coordinates from v(0) = 0 and samples them at `times`,
/// which must start at 0 and increase strictly.
WeiNormanTrajectory integrate(const StructureConstants& sc, const FactorizationOrder& order,
                              const ControlSignal& controls, const std::vector<double>& times,
                              const WnOptions& options = {});

/// Group curve g(t_i) = prod exp(-v_alpha rho(a_alpha)) in trajectory order.
std::vector<Mat> group_curve(const MatrixRep& rep, const WeiNormanTrajectory& wn);

/// max_i ||gdot g^{-1} + sum_alpha b_alpha rho(a_alpha)||_F with gdot from
/// five-point (fourth order) finite differences on the sample grid.
double residual(const MatrixRep& rep, const std::vector<double>& t, const std::vector<Mat>& g,
                const ControlSignal& controls);
double residual(const MatrixRep& rep, const WeiNormanTrajectory& wn, const ControlSignal& controls);

/// Result of the structural dependency probe on vdot = M(v)^{-1} b(t).
struct QuadratureStructure {
  bool applicable = false;
  /// Component solve order when applicable (basis indices).
  std::vector<int> solve_order;
  /// depends[k][j]: vdot_k was seen to change with v_j.
  std::vector<std::vector<bool>> depends;
};

QuadratureStructure probe_quadrature_structure(const StructureConstants& sc,
                                               const FactorizationOrder& order,
                                               const ControlSignal& controls, double t_end);

/// Solves the coordinates component by component with Simpson quadrature on
/// a refined grid (spacing at most `max_step`) when every vdot_k depends
/// only on previously solved components. Empty otherwise.
std::optional<WeiNormanTrajectory> solve_by_quadratures(const StructureConstants& sc,
                                                        const FactorizationOrder& order,
                                                        const ControlSignal& controls,
                                                        const std::vector<double>& times,
                                                        double max_step = 1e-3);

}  // namespace liesys
