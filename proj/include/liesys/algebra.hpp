#pragma once

#include <string>
#include <vector>

#include "liesys/linalg.hpp"

namespace liesys {

/// Structure constants of a real Lie algebra in a fixed basis {a_0..a_{r-1}}:
/// [a_alpha, a_beta] = sum_gamma c(gamma, alpha, beta) a_gamma.
///
/// Indices are zero-based throughout the C++ API. Stored dense; every
/// algebra in this library has r <= 6.
class StructureConstants {
 public:
  StructureConstants(std::string name, int dim);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }

  double operator()(int gamma, int alpha, int beta) const {
    return c_[index(gamma, alpha, beta)];
  }

  /// Sets [a_alpha, a_beta] += value * a_gamma and the antisymmetric partner.
  StructureConstants& set_bracket(int alpha, int beta, int gamma, double value);

  /// Writes a single entry without touching its partner. Only useful for
  /// building deliberately inconsistent tables.
  void set_raw(int gamma, int alpha, int beta, double value);

 private:
  std::size_t index(int gamma, int alpha, int beta) const {
    return (static_cast<std::size_t>(gamma) * dim_ + alpha) * dim_ + beta;
  }
  void check_index(int i) const;

  std::string name_;
  int dim_;
  std::vector<double> c_;
};

/// Basis vector e_index of length dim.
Vec basis_vector(int dim, int index);

/// Bilinear bracket [x, y].
Vec bracket(const Vec& x, const Vec& y, const StructureConstants& sc);

struct ConsistencyViolation {
  enum class Kind { Antisymmetry, Jacobi };
  Kind kind;
  /// (gamma, alpha, beta) for antisymmetry; (alpha, beta, gamma, nu) for Jacobi.
  std::vector<int> indices;
  double residual;
};

struct ConsistencyReport {
  std::vector<ConsistencyViolation> violations;
  double max_antisymmetry = 0.0;
  double max_jacobi = 0.0;
  bool ok() const { return violations.empty(); }
};

ConsistencyReport check_consistency(const StructureConstants& sc, double tol = 1e-12);

/// (ad a_beta)_{gamma alpha} = c(gamma, beta, alpha).
Mat ad_matrix(int beta, const StructureConstants& sc);

/// ad of a general element.
Mat ad_matrix(const Vec& x, const StructureConstants& sc);

/// exp(-v * ad a_beta).
Mat exp_ad(double v, int beta, const StructureConstants& sc);

struct DerivedSeries {
  bool solvable;
  /// Dimensions g, [g,g], ... ; stops at 0 or when the dimension stalls.
  std::vector<int> dims;
};

DerivedSeries is_solvable(const StructureConstants& sc);

/// Solvability of the subalgebra spanned by the columns of `subalgebra`.
DerivedSeries is_solvable(const StructureConstants& sc, const Mat& subalgebra);

/// Orthonormal basis (columns) of the smallest subalgebra containing `gens`.
Mat generated_subalgebra(const std::vector<Vec>& gens, const StructureConstants& sc);

/// Span of all brackets of pairs drawn from the columns of `span`.
Mat bracket_span(const Mat& span, const StructureConstants& sc);

}  // namespace liesys
