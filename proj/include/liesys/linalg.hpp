#pragma once

#include <Eigen/Dense>

namespace liesys {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Relative singular-value threshold used for every rank decision.
inline constexpr double kRankTolerance = 1e-10;

/// Smallest k >= 1 with a^k == 0, or 0 when a is not nilpotent.
/// Entries below `1e-14 * ||a||^k` count as zero.
int nilpotency_index(const Mat& a);

/// Matrix exponential. Exact finite series when `a` is nilpotent,
/// otherwise scaling and squaring of a truncated Taylor series.
Mat expm(const Mat& a);

/// Numerical rank with threshold `rel_tol * sigma_max`.
int numerical_rank(const Mat& columns, double rel_tol = kRankTolerance);

/// Orthonormal basis (as columns) of the column span of `columns`.
Mat orthonormal_span(const Mat& columns, double rel_tol = kRankTolerance);

/// 2-norm condition number via SVD; +inf for singular matrices.
double condition_number(const Mat& a);

}  // namespace liesys
