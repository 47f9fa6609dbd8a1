#include "liesys/linalg.hpp"

#include <cmath>
#include <limits>

namespace liesys {

int nilpotency_index(const Mat& a) {
  const auto n = a.rows();
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 1;
  Mat power = a;
  double bound = scale;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (power.cwiseAbs().maxCoeff() <= 1e-14 * bound) return static_cast<int>(k);
    power = power * a;
    bound *= scale * static_cast<double>(n);
  }
  return 0;
}

Mat expm(const Mat& a) {
  const auto n = a.rows();
  const int nil = nilpotency_index(a);
  if (nil > 0) {
    Mat result = Mat::Identity(n, n);
    Mat term = Mat::Identity(n, n);
    for (int k = 1; k < nil; ++k) {
      term = term * a / static_cast<double>(k);
      result += term;
    }
    return result;
  }

  // Scale so that ||a / 2^s||_1 <= 1/2; 20 Taylor terms then leave a
  // truncation error far below 1e-16.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const Mat scaled = a / std::ldexp(1.0, squarings);

  Mat result = Mat::Identity(n, n);
  Mat term = Mat::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

int numerical_rank(const Mat& columns, double rel_tol) {
  if (columns.size() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(columns);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * sv(0)) ++rank;
  return rank;
}

Mat orthonormal_span(const Mat& columns, double rel_tol) {
  if (columns.cols() == 0) return Mat(columns.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0)
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rel_tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

double condition_number(const Mat& a) {
  Eigen::JacobiSVD<Mat> svd(a);
  const auto& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (smallest == 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / smallest;
}

}  // namespace liesys
