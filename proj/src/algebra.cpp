#include "liesys/algebra.hpp"

#include <cmath>
#include <utility>

#include "liesys/errors.hpp"

namespace liesys {

StructureConstants::StructureConstants(std::string name, int dim)
    : name_(std::move(name)), dim_(dim) {
  if (dim <= 0) throw DimensionMismatch("algebra dimension must be positive");
  c_.assign(static_cast<std::size_t>(dim) * dim * dim, 0.0);
}

void StructureConstants::check_index(int i) const {
  if (i < 0 || i >= dim_)
    throw IndexOutOfRange("basis index " + std::to_string(i) + " out of range for " +
                          name_ + " (dim " + std::to_string(dim_) + ")");
}

StructureConstants& StructureConstants::set_bracket(int alpha, int beta, int gamma,
                                                    double value) {
  check_index(alpha);
  check_index(beta);
  check_index(gamma);
  c_[index(gamma, alpha, beta)] = value;
  c_[index(gamma, beta, alpha)] = -value;
  return *this;
}

void StructureConstants::set_raw(int gamma, int alpha, int beta, double value) {
  check_index(alpha);
  check_index(beta);
  check_index(gamma);
  c_[index(gamma, alpha, beta)] = value;
}

Vec basis_vector(int dim, int index) {
  if (index < 0 || index >= dim) throw IndexOutOfRange("basis index out of range");
  Vec e = Vec::Zero(dim);
  e(index) = 1.0;
  return e;
}

Vec bracket(const Vec& x, const Vec& y, const StructureConstants& sc) {
  const int r = sc.dim();
  if (x.size() != r || y.size() != r)
    throw DimensionMismatch("bracket: element length does not match algebra " + sc.name());
  Vec out = Vec::Zero(r);
  for (int a = 0; a < r; ++a) {
    if (x(a) == 0.0) continue;
    for (int b = 0; b < r; ++b) {
      const double w = x(a) * y(b);
      if (w == 0.0) continue;
      for (int g = 0; g < r; ++g) out(g) += w * sc(g, a, b);
    }
  }
  return out;
}

ConsistencyReport check_consistency(const StructureConstants& sc, double tol) {
  ConsistencyReport report;
  const int r = sc.dim();
  for (int g = 0; g < r; ++g)
    for (int a = 0; a < r; ++a)
      for (int b = a; b < r; ++b) {
        const double res = std::abs(sc(g, a, b) + sc(g, b, a));
        report.max_antisymmetry = std::max(report.max_antisymmetry, res);
        if (res > tol)
          report.violations.push_back(
              {ConsistencyViolation::Kind::Antisymmetry, {g, a, b}, res});
      }

  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int g = 0; g < r; ++g)
        for (int nu = 0; nu < r; ++nu) {
          double s = 0.0;
          for (int mu = 0; mu < r; ++mu)
            s += sc(mu, a, b) * sc(nu, mu, g) + sc(mu, b, g) * sc(nu, mu, a) +
                 sc(mu, g, a) * sc(nu, mu, b);
          const double res = std::abs(s);
          report.max_jacobi = std::max(report.max_jacobi, res);
          if (res > tol)
            report.violations.push_back({ConsistencyViolation::Kind::Jacobi, {a, b, g, nu}, res});
        }
  return report;
}

Mat ad_matrix(int beta, const StructureConstants& sc) {
  const int r = sc.dim();
  if (beta < 0 || beta >= r) throw IndexOutOfRange("ad_matrix: basis index out of range");
  Mat ad(r, r);
  for (int g = 0; g < r; ++g)
    for (int a = 0; a < r; ++a) ad(g, a) = sc(g, beta, a);
  return ad;
}

Mat ad_matrix(const Vec& x, const StructureConstants& sc) {
  const int r = sc.dim();
  if (x.size() != r) throw DimensionMismatch("ad_matrix: element length mismatch");
  Mat ad = Mat::Zero(r, r);
  for (int b = 0; b < r; ++b)
    if (x(b) != 0.0) ad += x(b) * ad_matrix(b, sc);
  return ad;
}

Mat exp_ad(double v, int beta, const StructureConstants& sc) {
  return expm(-v * ad_matrix(beta, sc));
}

Mat bracket_span(const Mat& span, const StructureConstants& sc) {
  const auto k = span.cols();
  Mat brackets(sc.dim(), k * (k - 1) / 2 > 0 ? k * (k - 1) / 2 : 0);
  Eigen::Index col = 0;
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i + 1; j < k; ++j)
      brackets.col(col++) = bracket(span.col(i), span.col(j), sc);
  return orthonormal_span(brackets);
}

DerivedSeries is_solvable(const StructureConstants& sc, const Mat& subalgebra) {
  DerivedSeries series;
  Mat current = orthonormal_span(subalgebra);
  series.dims.push_back(static_cast<int>(current.cols()));
  while (current.cols() > 0) {
    Mat next = bracket_span(current, sc);
    series.dims.push_back(static_cast<int>(next.cols()));
    if (next.cols() == current.cols()) break;
    current = std::move(next);
  }
  series.solvable = series.dims.back() == 0;
  return series;
}

DerivedSeries is_solvable(const StructureConstants& sc) {
  return is_solvable(sc, Mat::Identity(sc.dim(), sc.dim()));
}

Mat generated_subalgebra(const std::vector<Vec>& gens, const StructureConstants& sc) {
  const int r = sc.dim();
  Mat cols(r, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].size() != r) throw DimensionMismatch("generated_subalgebra: generator length");
    cols.col(static_cast<Eigen::Index>(i)) = gens[i];
  }
  Mat span = orthonormal_span(cols);
  while (true) {
    const auto k = span.cols();
    Mat extended(r, k + k * (k - 1) / 2);
    extended.leftCols(k) = span;
    Eigen::Index col = k;
    for (Eigen::Index i = 0; i < k; ++i)
      for (Eigen::Index j = i + 1; j < k; ++j)
        extended.col(col++) = bracket(span.col(i), span.col(j), sc);
    Mat next = orthonormal_span(extended);
    if (next.cols() == k) return next;
    span = std::move(next);
  }
}

}  // namespace liesys
