#include <cmath>

#include "liesys/errors.hpp"
#include "liesys/models.hpp"

namespace liesys {

double cross_ratio(double x, double x1, double x2, double x3) {
  const double den = (x - x3) * (x2 - x1);
  if (den == 0.0) throw Error("cross ratio undefined: coincident points");
  return (x - x1) * (x2 - x3) / den;
}

double riccati_superpose(double x1, double x2, double x3, double k) {
  if (x1 == x2 || x2 == x3 || x1 == x3)
    throw Error("riccati_superpose needs three distinct particular solutions");
  const double den = (x2 - x3) - k * (x2 - x1);
  const double num = x1 * (x2 - x3) - k * x3 * (x2 - x1);
  if (std::abs(den) <= 1e-14 * (std::abs(x2 - x3) + std::abs(k * (x2 - x1))))
    throw Error("riccati_superpose: degenerate denominator (solution at infinity)");
  return num / den;
}

}  // namespace liesys
