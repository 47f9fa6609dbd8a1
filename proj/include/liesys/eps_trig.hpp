#pragma once

#include <optional>

namespace liesys {

/// Signature-dependent trigonometric functions:
///   eps = 1: (cos, sin), eps = 0: (1, x), eps = -1: (cosh, sinh),
/// with T = S / C.
struct EpsTrigValues {
  double c;
  double s;
  /// Empty at a pole of T (C == 0, only possible for eps = 1).
  std::optional<double> t;
};

/// Throws Error unless eps is -1, 0 or 1.
EpsTrigValues eps_trig(int eps, double x);

double eps_cos(int eps, double x);
double eps_sin(int eps, double x);

}  // namespace liesys
