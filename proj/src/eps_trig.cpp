#include "liesys/eps_trig.hpp"

#include <cmath>

#include "liesys/errors.hpp"

namespace liesys {
namespace {

void check_eps(int eps) {
  if (eps < -1 || eps > 1) throw Error("signature eps must be -1, 0 or 1");
}

}  // namespace

double eps_cos(int eps, double x) {
  check_eps(eps);
  if (eps == 1) return std::cos(x);
  if (eps == 0) return 1.0;
  return std::cosh(x);
}

double eps_sin(int eps, double x) {
  check_eps(eps);
  if (eps == 1) return std::sin(x);
  if (eps == 0) return x;
  return std::sinh(x);
}

EpsTrigValues eps_trig(int eps, double x) {
  EpsTrigValues out{eps_cos(eps, x), eps_sin(eps, x), std::nullopt};
  if (std::abs(out.c) > 1e-14) out.t = out.s / out.c;
  return out;
}

}  // namespace liesys
