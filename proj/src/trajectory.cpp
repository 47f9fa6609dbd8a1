#include "liesys/trajectory.hpp"

#include <algorithm>
#include <numeric>

#include "liesys/errors.hpp"

namespace liesys {

FactorizationOrder::FactorizationOrder(std::vector<int> order) : order_(std::move(order)) {
  std::vector<int> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      throw Error("factorization order is not a permutation: " + to_string());
}

FactorizationOrder FactorizationOrder::ascending(int r) {
  std::vector<int> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  return FactorizationOrder(std::move(order));
}

FactorizationOrder FactorizationOrder::one_based(std::initializer_list<int> order) {
  std::vector<int> zero;
  for (int i : order) zero.push_back(i - 1);
  return FactorizationOrder(std::move(zero));
}

std::string FactorizationOrder::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < order_.size(); ++i)
    s += (i ? "," : "") + std::to_string(order_[i] + 1);
  return s + ")";
}

double max_state_error(const StateTrajectory& a, const StateTrajectory& b) {
  if (a.x.size() != b.x.size()) throw DimensionMismatch("max_state_error: sample counts differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.x.size(); ++i)
    worst = std::max(worst, (a.x[i] - b.x[i]).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace liesys
