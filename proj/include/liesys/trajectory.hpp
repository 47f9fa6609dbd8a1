#pragma once

#include <string>
#include <vector>

#include "liesys/linalg.hpp"

namespace liesys {

/// Exponent ordering of g = exp(-v_{o_0} a_{o_0}) ... exp(-v_{o_{r-1}} a_{o_{r-1}}),
/// zero-based basis indices.
class FactorizationOrder {
 public:
  explicit FactorizationOrder(std::vector<int> order);
  static FactorizationOrder ascending(int r);
  /// Builds from one-based indices, e.g. {4, 5, 1, 2, 3}.
  static FactorizationOrder one_based(std::initializer_list<int> order);

  int size() const { return static_cast<int>(order_.size()); }
  int operator[](int k) const { return order_[static_cast<std::size_t>(k)]; }
  const std::vector<int>& indices() const { return order_; }
  bool operator==(const FactorizationOrder&) const = default;
  std::string to_string() const;  ///< one-based, e.g. "(4,5,1,2,3)"

 private:
  std::vector<int> order_;
};

/// Samples of the second-kind coordinates v(t); v is indexed by basis index.
struct WeiNormanTrajectory {
  std::string algebra;
  FactorizationOrder order;
  std::vector<double> t;
  std::vector<Vec> v;
};

/// Samples of a point on a homogeneous space.
struct StateTrajectory {
  std::vector<double> t;
  std::vector<Vec> x;
};

/// Max over common samples of the max-norm difference.
double max_state_error(const StateTrajectory& a, const StateTrajectory& b);

}  // namespace liesys
