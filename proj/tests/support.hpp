#pragma once

#include <random>

#include "liesys/linalg.hpp"

namespace testing_support {

/// Plain Taylor sum of exp(a), used as an independent oracle for expm.
inline liesys::Mat series_exp(const liesys::Mat& a, int terms = 80) {
  liesys::Mat sum = liesys::Mat::Identity(a.rows(), a.cols());
  liesys::Mat term = sum;
  for (int k = 1; k < terms; ++k) {
    term = term * a / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

inline liesys::Vec random_vec(std::mt19937_64& rng, int n, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> d(lo, hi);
  liesys::Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testing_support
