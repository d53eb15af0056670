#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "relaxpt/sparse.hpp"

namespace testutil {

using relaxpt::SparseSymmetric;

inline std::vector<double> random_vector(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

/// Diagonal 0, spacing, 2 spacing, ... plus off-diagonal noise of size `off`
/// on a fraction `density` of pairs.
inline SparseSymmetric<double> random_symmetric(std::size_t n, std::uint64_t seed, double off, double spacing = 1.0,
                                                double density = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), coin(0.0, 1.0);
  std::vector<SparseSymmetric<double>::Entry> e;
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back({i, i, spacing * static_cast<double>(i) + 0.1 * u(rng)});
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = off * u(rng);
      if (coin(rng) < density) e.push_back({i, j, v});
    }
  }
  return SparseSymmetric<double>::from_entries(n, std::move(e));
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double norm_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace testutil
