#pragma once

#include <span>
#include <vector>

namespace relaxpt {

struct AitkenResult {
  std::vector<double> values;
  /// degenerate[i] is set where the denominator vanished and values[i] is the
  /// pass-through s[i+1].
  std::vector<bool> degenerate;
};

inline constexpr double kAitkenTiny = 1e-300;

/// Delta-squared transform s'_n = (s_n s_{n+2} - s_{n+1}^2) / (s_n + s_{n+2} - 2 s_{n+1}).
/// Needs at least three terms; returns n - 2 values.
AitkenResult aitken(std::span<const double> s);

}  // namespace relaxpt
