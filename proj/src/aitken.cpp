#include "relaxpt/aitken.hpp"

#include <cmath>
#include <stdexcept>

namespace relaxpt {

AitkenResult aitken(std::span<const double> s) {
  if (s.size() < 3) throw std::invalid_argument("aitken: need at least three terms");
  AitkenResult out;
  out.values.reserve(s.size() - 2);
  out.degenerate.reserve(s.size() - 2);
  for (std::size_t n = 0; n + 2 < s.size(); ++n) {
    const double denom = s[n] + s[n + 2] - 2.0 * s[n + 1];
    if (std::abs(denom) < kAitkenTiny) {
      out.values.push_back(s[n + 1]);
      out.degenerate.push_back(true);
    } else {
      // Same value as the textbook quotient, arranged to avoid cancellation.
      const double d1 = s[n + 2] - s[n + 1];
      out.values.push_back(s[n + 2] - d1 * d1 / denom);
      out.degenerate.push_back(false);
    }
  }
  return out;
}

}  // namespace relaxpt
