#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "relaxpt/aitken.hpp"

using relaxpt::aitken;

TEST_CASE("geometric partial sums are extrapolated exactly") {
  const std::vector<double> s{1.0, 1.5, 1.75};
  const auto r = aitken(s);
  REQUIRE(r.values.size() == 1);
  CHECK(r.values[0] == 2.0);
  CHECK_FALSE(r.degenerate[0]);
}

TEST_CASE("constant sequence passes through and is flagged") {
  const std::vector<double> s{0.7, 0.7, 0.7, 0.7};
  const auto r = aitken(s);
  CHECK(r.values == std::vector<double>{0.7, 0.7});
  CHECK(r.degenerate == std::vector<bool>{true, true});
}

TEST_CASE("L + c rho^n gives back L") {
  for (double rho : {0.9, 0.5, -0.6, 0.99}) {
    const double lim = 3.25, c = 0.47;
    std::vector<double> s;
    for (int n = 0; n < 200; ++n) s.push_back(lim + c * std::pow(rho, n));
    const auto r = aitken(s);
    for (std::size_t n = 0; n < r.values.size(); ++n) {
      // rounding in the inputs is amplified by about 1 / (1 - rho)^2
      const double tol = 1e-14 / ((1 - rho) * (1 - rho));
      if (std::abs(c * std::pow(rho, static_cast<double>(n) + 2)) > 1e-6) CHECK(std::abs(r.values[n] - lim) <= tol);
    }
  }
}

TEST_CASE("short input is rejected") {
  const std::vector<double> s{1.0, 2.0};
  CHECK_THROWS_AS(aitken(s), std::invalid_argument);
}
