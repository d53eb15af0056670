#pragma once

#include <cmath>
#include <concepts>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace relaxpt {

// Software quad precision: 113-bit mantissa, about 34 significant digits.
using Extended = boost::multiprecision::cpp_bin_float_quad;

template <class T>
bool is_finite(const T& x) {
  if constexpr (std::floating_point<T>) {
    return std::isfinite(x);
  } else {
    return boost::multiprecision::isfinite(x);
  }
}

template <class T>
double to_double(const T& x) {
  return static_cast<double>(x);
}

template <class T>
T from_decimal(const std::string& text) {
  if constexpr (std::same_as<T, double>) {
    return std::stod(text);
  } else {
    return T(text);
  }
}

// Parses a real-valued parameter token. Plain decimals are accepted as well as
// "sqrtX" (square root of the decimal X), so that values such as sqrt(0.3)
// can be given exactly at the working precision.
bool is_valid_parameter_token(std::string_view token);

template <class T>
T evaluate_parameter(const std::string& token) {
  using std::sqrt;
  if (token.rfind("sqrt", 0) == 0) {
    std::string inner = token.substr(4);
    if (!inner.empty() && inner.front() == '(' && inner.back() == ')') {
      inner = inner.substr(1, inner.size() - 2);
    }
    return T(sqrt(from_decimal<T>(inner)));
  }
  return from_decimal<T>(token);
}

}  // namespace relaxpt
