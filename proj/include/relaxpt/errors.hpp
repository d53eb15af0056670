#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace relaxpt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// The targeted unperturbed level is not isolated: some other diagonal entry of
// H0 sits within the degeneracy threshold of E0, so the reduced resolvent does
// not exist.
class DegenerateDiagonal : public Error {
 public:
  DegenerateDiagonal(std::size_t index, double gap)
      : Error("degenerate diagonal: |E0 - h0[" + std::to_string(index) +
              "]| = " + std::to_string(gap) + " is below the threshold"),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace relaxpt
