#include "relaxpt/solver.hpp"

namespace relaxpt {

std::string to_string(Mode m) { return m == Mode::ipt ? "ipt" : "rs"; }

std::string to_string(Acceleration a) { return a == Acceleration::none ? "none" : "anderson"; }

std::string to_string(Precision p) { return p == Precision::double_precision ? "double" : "extended"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::converged: return "Converged";
    case Status::max_iterations: return "MaxIterations";
    case Status::diverged: return "Diverged";
  }
  return "?";
}

void SolverConfig::validate() const {
  if (!(alpha > 0.0) || alpha > 1.0) throw ConfigError("alpha must lie in (0, 1]");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter == 0) throw ConfigError("max_iter must be at least 1");
  if (mode == Mode::rs && acceleration == Acceleration::anderson) {
    throw ConfigError("Anderson acceleration applies to IPT mode only");
  }
}

}  // namespace relaxpt
