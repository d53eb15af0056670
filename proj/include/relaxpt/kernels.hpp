#pragma once

#include "relaxpt/kernels/parallel.hpp"
#include "relaxpt/kernels/serial.hpp"

namespace relaxpt::kernels {

// Kernels used by the solvers.
namespace active = omp;

}  // namespace relaxpt::kernels
