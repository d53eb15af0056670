#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "relaxpt/partition.hpp"
#include "relaxpt/pencil.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

/// Reference answers computed without touching the perturbative code paths.

struct DenseSpectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns (S-orthonormal for pencils)
};

inline constexpr std::size_t kDenseCap = 5000;

DenseSpectrum dense_eig(const SparseSymmetric<double>& h, std::size_t cap = kDenseCap);

/// A psi = E S psi via Cholesky of S. Throws NotPositiveDefinite if S is not.
DenseSpectrum dense_eig_generalized(const SymmetricPencil<double>& pencil, std::size_t cap = kDenseCap);

/// Taylor coefficients a_1..a_k of the eigenvector of h0 + mu * lambda * h1
/// in mu at mu = 0, normalized so the target component is 1. These are the
/// RS coefficients with lambda folded in. Central differences in long double,
/// step 1e-3, one Richardson refinement. Needs dim <= 50, k <= 4 and an
/// isolated unperturbed target level.
std::vector<std::vector<double>> taylor_probe(const Partitioning<double>& p, std::size_t k);

struct GroundState {
  double energy = 0.0;
  std::vector<double> vector;  // unit norm
  std::size_t iterations = 0;
};

/// Lowest eigenpair of a banded symmetric matrix by inverse iteration with a
/// banded Cholesky factor of H - shift I, which must be positive definite.
/// Unlike a dense solve, this stays accurate for strongly graded matrices
/// (row norms spanning many decades) such as large-coupling oscillators.
GroundState ground_state_banded(const SparseSymmetric<double>& h, double shift = 0.0);

/// Lowest eigenpair from a dense solve of every connected block of the
/// sparsity graph (for the spin chain these are the S^z sectors).
GroundState ground_state_blocks(const SparseSymmetric<double>& h, std::size_t cap = kDenseCap);

struct ZeemanCheck {
  double energy = 0.0;  // E = Delta E - 1/2 at B = 1
  double deviation = 0.0;
  bool validated = false;
};

inline constexpr double kZeemanReferenceB1 = -0.3312;
inline constexpr double kZeemanGate = 1e-3;

/// Validation gate of the Zeeman pencil construction: the dense generalized
/// ground energy at B = 1 must lie within 1e-3 of -0.3312.
ZeemanCheck zeeman_construction_check(std::size_t n = 30);

}  // namespace relaxpt
