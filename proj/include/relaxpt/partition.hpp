#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "relaxpt/errors.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

/// A split H = diag(h0_diag) + lambda * h1 around the unperturbed state
/// psi0 = e_target, whose unperturbed energy is E0 = h0_diag[target].
template <class T>
struct Partitioning {
  std::vector<T> h0_diag;
  SparseSymmetric<T> h1;
  T lambda = T(1);
  std::size_t target = 0;

  std::size_t dim() const { return h0_diag.size(); }
  const T& unperturbed_energy() const { return h0_diag[target]; }

  SparseSymmetric<T> reconstruct() const { return h1.scaled(lambda).plus_diagonal(h0_diag); }
};

/// Epstein-Nesbet split: H0 is the full diagonal of H, H1 the off-diagonal rest.
template <class T>
Partitioning<T> epstein_nesbet(const SparseSymmetric<T>& h, std::size_t target) {
  if (h.dim() < 2) throw std::invalid_argument("epstein_nesbet: dimension must be at least 2");
  if (target >= h.dim()) throw std::out_of_range("epstein_nesbet: target index out of range");
  return {h.diagonal(), h.without_diagonal(), T(1), target};
}

/// Conventional split H0 = F, H1 = g I. The diagonal of I stays in H1.
template <class T>
Partitioning<T> natural_partitioning(const std::vector<T>& f_diag, const SparseSymmetric<T>& interaction,
                                     const T& g, std::size_t target) {
  if (f_diag.size() != interaction.dim()) throw DimensionMismatch("natural_partitioning: F and I differ in size");
  if (target >= f_diag.size()) throw std::out_of_range("natural_partitioning: target index out of range");
  return {f_diag, interaction.scaled(g), T(1), target};
}

/// H = [h0 / alpha] + [lambda h1 + (1 - 1/alpha) h0]. The result carries
/// lambda = 1 with the old lambda folded into h1, so it reconstructs the same H
/// for any input lambda. alpha = 1 returns the input unchanged.
template <class T>
Partitioning<T> repartition(const Partitioning<T>& p, const T& alpha) {
  if (!(alpha > T(0)) || alpha > T(1)) throw std::invalid_argument("repartition: alpha must lie in (0, 1]");
  if (alpha == T(1)) return p;
  Partitioning<T> out;
  out.target = p.target;
  out.lambda = T(1);
  out.h0_diag.resize(p.dim());
  std::vector<T> shift(p.dim());
  const T c = T(1) - T(1) / alpha;
  for (std::size_t n = 0; n < p.dim(); ++n) {
    out.h0_diag[n] = p.h0_diag[n] / alpha;
    shift[n] = c * p.h0_diag[n];
  }
  out.h1 = p.h1.scaled(p.lambda).plus_diagonal(shift);
  return out;
}

}  // namespace relaxpt
