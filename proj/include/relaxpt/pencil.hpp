#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "relaxpt/errors.hpp"
#include "relaxpt/kernels.hpp"
#include "relaxpt/perturbation.hpp"
#include "relaxpt/solver.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

/// Symmetric pencil (A, S) for A psi = E S psi.
template <class T>
struct SymmetricPencil {
  SparseSymmetric<T> a;
  SparseSymmetric<T> s;

  std::size_t dim() const { return a.dim(); }

  void validate() const {
    if (a.dim() != s.dim()) throw DimensionMismatch("pencil: A and S differ in dimension");
    for (std::size_t i = 0; i < s.dim(); ++i) {
      if (s.diagonal()[i] == T(0)) throw Error("pencil: S has a zero diagonal entry at " + std::to_string(i));
    }
  }
};

/// Generalized IPT map for a pencil, shifted about E0 = A[t,t] / S[t,t].
///
/// With d[n] = A[n,n] - E0 S[n,n], u = A_off psi and v = S_off psi, the map is
///   shift      = ((A - E0 S) psi)[t] / (S psi)[t],     E = E0 + shift,
///   Q(psi)[n]  = (shift (S psi)[n] - (u[n] - E0 v[n])) / d[n]   (n != t),
///   Q(psi)[t]  = 1.
/// A fixed point solves A psi = E S psi. For S = I it performs the same
/// floating-point operations as the EN IptMap on A.
template <class T>
class GeneralizedIptMap {
 public:
  GeneralizedIptMap(const SymmetricPencil<T>& pencil, std::size_t target)
      : a_off_(pencil.a.without_diagonal()),
        s_off_(pencil.s.without_diagonal()),
        a_diag_(pencil.a.diagonal()),
        s_diag_(pencil.s.diagonal()),
        target_(target),
        u_(pencil.dim()),
        v_(pencil.dim()) {
    using std::abs;
    pencil.validate();
    if (target >= pencil.dim()) throw std::out_of_range("generalized map: target out of range");
    e0_ = a_diag_[target] / s_diag_[target];
    const T tau = degeneracy_threshold(e0_);
    for (std::size_t n = 0; n < dim(); ++n) {
      if (n == target) continue;
      const T d = a_diag_[n] - e0_ * s_diag_[n];
      if (abs(d) < tau) throw DegenerateDiagonal(n, to_double(abs(d)));
    }
  }

  std::size_t dim() const { return a_diag_.size(); }
  std::size_t target() const { return target_; }
  const T& unperturbed_energy() const { return e0_; }

  MapEvaluation<T> evaluate(std::span<const T> psi, std::span<T> image) {
    using std::sqrt;
    a_off_.multiply(psi, u_);
    s_off_.multiply(psi, v_);
    T shift;
    const T ss = kernels::active::generalized_image<T>(a_diag_, s_diag_, e0_, target_, psi, u_, v_, image, shift);
    return {e0_ + shift, T(sqrt(ss))};
  }

 private:
  SparseSymmetric<T> a_off_;
  SparseSymmetric<T> s_off_;
  std::vector<T> a_diag_;
  std::vector<T> s_diag_;
  std::size_t target_;
  T e0_;
  std::vector<T> u_;
  std::vector<T> v_;
};

/// One application of the generalized map; returns (Q(psi), E) where E is the
/// energy attached to the input psi.
template <class T>
std::pair<std::vector<T>, T> q_ipt_generalized(const SymmetricPencil<T>& pencil, std::size_t target,
                                               std::span<const T> psi) {
  if (psi.size() != pencil.dim()) throw DimensionMismatch("q_ipt_generalized: vector length");
  if (psi[target] != T(1)) throw std::invalid_argument("q_ipt_generalized: psi[target] must be 1");
  GeneralizedIptMap<T> map(pencil, target);
  std::vector<T> image(pencil.dim());
  const auto ev = map.evaluate(psi, image);
  return {std::move(image), ev.energy};
}

/// |A psi - E S psi|
template <class T>
T generalized_residual(const SymmetricPencil<T>& pencil, std::span<const T> psi, const T& e) {
  using std::sqrt;
  if (psi.size() != pencil.dim()) throw DimensionMismatch("generalized_residual: vector length");
  std::vector<T> ap(psi.size()), sp(psi.size());
  pencil.a.multiply(psi, ap);
  pencil.s.multiply(psi, sp);
  for (std::size_t i = 0; i < ap.size(); ++i) ap[i] -= e * sp[i];
  return T(sqrt(kernels::active::sum_squares<T>(ap)));
}

template <class T>
SolveResult<T> solve_pencil(const SymmetricPencil<T>& pencil, std::size_t target, const SolverConfig& cfg,
                            ConvergenceTrace* trace = nullptr) {
  if (cfg.mode == Mode::rs) throw ConfigError("RS mode is not available for pencils");
  GeneralizedIptMap<T> map(pencil, target);
  return iterate_fixed_point<T>(map, cfg, trace);
}

}  // namespace relaxpt
