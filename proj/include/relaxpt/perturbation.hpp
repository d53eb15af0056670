#pragma once

// Perturbation-theory building blocks on a Partitioning: the reduced
// resolvent, the IPT map, energies and residuals, the RS recursion and the
// Banach-regime radius diagnostic.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "relaxpt/errors.hpp"
#include "relaxpt/kernels.hpp"
#include "relaxpt/partition.hpp"
#include "relaxpt/scalar.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

template <class T>
T degeneracy_threshold(const T& e0) {
  using std::abs;
  return T(1e-12) * std::max(T(1), T(abs(e0)));
}

/// Throws DegenerateDiagonal if some h0_diag[n], n != target, lies within the
/// degeneracy threshold of E0.
template <class T>
void check_isolated(const Partitioning<T>& p) {
  using std::abs;
  const T& e0 = p.unperturbed_energy();
  const T tau = degeneracy_threshold(e0);
  for (std::size_t n = 0; n < p.dim(); ++n) {
    if (n == p.target) continue;
    const T gap = abs(e0 - p.h0_diag[n]);
    if (gap < tau) throw DegenerateDiagonal(n, to_double(gap));
  }
}

/// R0(E0) v: zero at the target, v[n] / (E0 - h0[n]) elsewhere.
template <class T>
std::vector<T> reduced_resolvent_apply(const Partitioning<T>& p, std::span<const T> v) {
  if (v.size() != p.dim()) throw DimensionMismatch("reduced_resolvent_apply: vector length");
  check_isolated(p);
  const T& e0 = p.unperturbed_energy();
  std::vector<T> w(p.dim());
  for (std::size_t n = 0; n < p.dim(); ++n) w[n] = n == p.target ? T(0) : v[n] / (e0 - p.h0_diag[n]);
  return w;
}

template <class T>
struct MapEvaluation {
  T energy;
  T residual;
};

/// The IPT map Q(psi) = psi0 + lambda R0 (H1 psi - <psi0|H1 psi> psi), with the
/// energy E = <psi0|H psi> and residual |H psi - E psi| of the input obtained
/// from the same H1 product.
template <class T>
class IptMap {
 public:
  explicit IptMap(const Partitioning<T>& p) : p_(&p), u_(p.dim()) { check_isolated(p); }

  std::size_t dim() const { return p_->dim(); }
  std::size_t target() const { return p_->target; }

  MapEvaluation<T> evaluate(std::span<const T> psi, std::span<T> image) {
    using std::sqrt;
    p_->h1.multiply(psi, u_);
    const T& e0 = p_->unperturbed_energy();
    const T ss = kernels::active::ipt_image<T>(p_->h0_diag, e0, p_->lambda, p_->target, psi, u_, image);
    return {e0 + p_->lambda * u_[p_->target], T(sqrt(ss))};
  }

 private:
  const Partitioning<T>* p_;
  std::vector<T> u_;
};

template <class T>
void check_normalized(const Partitioning<T>& p, std::span<const T> psi, const char* who) {
  if (psi.size() != p.dim()) throw DimensionMismatch(std::string(who) + ": vector length");
  if (psi[p.target] != T(1)) throw std::invalid_argument(std::string(who) + ": psi[target] must be 1");
}

template <class T>
std::vector<T> q_ipt(const Partitioning<T>& p, std::span<const T> psi) {
  check_normalized(p, psi, "q_ipt");
  IptMap<T> map(p);
  std::vector<T> image(p.dim());
  map.evaluate(psi, image);
  return image;
}

/// E = <psi0|H psi> = h0[target] + lambda (H1 psi)[target].
template <class T>
T energy(const Partitioning<T>& p, std::span<const T> psi) {
  check_normalized(p, psi, "energy");
  const auto rp = p.h1.row_ptr();
  const auto col = p.h1.col_index();
  const auto val = p.h1.values();
  T acc = T(0);
  for (std::size_t q = rp[p.target]; q < rp[p.target + 1]; ++q) acc += val[q] * psi[col[q]];
  return p.unperturbed_energy() + p.lambda * acc;
}

/// |H psi - <psi0|H psi> psi| for psi with psi[target] = 1.
template <class T>
T residual_norm(const SparseSymmetric<T>& h, std::span<const T> psi, std::size_t target) {
  using std::sqrt;
  if (psi.size() != h.dim()) throw DimensionMismatch("residual_norm: vector length");
  std::vector<T> hpsi(h.dim());
  h.multiply(psi, hpsi);
  const T e = hpsi[target];
  for (std::size_t n = 0; n < hpsi.size(); ++n) hpsi[n] -= e * psi[n];
  return T(sqrt(kernels::active::sum_squares<T>(hpsi)));
}

/// Next RS coefficient from a0..al:
///   a_{l+1} = lambda R0 [H1 a_l - sum_{s=0}^{l} <psi0|H1 a_s> a_{l-s}].
/// lambda is folded into the coefficients, so partial sums are plain sums.
template <class T>
std::vector<T> rs_step(const Partitioning<T>& p, const std::vector<std::vector<T>>& coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("rs_step: need at least a0");
  const std::size_t n = p.dim();
  const std::size_t l = coeffs.size() - 1;
  std::vector<std::vector<T>> h1a(l + 1, std::vector<T>(n));
  for (std::size_t s = 0; s <= l; ++s) {
    if (coeffs[s].size() != n) throw DimensionMismatch("rs_step: coefficient length");
    p.h1.multiply(coeffs[s], h1a[s]);
  }
  std::vector<T> v = h1a[l];
  for (std::size_t s = 0; s <= l; ++s) {
    const T c = h1a[s][p.target];
    const auto& a = coeffs[l - s];
    for (std::size_t i = 0; i < n; ++i) v[i] -= c * a[i];
  }
  auto w = reduced_resolvent_apply<T>(p, v);
  for (auto& x : w) x *= p.lambda;
  return w;
}

/// Incremental RS series that caches H1 a_s, so extending to order k costs k
/// products instead of k^2.
template <class T>
class RsSeries {
 public:
  explicit RsSeries(const Partitioning<T>& p) : p_(&p) {
    check_isolated(p);
    std::vector<T> a0(p.dim(), T(0));
    a0[p.target] = T(1);
    push(std::move(a0));
  }

  std::size_t order() const { return coeffs_.size() - 1; }
  const std::vector<std::vector<T>>& coefficients() const { return coeffs_; }

  const std::vector<T>& extend() {
    const std::size_t n = p_->dim();
    const std::size_t l = order();
    const T& e0 = p_->unperturbed_energy();
    std::vector<T> v = h1a_[l];
    for (std::size_t s = 0; s <= l; ++s) {
      const T c = h1a_[s][p_->target];
      const auto& a = coeffs_[l - s];
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * a[i];
    }
    for (std::size_t i = 0; i < n; ++i) v[i] = i == p_->target ? T(0) : p_->lambda * (v[i] / (e0 - p_->h0_diag[i]));
    push(std::move(v));
    return coeffs_.back();
  }

  /// psi_RS^(k) = a_0 + ... + a_k
  std::vector<T> partial_sum(std::size_t k) const {
    std::vector<T> s(p_->dim(), T(0));
    for (std::size_t l = 0; l <= k && l < coeffs_.size(); ++l) {
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += coeffs_[l][i];
    }
    return s;
  }

 private:
  void push(std::vector<T> a) {
    std::vector<T> h(p_->dim());
    p_->h1.multiply(a, h);
    coeffs_.push_back(std::move(a));
    h1a_.push_back(std::move(h));
  }

  const Partitioning<T>* p_;
  std::vector<std::vector<T>> coeffs_;
  std::vector<std::vector<T>> h1a_;
};

enum class BoundForm {
  gap_over_norm,   // (3 - 2 sqrt 2) * delta / |H1|
  inverse_product  // (3 - 2 sqrt 2) / (|H1| * delta)
};

enum class NormEstimate { power_iteration, gershgorin };

struct RadiusBound {
  double value = std::numeric_limits<double>::infinity();
  double h1_norm = 0.0;
  double gap = 0.0;
  NormEstimate method = NormEstimate::power_iteration;
  BoundForm form = BoundForm::gap_over_norm;
};

/// Sufficient lambda-radius for convergence of unrelaxed IPT when H1 is
/// bounded. |H1| comes from 30 power-iteration steps up to dimension 2000 and
/// from the Gershgorin row-sum bound above that. An H1 of zero gives +inf.
template <class T>
RadiusBound convergence_radius_bound(const Partitioning<T>& p, BoundForm form = BoundForm::gap_over_norm) {
  RadiusBound b;
  b.form = form;
  const std::size_t n = p.dim();
  const double e0 = to_double(p.unperturbed_energy());
  b.gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    if (i != p.target) b.gap = std::min(b.gap, std::abs(e0 - to_double(p.h0_diag[i])));
  }
  const auto h1 = p.h1.template cast<double>();
  if (h1.nnz() == 0) return b;

  if (n <= 2000) {
    b.method = NormEstimate::power_iteration;
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);
    double est = 0.0;
    for (int it = 0; it < 30; ++it) {
      const double nx = std::sqrt(kernels::active::sum_squares<double>(x));
      for (auto& v : x) v /= nx;
      h1.multiply(x, y);
      est = std::sqrt(kernels::active::sum_squares<double>(y));
      if (est == 0.0) break;
      std::swap(x, y);
    }
    b.h1_norm = est;
  } else {
    b.method = NormEstimate::gershgorin;
    const auto rp = h1.row_ptr();
    const auto val = h1.values();
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t q = rp[i]; q < rp[i + 1]; ++q) s += std::abs(val[q]);
      b.h1_norm = std::max(b.h1_norm, s);
    }
  }
  if (b.h1_norm == 0.0) return b;
  const double c = 3.0 - 2.0 * std::sqrt(2.0);
  b.value = form == BoundForm::gap_over_norm ? c * b.gap / b.h1_norm : c / (b.h1_norm * b.gap);
  return b;
}

}  // namespace relaxpt
