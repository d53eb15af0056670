#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <vector>

#include "relaxpt/kernels.hpp"
#include "relaxpt/scalar.hpp"

namespace relaxpt {

/// Sliding window of the most recent M+1 triples (psi, Q(psi), Q(psi) - psi).
/// Entry 0 is the newest.
template <class T>
class AndersonWindow {
 public:
  struct Entry {
    std::vector<T> psi;
    std::vector<T> image;
    std::vector<T> residual;
  };

  explicit AndersonWindow(std::size_t memory) : memory_(memory) {}

  std::size_t memory() const { return memory_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t m) const { return entries_[m]; }

  void push(std::vector<T> psi, std::vector<T> image) {
    if (psi.size() != image.size()) throw std::invalid_argument("AndersonWindow: size mismatch");
    std::vector<T> r(psi.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = image[i] - psi[i];
    entries_.push_front({std::move(psi), std::move(image), std::move(r)});
    while (entries_.size() > memory_ + 1) entries_.pop_back();
  }

  void clear() { entries_.clear(); }

 private:
  std::size_t memory_;
  std::deque<Entry> entries_;
};

template <class T>
struct AndersonStep {
  std::vector<T> psi_next;
  std::vector<T> beta;
  bool fallback = false;
  bool negative = false;
};

inline constexpr double kAndersonDamping = 1e-12;

/// Residual-minimizing affine combination of the stored Q-images.
///
/// beta minimizes |sum_m beta_m r_m| subject to sum_m beta_m = 1. Writing
/// beta_0 = 1 - sum gamma_j and beta_j = gamma_j, gamma solves the damped
/// normal equations (D^T D + mu I) gamma = -D^T r_0 with D_j = r_j - r_0 and
/// mu = 1e-12 * max diag(D^T D). A singular or non-finite system falls back
/// to the plain step beta = (1, 0, ...). Positivity of beta is not enforced;
/// `negative` reports whether any coefficient came out below zero.
template <class T>
AndersonStep<T> anderson_step(const AndersonWindow<T>& window, std::size_t target) {
  if (window.empty()) throw std::invalid_argument("anderson_step: empty window");
  const std::size_t m = window.size() - 1;
  const std::size_t n = window[0].image.size();
  AndersonStep<T> step;
  auto plain = [&] {
    step.beta.assign(m + 1, T(0));
    step.beta[0] = T(1);
    step.psi_next = window[0].image;
    step.psi_next[target] = T(1);
    return step;
  };
  if (m == 0) return plain();

  std::vector<std::vector<T>> d(m, std::vector<T>(n));
  const auto& r0 = window[0].residual;
  for (std::size_t j = 0; j < m; ++j) {
    const auto& rj = window[j + 1].residual;
    for (std::size_t i = 0; i < n; ++i) d[j][i] = rj[i] - r0[i];
  }
  std::vector<T> g(m * m), rhs(m);
  T max_diag = T(0);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      g[a * m + b] = g[b * m + a] = kernels::active::dot<T>(d[a], d[b]);
    }
    rhs[a] = -kernels::active::dot<T>(d[a], r0);
    max_diag = std::max(max_diag, g[a * m + a]);
  }
  if (!(max_diag > T(0)) || !is_finite(max_diag)) {
    step = plain();
    step.fallback = true;
    return step;
  }
  const T mu = T(kAndersonDamping) * max_diag;
  for (std::size_t a = 0; a < m; ++a) g[a * m + a] += mu;

  // Cholesky of the damped Gram matrix, in place (lower triangle).
  using std::sqrt;
  for (std::size_t j = 0; j < m; ++j) {
    T s = g[j * m + j];
    for (std::size_t k = 0; k < j; ++k) s -= g[j * m + k] * g[j * m + k];
    if (!(s > T(0)) || !is_finite(s)) {
      step = plain();
      step.fallback = true;
      return step;
    }
    g[j * m + j] = sqrt(s);
    for (std::size_t i = j + 1; i < m; ++i) {
      T t = g[i * m + j];
      for (std::size_t k = 0; k < j; ++k) t -= g[i * m + k] * g[j * m + k];
      g[i * m + j] = t / g[j * m + j];
    }
  }
  std::vector<T> gamma = rhs;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < i; ++k) gamma[i] -= g[i * m + k] * gamma[k];
    gamma[i] /= g[i * m + i];
  }
  for (std::size_t ii = m; ii-- > 0;) {
    for (std::size_t k = ii + 1; k < m; ++k) gamma[ii] -= g[k * m + ii] * gamma[k];
    gamma[ii] /= g[ii * m + ii];
  }

  step.beta.assign(m + 1, T(0));
  T sum = T(0);
  for (std::size_t j = 0; j < m; ++j) {
    if (!is_finite(gamma[j])) {
      step = plain();
      step.fallback = true;
      return step;
    }
    step.beta[j + 1] = gamma[j];
    sum += gamma[j];
  }
  step.beta[0] = T(1) - sum;

  step.psi_next.assign(n, T(0));
  for (std::size_t j = 0; j <= m; ++j) {
    const T bj = step.beta[j];
    if (bj < T(0)) step.negative = true;
    const auto& img = window[j].image;
    for (std::size_t i = 0; i < n; ++i) step.psi_next[i] += bj * img[i];
  }
  step.psi_next[target] = T(1);
  return step;
}

}  // namespace relaxpt
