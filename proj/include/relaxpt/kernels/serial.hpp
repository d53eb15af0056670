#pragma once

// Serial reference kernels. The OpenMP kernels in parallel.hpp must agree with
// these: bitwise for the row-local operations (spmv, combine, map images) and to
// rounding for the reductions, whose summation order differs.

#include <cstddef>
#include <span>

namespace relaxpt::kernels::serial {

template <class T>
void spmv(std::span<const std::size_t> row_ptr, std::span<const std::size_t> col,
          std::span<const T> val, std::span<const T> x, std::span<T> y) {
  const std::size_t n = row_ptr.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    T acc = T(0);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += val[p] * x[col[p]];
    y[i] = acc;
  }
}

template <class T>
T dot(std::span<const T> x, std::span<const T> y) {
  T acc = T(0);
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

template <class T>
T sum_squares(std::span<const T> x) {
  return dot(x, x);
}

// psi <- alpha * image + (1 - alpha) * psi
template <class T>
void relax_combine(const T& alpha, std::span<const T> image, std::span<T> psi) {
  const T keep = T(1) - alpha;
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = alpha * image[i] + keep * psi[i];
}

// One application of the IPT map given u = H1 psi. Writes the image and
// returns the squared norm of H psi - E psi with E = e0 + lambda * u[target].
template <class T>
T ipt_image(std::span<const T> h0, const T& e0, const T& lambda, std::size_t target,
            std::span<const T> psi, std::span<const T> u, std::span<T> image) {
  const T c = u[target];
  const T energy = e0 + lambda * c;
  T ss = T(0);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const T r = (h0[n] * psi[n] + lambda * u[n]) - energy * psi[n];
    ss += r * r;
    image[n] = n == target ? T(1) : lambda * ((u[n] - c * psi[n]) / (e0 - h0[n]));
  }
  return ss;
}

// Pencil analogue of ipt_image with u = A_off psi and v = S_off psi. Returns
// the squared residual norm of A psi - E S psi; `shift` receives E - e0.
template <class T>
T generalized_image(std::span<const T> a_diag, std::span<const T> s_diag, const T& e0,
                    std::size_t target, std::span<const T> psi, std::span<const T> u,
                    std::span<const T> v, std::span<T> image, T& shift) {
  const std::size_t t = target;
  const T s_t = s_diag[t] * psi[t] + v[t];
  shift = ((a_diag[t] - e0 * s_diag[t]) + (u[t] - e0 * v[t])) / s_t;
  const T energy = e0 + shift;
  T ss = T(0);
  for (std::size_t n = 0; n < psi.size(); ++n) {
    const T sp = s_diag[n] * psi[n] + v[n];
    const T r = (a_diag[n] * psi[n] + u[n]) - energy * sp;
    ss += r * r;
    image[n] = n == t ? T(1) : (shift * sp - (u[n] - e0 * v[n])) / (a_diag[n] - e0 * s_diag[n]);
  }
  return ss;
}

}  // namespace relaxpt::kernels::serial
