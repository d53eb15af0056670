#pragma once

// OpenMP kernels. Row-local work is split across threads with a static
// schedule. Reductions go through fixed-size blocks that are summed
// sequentially, so results do not depend on the thread count.

#include <cstddef>
#include <span>
#include <vector>

namespace relaxpt::kernels::omp {

inline constexpr std::size_t kBlock = 2048;
inline constexpr std::ptrdiff_t kParallelRows = 4096;

template <class T, class Body>
T blocked_reduce(std::size_t n, Body&& body) {
  const std::ptrdiff_t nb = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
  if (nb <= 1) return body(std::size_t{0}, n);
  std::vector<T> partial(static_cast<std::size_t>(nb));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t b = 0; b < nb; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = lo + kBlock < n ? lo + kBlock : n;
    partial[static_cast<std::size_t>(b)] = body(lo, hi);
  }
  T acc = T(0);
  for (const T& p : partial) acc += p;
  return acc;
}

template <class T>
void spmv(std::span<const std::size_t> row_ptr, std::span<const std::size_t> col,
          std::span<const T> val, std::span<const T> x, std::span<T> y) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(row_ptr.size()) - 1;
#pragma omp parallel for schedule(static) if (n > kParallelRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    T acc = T(0);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) acc += val[p] * x[col[p]];
    y[i] = acc;
  }
}

template <class T>
T dot(std::span<const T> x, std::span<const T> y) {
  return blocked_reduce<T>(x.size(), [&](std::size_t lo, std::size_t hi) {
    T acc = T(0);
    for (std::size_t i = lo; i < hi; ++i) acc += x[i] * y[i];
    return acc;
  });
}

template <class T>
T sum_squares(std::span<const T> x) {
  return dot(x, x);
}

template <class T>
void relax_combine(const T& alpha, std::span<const T> image, std::span<T> psi) {
  const T keep = T(1) - alpha;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(psi.size());
#pragma omp parallel for schedule(static) if (n > kParallelRows)
  for (std::ptrdiff_t i = 0; i < n; ++i) psi[i] = alpha * image[i] + keep * psi[i];
}

template <class T>
T ipt_image(std::span<const T> h0, const T& e0, const T& lambda, std::size_t target,
            std::span<const T> psi, std::span<const T> u, std::span<T> image) {
  const T c = u[target];
  const T energy = e0 + lambda * c;
  return blocked_reduce<T>(psi.size(), [&](std::size_t lo, std::size_t hi) {
    T ss = T(0);
    for (std::size_t n = lo; n < hi; ++n) {
      const T r = (h0[n] * psi[n] + lambda * u[n]) - energy * psi[n];
      ss += r * r;
      image[n] = n == target ? T(1) : lambda * ((u[n] - c * psi[n]) / (e0 - h0[n]));
    }
    return ss;
  });
}

template <class T>
T generalized_image(std::span<const T> a_diag, std::span<const T> s_diag, const T& e0,
                    std::size_t target, std::span<const T> psi, std::span<const T> u,
                    std::span<const T> v, std::span<T> image, T& shift) {
  const std::size_t t = target;
  const T s_t = s_diag[t] * psi[t] + v[t];
  shift = ((a_diag[t] - e0 * s_diag[t]) + (u[t] - e0 * v[t])) / s_t;
  const T energy = e0 + shift;
  const T sh = shift;
  return blocked_reduce<T>(psi.size(), [&](std::size_t lo, std::size_t hi) {
    T ss = T(0);
    for (std::size_t n = lo; n < hi; ++n) {
      const T sp = s_diag[n] * psi[n] + v[n];
      const T r = (a_diag[n] * psi[n] + u[n]) - energy * sp;
      ss += r * r;
      image[n] = n == t ? T(1) : (sh * sp - (u[n] - e0 * v[n])) / (a_diag[n] - e0 * s_diag[n]);
    }
    return ss;
  });
}

}  // namespace relaxpt::kernels::omp
