#pragma once

// Benchmark Hamiltonians: even anharmonic oscillators and the Herbst-Simon
// oscillator in the harmonic-oscillator basis of p^2 + x^2, the hydrogen
// Zeeman pencil in a parabolic Laguerre basis, and the random-field
// Heisenberg chain in the computational basis.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "relaxpt/pencil.hpp"
#include "relaxpt/scalar.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

namespace detail {

/// Symmetric banded matrix, band[k][i] = M(i, i + k).
template <class T>
class SymBand {
 public:
  SymBand(std::size_t n, std::size_t b) : n_(n), b_(b), band_(b + 1, std::vector<T>(n, T(0))) {}

  std::size_t size() const { return n_; }
  std::size_t bandwidth() const { return b_; }

  T get(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    return j - i > b_ ? T(0) : band_[j - i][i];
  }
  void set(std::size_t i, std::size_t j, const T& v) {
    if (i > j) std::swap(i, j);
    band_[j - i][i] = v;
  }

  /// Product of two commuting symmetric banded matrices (so the result is
  /// symmetric). Used for powers of one tridiagonal matrix.
  friend SymBand operator*(const SymBand& a, const SymBand& c) {
    const std::size_t n = a.n_;
    SymBand out(n, a.b_ + c.b_);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n && j - i <= out.b_; ++j) {
        // m runs over the overlap of row i of a and column j of c
        const std::size_t lo = std::max(i > a.b_ ? i - a.b_ : 0, j > c.b_ ? j - c.b_ : 0);
        const std::size_t hi = std::min({n - 1, i + a.b_, j + c.b_});
        T acc = T(0);
        for (std::size_t m = lo; m <= hi; ++m) acc += a.get(i, m) * c.get(m, j);
        out.band_[j - i][i] = acc;
      }
    }
    return out;
  }

  SymBand& add_scaled(const SymBand& o, const T& c) {
    if (o.b_ > b_) {
      band_.resize(o.b_ + 1, std::vector<T>(n_, T(0)));
      b_ = o.b_;
    }
    for (std::size_t k = 0; k <= o.b_; ++k) {
      for (std::size_t i = 0; i + k < n_; ++i) band_[k][i] += c * o.band_[k][i];
    }
    return *this;
  }

  /// Leading n x n block as a sparse operator.
  SparseSymmetric<T> leading_block(std::size_t n) const {
    std::vector<typename SparseSymmetric<T>::Entry> e;
    for (std::size_t k = 0; k <= b_; ++k) {
      for (std::size_t i = 0; i + k < n; ++i) {
        if (band_[k][i] != T(0)) e.push_back({i, i + k, band_[k][i]});
      }
    }
    return SparseSymmetric<T>::from_entries(n, std::move(e));
  }

 private:
  std::size_t n_;
  std::size_t b_;
  std::vector<std::vector<T>> band_;
};

/// Position operator of p^2 + x^2 on its first m eigenstates:
/// X(n, n+1) = sqrt((n + 1) / 2).
template <class T>
SymBand<T> position_matrix(std::size_t m) {
  using std::sqrt;
  SymBand<T> x(m, 1);
  for (std::size_t n = 0; n + 1 < m; ++n) x.set(n, n + 1, T(sqrt(T(n + 1) / T(2))));
  return x;
}

template <class T>
SymBand<T> power(const SymBand<T>& x, int k) {
  SymBand<T> p = x;
  for (int i = 1; i < k; ++i) p = p * x;
  return p;
}

/// Multiplication by the parabolic coordinate xi on the Laguerre functions
/// e^{-xi/2} L_k(xi): xi(k,k) = 2k + 1, xi(k,k+1) = -(k + 1).
template <class T>
SymBand<T> laguerre_coordinate(std::size_t m) {
  SymBand<T> x(m, 1);
  for (std::size_t k = 0; k < m; ++k) {
    x.set(k, k, T(2 * k + 1));
    if (k + 1 < m) x.set(k, k + 1, -T(k + 1));
  }
  return x;
}

template <class T>
SymBand<T> oscillator_diagonal(std::size_t m) {
  SymBand<T> d(m, 0);
  for (std::size_t n = 0; n < m; ++n) d.set(n, n, T(2 * n + 1));
  return d;
}

}  // namespace detail

/// H = p^2 + x^2 + g x^{2s} on the first N oscillator states (eigenvalues
/// 2n + 1). The power of X is formed on N + 2s states and then truncated, so
/// every retained entry is exact. Bandwidth 2s.
template <class T>
SparseSymmetric<T> build_anharmonic(int s, const T& g, std::size_t n) {
  if (s < 2 || s > 4) throw std::invalid_argument("build_anharmonic: s must be 2, 3 or 4");
  if (n < static_cast<std::size_t>(2 * s + 2)) throw std::invalid_argument("build_anharmonic: N too small");
  const std::size_t m = n + static_cast<std::size_t>(2 * s);
  auto h = detail::oscillator_diagonal<T>(m);
  h.add_scaled(detail::power(detail::position_matrix<T>(m), 2 * s), g);
  return h.leading_block(n);
}

/// H = p^2 + x^2 + 2g x - 2g x^3 + g^2 x^4 on the first N oscillator states.
template <class T>
SparseSymmetric<T> build_herbst_simon(const T& g, std::size_t n) {
  if (n < 8) throw std::invalid_argument("build_herbst_simon: N must be at least 8");
  const std::size_t m = n + 4;
  const auto x = detail::position_matrix<T>(m);
  const auto x3 = detail::power(x, 3);
  const auto x4 = x3 * x;
  auto h = detail::oscillator_diagonal<T>(m);
  h.add_scaled(x, T(2) * g).add_scaled(x3, T(-2) * g).add_scaled(x4, g * g);
  return h.leading_block(n);
}

/// Index of the parabolic state (n1, n2) in the shell ordering used by
/// build_zeeman_pencil: shells of constant n1 + n2, n1 ascending within a shell.
inline std::size_t zeeman_index(std::size_t n1, std::size_t n2) {
  const std::size_t shell = n1 + n2;
  return shell * (shell + 1) / 2 + n1;
}

inline constexpr double kZeemanEnergyOffset = -0.5;

/// Hydrogen in a magnetic field, m = 0, as the pencil
///   (T3 - 1 + g W) psi = dE S psi,   g = B^2 / 8,  E = -1/2 + dE.
/// The realization is so(2,1) + so(2,1) in parabolic coordinates (xi, eta):
/// T3 = K_xi + K_eta with K = -d/dxi xi d/dxi + xi/4 (spectrum k + 1/2),
/// S = r = (xi + eta)/2 and W = r rho^2 = xi eta (xi + eta)/2. The basis is
/// products of Laguerre functions with principal number n1 + n2 + 1 <= N, so
/// T3 - 1 is diag(n1 + n2) and dim = N(N + 1)/2.
template <class T>
SymmetricPencil<T> build_zeeman_pencil(const T& b, std::size_t n) {
  if (n < 10) throw std::invalid_argument("build_zeeman_pencil: N must be at least 10");
  const T g = b * b / T(8);
  const std::size_t kmax = n - 1;  // largest n1 or n2
  const std::size_t m = kmax + 3;
  const auto xi = detail::laguerre_coordinate<T>(m);
  const auto xi2 = xi * xi;
  const std::size_t dim = n * (n + 1) / 2;

  std::vector<typename SparseSymmetric<T>::Entry> ea, es;
  for (std::size_t shell = 0; shell <= kmax; ++shell) {
    for (std::size_t a = 0; a <= shell; ++a) {
      const std::size_t bb = shell - a;
      const std::size_t i = zeeman_index(a, bb);
      ea.push_back({i, i, T(shell)});
      // couplings to (c, d) with |c - a| <= 2, |d - bb| <= 2
      for (std::size_t c = a >= 2 ? a - 2 : 0; c <= a + 2; ++c) {
        for (std::size_t d = bb >= 2 ? bb - 2 : 0; d <= bb + 2; ++d) {
          if (c + d > kmax) continue;
          const std::size_t j = zeeman_index(c, d);
          if (j < i) continue;
          const T w = (xi2.get(a, c) * xi.get(bb, d) + xi.get(a, c) * xi2.get(bb, d)) / T(2);
          if (w != T(0)) ea.push_back({i, j, g * w});
          T sv = T(0);
          if (bb == d) sv += xi.get(a, c);
          if (a == c) sv += xi.get(bb, d);
          if (sv != T(0)) es.push_back({i, j, sv / T(2)});
        }
      }
    }
  }
  return {SparseSymmetric<T>::from_entries(dim, std::move(ea)), SparseSymmetric<T>::from_entries(dim, std::move(es))};
}

struct HeisenbergModel {
  SparseSymmetric<double> hamiltonian;
  std::vector<double> fields;
  /// Spin configuration (bit i set = spin i up) of each basis index.
  std::vector<std::uint64_t> states;
};

/// Random-field Heisenberg chain H = sum_i S_i . S_{i+1} + sum_i h_i S^z_i
/// with spin-1/2 operators and h_i uniform on [-h, h]. Fields come from
/// std::mt19937_64 seeded with splitmix64(seed), one 64-bit draw per site
/// mapped to [0, 1) as (x >> 11) * 2^-53; this is reproducible everywhere.
/// With sz0_sector the basis is restricted to total S^z = 0 (L even).
HeisenbergModel build_heisenberg(std::size_t l, double h, std::uint64_t seed, bool periodic, bool sz0_sector = false);

std::vector<double> heisenberg_fields(std::size_t l, double h, std::uint64_t seed);

/// sum psi^4 / (sum psi^2)^2; 1 for a basis vector, 1/d for a flat vector.
template <class T>
T ipr(std::span<const T> psi) {
  T s2 = T(0), s4 = T(0);
  for (const auto& x : psi) {
    const T x2 = x * x;
    s2 += x2;
    s4 += x2 * x2;
  }
  if (s2 == T(0)) throw std::invalid_argument("ipr: zero vector");
  return s4 / (s2 * s2);
}

// ---------------------------------------------------------------------------
// Model specifications

struct AnharmonicSpec {
  int s = 2;
  std::string g = "1";
  std::size_t n = 200;
};

struct HerbstSimonSpec {
  std::string g = "sqrt0.3";
  std::size_t n = 400;
};

struct ZeemanSpec {
  std::string b = "1";
  std::size_t n = 30;
};

struct HeisenbergSpec {
  std::size_t l = 12;
  double h = 1.0;
  std::uint64_t seed = 7;
  bool periodic = true;
  bool sz0_sector = false;
};

struct ModelSpec {
  std::variant<AnharmonicSpec, HerbstSimonSpec, ZeemanSpec, HeisenbergSpec> variant;

  std::string kind() const;
  bool is_pencil() const { return std::holds_alternative<ZeemanSpec>(variant); }
  void validate() const;

  /// Default basis size for the oscillator models given their coupling:
  /// 200 for anharmonic g <= 1, 1000 above; 400 for Herbst-Simon.
  static ModelSpec anharmonic(int s, const std::string& g);
  static ModelSpec anharmonic(int s, const std::string& g, std::size_t n);
  static ModelSpec herbst_simon(const std::string& g, std::size_t n = 400);
  static ModelSpec zeeman(const std::string& b, std::size_t n = 30);
  static ModelSpec heisenberg(std::size_t l, double h, std::uint64_t seed, bool periodic = true);

  friend bool operator==(const ModelSpec& a, const ModelSpec& b);
};

void to_json(nlohmann::json& j, const ModelSpec& m);
void from_json(const nlohmann::json& j, ModelSpec& m);

/// Sets a named parameter ("s", "g", "N", "B", "L", "h", "seed") from a
/// token. Returns false if the model has no such field.
bool set_model_parameter(ModelSpec& m, const std::string& name, const std::string& value);

/// Builds the Hamiltonian of a non-pencil model at precision T.
template <class T>
SparseSymmetric<T> build_operator(const ModelSpec& m) {
  m.validate();
  if (const auto* a = std::get_if<AnharmonicSpec>(&m.variant)) {
    return build_anharmonic<T>(a->s, evaluate_parameter<T>(a->g), a->n);
  }
  if (const auto* hs = std::get_if<HerbstSimonSpec>(&m.variant)) {
    return build_herbst_simon<T>(evaluate_parameter<T>(hs->g), hs->n);
  }
  if (const auto* hb = std::get_if<HeisenbergSpec>(&m.variant)) {
    auto model = build_heisenberg(hb->l, hb->h, hb->seed, hb->periodic, hb->sz0_sector);
    if constexpr (std::is_same_v<T, double>) {
      return std::move(model.hamiltonian);
    } else {
      return model.hamiltonian.template cast<T>();
    }
  }
  throw std::invalid_argument("build_operator: model " + m.kind() + " is a pencil");
}

template <class T>
SymmetricPencil<T> build_pencil(const ModelSpec& m) {
  m.validate();
  const auto* z = std::get_if<ZeemanSpec>(&m.variant);
  if (!z) throw std::invalid_argument("build_pencil: model " + m.kind() + " is not a pencil");
  return build_zeeman_pencil<T>(evaluate_parameter<T>(z->b), z->n);
}

/// Free part F (diagonal), interaction I and coupling g of H = F + g I, for
/// the conventional partitioning. Anharmonic: I = x^{2s}. Herbst-Simon:
/// I = 2x - 2x^3 + g x^4 so that g I is the full potential.
template <class T>
struct ModelSplit {
  std::vector<T> f_diag;
  SparseSymmetric<T> interaction;
  T g;
};

template <class T>
ModelSplit<T> build_split(const ModelSpec& m) {
  m.validate();
  if (const auto* a = std::get_if<AnharmonicSpec>(&m.variant)) {
    const std::size_t mm = a->n + static_cast<std::size_t>(2 * a->s);
    const auto x = detail::power(detail::position_matrix<T>(mm), 2 * a->s);
    std::vector<T> f(a->n);
    for (std::size_t i = 0; i < a->n; ++i) f[i] = T(2 * i + 1);
    return {std::move(f), x.leading_block(a->n), evaluate_parameter<T>(a->g)};
  }
  if (const auto* hs = std::get_if<HerbstSimonSpec>(&m.variant)) {
    const T g = evaluate_parameter<T>(hs->g);
    const std::size_t mm = hs->n + 4;
    const auto x = detail::position_matrix<T>(mm);
    const auto x3 = detail::power(x, 3);
    detail::SymBand<T> v(mm, 1);
    v.add_scaled(x, T(2)).add_scaled(x3, T(-2)).add_scaled(x3 * x, g);
    std::vector<T> f(hs->n);
    for (std::size_t i = 0; i < hs->n; ++i) f[i] = T(2 * i + 1);
    return {std::move(f), v.leading_block(hs->n), g};
  }
  throw std::invalid_argument("natural partitioning is only defined for the oscillator models");
}

}  // namespace relaxpt
