#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "relaxpt/anderson.hpp"
#include "relaxpt/errors.hpp"
#include "relaxpt/kernels.hpp"
#include "relaxpt/partition.hpp"
#include "relaxpt/perturbation.hpp"
#include "relaxpt/scalar.hpp"

namespace relaxpt {

enum class Mode { ipt, rs };
enum class Acceleration { none, anderson };
enum class Precision { double_precision, extended };
enum class Status { converged, max_iterations, diverged };

std::string to_string(Mode m);
std::string to_string(Acceleration a);
std::string to_string(Precision p);
std::string to_string(Status s);

struct SolverConfig {
  double alpha = 0.5;
  double tol = 1e-10;
  std::size_t max_iter = 1000;
  Mode mode = Mode::ipt;
  Acceleration acceleration = Acceleration::none;
  std::size_t memory = 10;
  Precision precision = Precision::double_precision;

  /// Throws ConfigError on alpha outside (0, 1], tol <= 0, max_iter == 0, or
  /// Anderson requested together with RS mode.
  void validate() const;
};

inline constexpr double kDivergenceNorm = 1e12;

template <class T>
struct IterationState {
  std::vector<T> psi;
  std::size_t k = 0;
  T energy = T(0);
  T residual = T(0);
};

template <class T>
struct SolveResult {
  IterationState<T> state;
  Status status = Status::max_iterations;
  std::size_t anderson_fallbacks = 0;
  std::size_t negative_beta_steps = 0;
};

struct TraceRecord {
  std::size_t k = 0;
  double energy = 0.0;
  double residual = 0.0;
  double elapsed_s = 0.0;
  std::vector<double> beta;
};

/// Per-iteration record stream.
class ConvergenceTrace {
 public:
  void append(TraceRecord r) { records_.push_back(std::move(r)); }
  const std::vector<TraceRecord>& records() const { return records_; }
  std::vector<TraceRecord>& records() { return records_; }
  bool empty() const { return records_.empty(); }
  std::size_t size() const { return records_.size(); }
  void clear() { records_.clear(); }

 private:
  std::vector<TraceRecord> records_;
};

namespace detail {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

template <class T>
std::vector<T> basis_vector(std::size_t n, std::size_t target) {
  std::vector<T> e(n, T(0));
  e[target] = T(1);
  return e;
}

}  // namespace detail

/// Drives any fixed-point map with the interface of IptMap: plain relaxation
/// psi <- alpha Q(psi) + (1 - alpha) psi, or Anderson mixing of Q-images.
///
/// Iteration k (1-based) applies the map to psi^(k-1); the energy and residual
/// it reports belong to psi^(k-1), so the energy of iteration k is
/// E^(k) = <psi0|H psi^(k-1)>. On return, state holds psi^(k-1) together with
/// that energy and residual.
template <class T, class Map>
SolveResult<T> iterate_fixed_point(Map& map, const SolverConfig& cfg, ConvergenceTrace* trace) {
  cfg.validate();
  using std::sqrt;
  const std::size_t n = map.dim();
  const std::size_t t = map.target();
  const T alpha = T(cfg.alpha);
  const bool anderson = cfg.acceleration == Acceleration::anderson;

  SolveResult<T> out;
  std::vector<T> psi = detail::basis_vector<T>(n, t);
  std::vector<T> image(n);
  std::optional<AndersonWindow<T>> window;
  if (anderson) window.emplace(cfg.memory);
  detail::Stopwatch clock;

  for (std::size_t k = 1;; ++k) {
    const auto ev = map.evaluate(psi, image);
    if (trace) trace->append({k, to_double(ev.energy), to_double(ev.residual), clock.seconds(), {}});

    const T norm = sqrt(kernels::active::sum_squares<T>(psi));
    const bool finite = is_finite(ev.energy) && is_finite(ev.residual) && is_finite(norm);
    Status status;
    bool stop = true;
    if (!finite || norm > T(kDivergenceNorm)) {
      status = Status::diverged;
    } else if (ev.residual < T(cfg.tol)) {
      status = Status::converged;
    } else if (k >= cfg.max_iter) {
      status = Status::max_iterations;
    } else {
      status = Status::max_iterations;
      stop = false;
    }
    if (stop) {
      out.status = status;
      out.state = {std::move(psi), k, ev.energy, ev.residual};
      return out;
    }

    if (anderson) {
      window->push(psi, image);
      auto step = anderson_step(*window, t);
      out.anderson_fallbacks += step.fallback ? 1 : 0;
      out.negative_beta_steps += step.negative ? 1 : 0;
      if (trace) {
        auto& rec = trace->records().back();
        for (const auto& b : step.beta) rec.beta.push_back(to_double(b));
      }
      psi = std::move(step.psi_next);
    } else if (alpha == T(1)) {
      std::swap(psi, image);
    } else {
      kernels::active::relax_combine<T>(alpha, image, psi);
      psi[t] = T(1);
    }
  }
}

/// Relaxed RS iteration on the coefficient tuple X = (x_0, x_1, ...):
/// Q(X)_0 = psi0 and Q(X)_{l+1} = lambda R0 [H1 x_l - sum_{s<=l} <psi0|H1 x_s> x_{l-s}],
/// X <- alpha Q(X) + (1 - alpha) X with the tuple growing by one slot per
/// step. The iterate is psi = sum_l x_l. Each step costs one H1 product per
/// stored coefficient, so this mode is meant for modest iteration counts.
template <class T>
SolveResult<T> relax_iterate_rs(const Partitioning<T>& p, const SolverConfig& cfg, ConvergenceTrace* trace) {
  cfg.validate();
  const std::size_t n = p.dim();
  const std::size_t t = p.target;
  const T alpha = T(cfg.alpha);
  const T keep = T(1) - alpha;
  const T& e0 = p.unperturbed_energy();
  IptMap<T> map(p);

  SolveResult<T> out;
  std::vector<std::vector<T>> x{detail::basis_vector<T>(n, t)};
  std::vector<T> psi(n), scratch(n);
  detail::Stopwatch clock;
  using std::sqrt;

  for (std::size_t k = 1;; ++k) {
    std::fill(psi.begin(), psi.end(), T(0));
    for (const auto& xl : x) {
      for (std::size_t i = 0; i < n; ++i) psi[i] += xl[i];
    }
    const auto ev = map.evaluate(psi, scratch);
    if (trace) trace->append({k, to_double(ev.energy), to_double(ev.residual), clock.seconds(), {}});
    const T norm = sqrt(kernels::active::sum_squares<T>(psi));
    const bool finite = is_finite(ev.energy) && is_finite(ev.residual) && is_finite(norm);
    bool stop = true;
    if (!finite || norm > T(kDivergenceNorm)) {
      out.status = Status::diverged;
    } else if (ev.residual < T(cfg.tol)) {
      out.status = Status::converged;
    } else if (k >= cfg.max_iter) {
      out.status = Status::max_iterations;
    } else {
      stop = false;
    }
    if (stop) {
      out.state = {psi, k, ev.energy, ev.residual};
      return out;
    }

    const std::size_t len = x.size();
    std::vector<std::vector<T>> h1x(len, std::vector<T>(n));
    for (std::size_t l = 0; l < len; ++l) p.h1.multiply(x[l], h1x[l]);
    std::vector<std::vector<T>> next(len + 1, std::vector<T>(n, T(0)));
    next[0] = detail::basis_vector<T>(n, t);
    for (std::size_t l = 0; l < len; ++l) {
      std::vector<T> v = h1x[l];
      for (std::size_t s = 0; s <= l; ++s) {
        const T c = h1x[s][t];
        const auto& a = x[l - s];
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * a[i];
      }
      auto& q = next[l + 1];
      for (std::size_t i = 0; i < n; ++i) {
        const T qi = i == t ? T(0) : p.lambda * (v[i] / (e0 - p.h0_diag[i]));
        const T xi = l + 1 < len ? x[l + 1][i] : T(0);
        q[i] = alpha == T(1) ? qi : alpha * qi + keep * xi;
      }
    }
    x = std::move(next);
  }
}

/// Relaxed IPT (mode ipt, optionally Anderson-accelerated) or relaxed RS
/// (mode rs) on a partitioning. Non-convergence is reported through the
/// status, never thrown; DegenerateDiagonal is thrown before iterating.
template <class T>
SolveResult<T> relax_iterate(const Partitioning<T>& p, const SolverConfig& cfg, ConvergenceTrace* trace = nullptr) {
  if (cfg.mode == Mode::rs) return relax_iterate_rs(p, cfg, trace);
  IptMap<T> map(p);
  return iterate_fixed_point<T>(map, cfg, trace);
}

}  // namespace relaxpt
