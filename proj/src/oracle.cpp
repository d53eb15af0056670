#include "relaxpt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>

#include "relaxpt/errors.hpp"
#include "relaxpt/models.hpp"
#include "relaxpt/perturbation.hpp"

namespace relaxpt {

namespace {

void check_cap(std::size_t dim, std::size_t cap) {
  if (dim > cap) {
    throw CapExceeded("dense oracle: dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap));
  }
}

Eigen::MatrixXd dense(const SparseSymmetric<double>& h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  const auto& rp = h.row_ptr();
  const auto& ci = h.col_index();
  const auto& v = h.values();
  for (std::size_t i = 0; i < h.dim(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(ci[p])) = v[p];
  }
  return m;
}

using MatL = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using VecL = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

// Eigenvector of h0 + mu h1 continuing the target basis state, scaled to
// unit target component.
VecL continued_vector(const MatL& h0, const MatL& h1, long double mu, Eigen::Index target) {
  Eigen::SelfAdjointEigenSolver<MatL> es(h0 + mu * h1);
  Eigen::Index best = 0;
  long double best_overlap = -1;
  for (Eigen::Index c = 0; c < es.eigenvectors().cols(); ++c) {
    const long double o = std::abs(es.eigenvectors()(target, c));
    if (o > best_overlap) {
      best_overlap = o;
      best = c;
    }
  }
  VecL v = es.eigenvectors().col(best);
  return v / v(target);
}

// Central-difference stencils with O(h^2) error, nodes -2..2.
constexpr long double kStencil[5][5] = {
    {0, 0, 1, 0, 0},
    {0, -0.5L, 0, 0.5L, 0},
    {0, 1, -2, 1, 0},
    {-0.5L, 1, 0, -1, 0.5L},
    {1, -4, 6, -4, 1},
};

}  // namespace

DenseSpectrum dense_eig(const SparseSymmetric<double>& h, std::size_t cap) {
  check_cap(h.dim(), cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(h));
  if (es.info() != Eigen::Success) throw Error("dense_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

DenseSpectrum dense_eig_generalized(const SymmetricPencil<double>& pencil, std::size_t cap) {
  pencil.validate();
  check_cap(pencil.dim(), cap);
  const Eigen::MatrixXd s = dense(pencil.s);
  Eigen::LLT<Eigen::MatrixXd> llt(s);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("dense_eig_generalized: S is not positive definite");
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(dense(pencil.a), s);
  if (es.info() != Eigen::Success) throw Error("dense_eig_generalized: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

std::vector<std::vector<double>> taylor_probe(const Partitioning<double>& p, std::size_t k) {
  const std::size_t n = p.dim();
  if (n > 50) throw CapExceeded("taylor_probe: dimension above 50");
  if (k > 4) throw std::invalid_argument("taylor_probe: order above 4");
  check_isolated(p);

  MatL h0 = MatL::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  MatL h1 = h0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ii = static_cast<Eigen::Index>(i);
    h0(ii, ii) = p.h0_diag[i];
    for (std::size_t j = 0; j < n; ++j) {
      h1(ii, static_cast<Eigen::Index>(j)) = static_cast<long double>(p.lambda) * p.h1.at(i, j);
    }
  }
  const auto t = static_cast<Eigen::Index>(p.target);

  auto samples = [&](long double step) {
    std::vector<VecL> f;
    for (int j = -2; j <= 2; ++j) f.push_back(continued_vector(h0, h1, j * step, t));
    return f;
  };
  const long double h = 1e-3L;
  const auto coarse = samples(h);
  const auto fine = samples(h / 2);

  std::vector<std::vector<double>> out;
  long double factorial = 1;
  for (std::size_t order = 1; order <= k; ++order) {
    factorial *= static_cast<long double>(order);
    auto derivative = [&](const std::vector<VecL>& f, long double step) {
      VecL d = VecL::Zero(static_cast<Eigen::Index>(n));
      for (int j = 0; j < 5; ++j) d += kStencil[order][j] * f[static_cast<std::size_t>(j)];
      return VecL(d / std::pow(step, static_cast<long double>(order)));
    };
    const VecL dc = derivative(coarse, h);
    const VecL df = derivative(fine, h / 2);
    const VecL refined = (4 * df - dc) / 3;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = static_cast<double>(refined(static_cast<Eigen::Index>(i)) / factorial);
    a[p.target] = 0.0;
    out.push_back(std::move(a));
  }
  return out;
}

GroundState ground_state_banded(const SparseSymmetric<double>& h, double shift) {
  const std::size_t n = h.dim();
  if (n == 0) throw std::invalid_argument("ground_state_banded: empty matrix");
  const std::size_t b = h.bandwidth();
  // Lower factor in band storage: l[i * (b + 1) + (i - j)] = L(i, j).
  std::vector<double> l(n * (b + 1), 0.0);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return l[i * (b + 1) + (i - j)]; };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j0 = i > b ? i - b : 0;
    for (std::size_t j = j0; j <= i; ++j) {
      double sum = h.at(i, j) - (i == j ? shift : 0.0);
      const std::size_t k0 = std::max(j0, j > b ? j - b : 0);
      for (std::size_t k = k0; k < j; ++k) sum -= at(i, k) * at(j, k);
      if (i == j) {
        if (!(sum > 0.0)) throw NotPositiveDefinite("ground_state_banded: H - shift I is not positive definite");
        at(i, i) = std::sqrt(sum);
      } else {
        at(i, j) = sum / at(j, j);
      }
    }
  }
  auto solve = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j0 = i > b ? i - b : 0;
      double sum = x[i];
      for (std::size_t j = j0; j < i; ++j) sum -= at(i, j) * x[j];
      x[i] = sum / at(i, i);
    }
    for (std::size_t i = n; i-- > 0;) {
      const std::size_t j1 = std::min(n - 1, i + b);
      double sum = x[i];
      for (std::size_t j = i + 1; j <= j1; ++j) sum -= at(j, i) * x[j];
      x[i] = sum / at(i, i);
    }
  };
  auto normalize = [](std::vector<double>& x) {
    const double norm = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    const auto big = std::max_element(x.begin(), x.end(), [](double a, double c) { return std::abs(a) < std::abs(c); });
    const double sign = *big < 0 ? -1.0 : 1.0;
    for (auto& v : x) v *= sign / norm;
  };

  GroundState gs;
  std::vector<double> x(n, 1.0);
  normalize(x);
  for (std::size_t it = 1; it <= 2000; ++it) {
    std::vector<double> y = x;
    solve(y);
    normalize(y);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(y[i] - x[i]));
    x = std::move(y);
    gs.iterations = it;
    if (change < 1e-15) break;
  }
  const auto hx = h * x;
  gs.energy = std::inner_product(x.begin(), x.end(), hx.begin(), 0.0);
  gs.vector = std::move(x);
  return gs;
}

GroundState ground_state_blocks(const SparseSymmetric<double>& h, std::size_t cap) {
  const std::size_t n = h.dim();
  const auto& rp = h.row_ptr();
  const auto& ci = h.col_index();
  std::vector<std::size_t> label(n, n);
  GroundState best;
  best.energy = std::numeric_limits<double>::infinity();
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (label[seed] != n) continue;
    std::vector<std::size_t> members{seed};
    label[seed] = seed;
    for (std::size_t q = 0; q < members.size(); ++q) {
      const std::size_t i = members[q];
      for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
        if (label[ci[p]] == n) {
          label[ci[p]] = seed;
          members.push_back(ci[p]);
        }
      }
    }
    std::sort(members.begin(), members.end());
    check_cap(members.size(), cap);
    const auto m = static_cast<Eigen::Index>(members.size());
    Eigen::MatrixXd block(m, m);
    for (Eigen::Index a = 0; a < m; ++a) {
      for (Eigen::Index c = 0; c < m; ++c) {
        block(a, c) = h.at(members[static_cast<std::size_t>(a)], members[static_cast<std::size_t>(c)]);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
    if (es.info() != Eigen::Success) throw Error("ground_state_blocks: eigensolver did not converge");
    if (es.eigenvalues()(0) < best.energy) {
      best.energy = es.eigenvalues()(0);
      best.vector.assign(n, 0.0);
      for (Eigen::Index a = 0; a < m; ++a) best.vector[members[static_cast<std::size_t>(a)]] = es.eigenvectors()(a, 0);
    }
  }
  return best;
}

ZeemanCheck zeeman_construction_check(std::size_t n) {
  const auto spectrum = dense_eig_generalized(build_zeeman_pencil<double>(1.0, n));
  ZeemanCheck c;
  c.energy = spectrum.eigenvalues(0) + kZeemanEnergyOffset;
  c.deviation = std::abs(c.energy - kZeemanReferenceB1);
  c.validated = c.deviation <= kZeemanGate;
  return c;
}

}  // namespace relaxpt
