#include <doctest.h>

#include <cmath>
#include <random>

#include "relaxpt/models.hpp"
#include "relaxpt/oracle.hpp"
#include "test_util.hpp"

using namespace relaxpt;

namespace {

Eigen::MatrixXd to_eigen(const SparseSymmetric<double>& m) {
  const auto d = m.to_dense();
  const auto n = static_cast<Eigen::Index>(m.dim());
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(d.data(), n, n);
}

double lowest_long_double(const SparseSymmetric<double>& m) {
  using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const M d = to_eigen(m).cast<long double>();
  Eigen::SelfAdjointEigenSolver<M> es(d, Eigen::EigenvaluesOnly);
  return static_cast<double>(es.eigenvalues()(0));
}

}  // namespace

TEST_CASE("diagonal input") {
  const auto sp = dense_eig(SparseSymmetric<double>::from_diagonal({3.0, -1.0, 2.0}));
  CHECK(sp.eigenvalues(0) == -1.0);
  CHECK(sp.eigenvalues(1) == 2.0);
  CHECK(sp.eigenvalues(2) == 3.0);
  CHECK(std::abs(sp.eigenvectors(1, 0)) == 1.0);
  CHECK(std::abs(sp.eigenvectors(2, 1)) == 1.0);
  CHECK(std::abs(sp.eigenvectors(0, 2)) == 1.0);
}

TEST_CASE("2x2 quadratic formula") {
  const auto sp = dense_eig(SparseSymmetric<double>::from_dense(2, std::vector<double>{0.0, 0.1, 0.1, 1.0}));
  CHECK(sp.eigenvalues(0) == doctest::Approx((1 - std::sqrt(1.04)) / 2).epsilon(1e-14));
  CHECK(sp.eigenvalues(1) == doctest::Approx((1 + std::sqrt(1.04)) / 2).epsilon(1e-14));
}

TEST_CASE("reconstruction and orthonormality") {
  for (std::size_t n : {50, 200, 500}) {
    const auto h = testutil::random_symmetric(n, n, 0.5, 0.1, 0.2);
    const auto sp = dense_eig(h);
    const Eigen::MatrixXd hd = to_eigen(h);
    const Eigen::MatrixXd& v = sp.eigenvectors;
    const double hn = hd.norm();
    CHECK((hd - v * sp.eigenvalues.asDiagonal() * v.transpose()).norm() <= 1e-12 * hn);
    CHECK((v.transpose() * v - Eigen::MatrixXd::Identity(v.cols(), v.cols())).norm() <= 1e-12);
    for (Eigen::Index i = 1; i < sp.eigenvalues.size(); ++i) CHECK(sp.eigenvalues(i - 1) <= sp.eigenvalues(i));
  }
}

TEST_CASE("generalized oracle") {
  const auto a = testutil::random_symmetric(8, 3, 0.4);
  const auto id = SparseSymmetric<double>::from_diagonal(std::vector<double>(8, 1.0));
  const auto g = dense_eig_generalized({a, id});
  const auto s = dense_eig(a);
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(g.eigenvalues(i) == doctest::Approx(s.eigenvalues(i)).epsilon(1e-13));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::MatrixXd b(8, 8);
  for (auto& x : b.reshaped()) x = u(rng);
  const Eigen::MatrixXd spd = b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(8, 8);
  std::vector<double> sflat(64);
  for (Eigen::Index i = 0; i < 8; ++i) {
    for (Eigen::Index j = 0; j < 8; ++j) sflat[static_cast<std::size_t>(i * 8 + j)] = spd(i, j);
  }
  const auto sm = SparseSymmetric<double>::from_dense(8, sflat);
  const auto same = dense_eig_generalized({sm, sm});
  for (Eigen::Index i = 0; i < 8; ++i) CHECK(same.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));

  const auto r = dense_eig_generalized({a, sm});
  const Eigen::MatrixXd ad = to_eigen(a);
  for (Eigen::Index i = 0; i < 8; ++i) {
    const Eigen::VectorXd x = r.eigenvectors.col(i);
    const double e = r.eigenvalues(i);
    CHECK((ad * x - e * spd * x).norm() <= 1e-11 * (ad.norm() + std::abs(e) * spd.norm()) * x.norm());
  }

  const auto indefinite = SparseSymmetric<double>::from_diagonal({1, 1, 1, 1, 1, 1, 1, -1});
  CHECK_THROWS_AS(dense_eig_generalized({a, indefinite}), NotPositiveDefinite);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(dense_eig(testutil::random_symmetric(30, 1, 0.1), 20), CapExceeded);
}

TEST_CASE("banded inverse iteration matches a long double dense solve") {
  // the double dense solver loses ~1e-11 here to the wide spectrum
  const auto h = build_anharmonic<double>(2, 1.0, 200);
  const auto gs = ground_state_banded(h);
  CHECK(gs.energy == doctest::Approx(lowest_long_double(h)).epsilon(1e-14));
  CHECK(gs.energy == doctest::Approx(dense_eig(h).eigenvalues(0)).epsilon(1e-10));
  const auto hs = build_herbst_simon<double>(std::sqrt(0.3), 200);
  CHECK(ground_state_banded(hs).energy == doctest::Approx(lowest_long_double(hs)).epsilon(1e-14));
  CHECK_THROWS_AS(ground_state_banded(h, 5.0), NotPositiveDefinite);
}

TEST_CASE("block decomposition matches the dense oracle") {
  const auto h = build_heisenberg(8, 2.0, 3, true).hamiltonian;
  const auto gs = ground_state_blocks(h);
  const auto sp = dense_eig(h);
  CHECK(gs.energy == doctest::Approx(sp.eigenvalues(0)).epsilon(1e-13));
  double overlap = 0.0;
  for (std::size_t i = 0; i < h.dim(); ++i) overlap += gs.vector[i] * sp.eigenvectors(static_cast<Eigen::Index>(i), 0);
  CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("taylor_probe argument checks") {
  auto p = epstein_nesbet(testutil::random_symmetric(60, 1, 0.1), 0);
  CHECK_THROWS_AS(taylor_probe(p, 1), CapExceeded);
  auto q = epstein_nesbet(testutil::random_symmetric(6, 1, 0.1), 0);
  CHECK_THROWS(taylor_probe(q, 5));
  Partitioning<double> deg{{0.0, 0.0, 1.0}, SparseSymmetric<double>(3), 1.0, 0};
  CHECK_THROWS_AS(taylor_probe(deg, 1), DegenerateDiagonal);
}
