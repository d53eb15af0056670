#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "relaxpt/sparse.hpp"
#include "test_util.hpp"

using relaxpt::SparseSymmetric;
using Entry = SparseSymmetric<double>::Entry;

TEST_CASE("entries are mirrored and repeated pairs summed") {
  auto m = SparseSymmetric<double>::from_entries(3, {{0, 1, 0.5}, {1, 0, 0.25}, {2, 2, 3.0}, {1, 2, -1.0}});
  CHECK(m.at(0, 1) == 0.75);
  CHECK(m.at(1, 0) == 0.75);
  CHECK(m.at(2, 1) == -1.0);
  CHECK(m.at(0, 2) == 0.0);
  CHECK(m.diagonal() == std::vector<double>{0.0, 0.0, 3.0});
  CHECK(m.nnz() == 5);
  CHECK(m.bandwidth() == 1);
}

TEST_CASE("exact zeros are dropped") {
  auto m = SparseSymmetric<double>::from_entries(2, {{0, 1, 1.0}, {1, 0, -1.0}, {0, 0, 2.0}});
  CHECK(m.nnz() == 1);
  CHECK(m.is_diagonal());
}

TEST_CASE("out-of-range entries and asymmetric dense input are rejected") {
  CHECK_THROWS_AS(SparseSymmetric<double>::from_entries(2, {{0, 2, 1.0}}), relaxpt::DimensionMismatch);
  const std::vector<double> a{1.0, 2.0, 2.5, 1.0};
  CHECK_THROWS(SparseSymmetric<double>::from_dense(2, a));
}

TEST_CASE("product matches the dense reconstruction") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const std::size_t n = 50;
    auto m = testutil::random_symmetric(n, seed, 0.3, 1.0, 0.3);
    const auto dense = m.to_dense();
    const auto x = testutil::random_vector(n, seed + 100);
    const auto y = m * x;
    for (std::size_t i = 0; i < n; ++i) {
      double ref = 0.0, scale = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        ref += dense[i * n + j] * x[j];
        scale += std::abs(dense[i * n + j] * x[j]);
      }
      CHECK(std::abs(y[i] - ref) <= 1e-14 * scale);
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) CHECK(dense[i * n + j] == dense[j * n + i]);
    }
  }
}

TEST_CASE("dense round trip and derived matrices") {
  auto m = testutil::random_symmetric(12, 9, 0.5, 1.0, 0.5);
  const auto d = m.to_dense();
  CHECK(SparseSymmetric<double>::from_dense(12, d) == m);

  auto off = m.without_diagonal();
  for (std::size_t i = 0; i < 12; ++i) CHECK(off.diagonal()[i] == 0.0);
  CHECK(off.plus_diagonal(m.diagonal()) == m);
  CHECK(m.scaled(0.0).nnz() == 0);
  CHECK(m.scaled(2.0).at(3, 3) == 2.0 * m.at(3, 3));
  CHECK(m.plus(m) == m.scaled(2.0));
  CHECK(m.cast<long double>().cast<double>() == m);
}

TEST_CASE("row statistics") {
  auto m = SparseSymmetric<double>::from_entries(5, {{0, 3, 1.0}, {1, 1, 1.0}, {3, 4, 1.0}});
  CHECK(m.bandwidth() == 3);
  CHECK(m.max_row_nnz() == 2);
  CHECK(SparseSymmetric<double>::from_diagonal({1.0, 2.0}).is_diagonal());
}
