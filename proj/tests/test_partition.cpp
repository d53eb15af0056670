#include <doctest.h>

#include <stdexcept>

#include "relaxpt/models.hpp"
#include "relaxpt/partition.hpp"
#include "test_util.hpp"

using namespace relaxpt;

TEST_CASE("Epstein-Nesbet split of a 2x2 matrix") {
  auto h = SparseSymmetric<double>::from_dense(2, std::vector<double>{1.0, 0.1, 0.1, 2.0});
  auto p = epstein_nesbet(h, 0);
  CHECK(p.h0_diag == std::vector<double>{1.0, 2.0});
  CHECK(p.h1.at(0, 1) == 0.1);
  CHECK(p.h1.at(0, 0) == 0.0);
  CHECK(p.h1.at(1, 1) == 0.0);
  CHECK(p.lambda == 1.0);
  CHECK(p.unperturbed_energy() == 1.0);
}

TEST_CASE("EN of a diagonal matrix has an empty perturbation") {
  auto p = epstein_nesbet(SparseSymmetric<double>::from_diagonal({3.0, 1.0, 2.0}), 1);
  CHECK(p.h1.nnz() == 0);
}

TEST_CASE("EN of the quartic oscillator: E0 = 1 + 3g/4") {
  auto p = epstein_nesbet(build_anharmonic<double>(2, 1.0, 6), 0);
  CHECK(p.h0_diag[0] == doctest::Approx(1.75).epsilon(1e-15));
}

TEST_CASE("EN reconstructs H and rejects bad input") {
  auto h = testutil::random_symmetric(10, 3, 0.2);
  auto p = epstein_nesbet(h, 4);
  CHECK(p.reconstruct() == h);
  CHECK_THROWS_AS(epstein_nesbet(h, 10), std::out_of_range);
  CHECK_THROWS_AS(epstein_nesbet(SparseSymmetric<double>::from_diagonal({1.0}), 0), std::invalid_argument);
}

TEST_CASE("natural partitioning") {
  auto i = SparseSymmetric<double>::from_dense(2, std::vector<double>{0.0, 1.0, 1.0, 0.0});
  auto p = natural_partitioning<double>({0.0, 1.0}, i, 0.1, 0);
  CHECK(p.h0_diag == std::vector<double>{0.0, 1.0});
  CHECK(p.h1.at(0, 1) == 0.1);
  CHECK(natural_partitioning<double>({0.0, 1.0}, i, 0.0, 0).h1.nnz() == 0);
  CHECK_THROWS_AS(natural_partitioning<double>({0.0, 1.0, 2.0}, i, 0.1, 0), DimensionMismatch);

  // The diagonal of the interaction stays in h1.
  auto x4 = build_split<double>(ModelSpec::anharmonic(2, "0.1", 20));
  auto q = natural_partitioning(x4.f_diag, x4.interaction, x4.g, 0);
  CHECK(q.h0_diag[0] == 1.0);
  CHECK(q.h1.at(0, 0) == doctest::Approx(0.075).epsilon(1e-14));
  CHECK(q.reconstruct().at(3, 5) == doctest::Approx(build_anharmonic<double>(2, 0.1, 20).at(3, 5)).epsilon(1e-13));
}

TEST_CASE("repartition arithmetic") {
  auto h = SparseSymmetric<double>::from_dense(2, std::vector<double>{0.0, 0.1, 0.1, 1.0});
  auto p = epstein_nesbet(h, 0);
  auto r = repartition(p, 0.5);
  CHECK(r.h0_diag == std::vector<double>{0.0, 2.0});
  CHECK(r.h1.at(0, 0) == 0.0);
  CHECK(r.h1.at(1, 1) == -1.0);
  CHECK(r.h1.at(0, 1) == 0.1);
  CHECK(r.reconstruct() == h);

  auto same = repartition(p, 1.0);
  CHECK(same.h0_diag == p.h0_diag);
  CHECK(same.h1 == p.h1);
  CHECK_THROWS(repartition(p, 0.0));
  CHECK_THROWS(repartition(p, 1.5));
}

TEST_CASE("repartition folds lambda into h1") {
  auto h = testutil::random_symmetric(6, 5, 0.3);
  auto p = epstein_nesbet(h, 0);
  p.lambda = 0.25;
  auto r = repartition(p, 0.5);
  CHECK(r.lambda == 1.0);
  const auto a = r.reconstruct().to_dense(), b = p.reconstruct().to_dense();
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-15));
}
