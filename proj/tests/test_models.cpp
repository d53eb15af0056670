#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "relaxpt/models.hpp"
#include "relaxpt/oracle.hpp"
#include "relaxpt/solver.hpp"

using namespace relaxpt;

namespace {

void check_symmetric(const SparseSymmetric<double>& m) {
  const auto rp = m.row_ptr();
  const auto ci = m.col_index();
  const auto v = m.values();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) CHECK(m.at(ci[p], i) == v[p]);
  }
}

// Spin-chain Hamiltonian from Kronecker products of 2x2 spin matrices; site 0
// is the least significant factor, state |1> is spin up.
Eigen::MatrixXd kron_chain(std::size_t l, const std::vector<double>& h, bool periodic) {
  Eigen::Matrix2d sz, sp, sm, id;
  sz << -0.5, 0, 0, 0.5;
  sp << 0, 0, 1, 0;
  sm = sp.transpose();
  id.setIdentity();
  auto site_op = [&](const Eigen::Matrix2d& op, std::size_t site) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (std::size_t s = l; s-- > 0;) {
      Eigen::MatrixXd next = Eigen::kroneckerProduct(out, s == site ? op : id);
      out = next;
    }
    return out;
  };
  const auto dim = static_cast<Eigen::Index>(1) << l;
  Eigen::MatrixXd hm = Eigen::MatrixXd::Zero(dim, dim);
  const std::size_t bonds = periodic ? l : l - 1;
  for (std::size_t b = 0; b < bonds; ++b) {
    const std::size_t q = (b + 1) % l;
    hm += site_op(sz, b) * site_op(sz, q);
    hm += 0.5 * (site_op(sp, b) * site_op(sm, q) + site_op(sm, b) * site_op(sp, q));
  }
  for (std::size_t s = 0; s < l; ++s) hm += h[s] * site_op(sz, s);
  return hm;
}

}  // namespace

TEST_CASE("anharmonic builder") {
  const auto h = build_anharmonic<double>(2, 1.0, 6);
  CHECK(h.at(0, 0) == doctest::Approx(1.75).epsilon(1e-15));
  const auto free = build_anharmonic<double>(3, 0.0, 12);
  for (std::size_t n = 0; n < 12; ++n) CHECK(free.at(n, n) == 2.0 * n + 1.0);
  CHECK(free.is_diagonal());
  for (int s = 2; s <= 4; ++s) {
    const auto m = build_anharmonic<double>(s, 0.7, 40);
    CHECK(m.bandwidth() == static_cast<std::size_t>(2 * s));
    check_symmetric(m);
  }
  CHECK_THROWS(build_anharmonic<double>(2, 1.0, 5));
  CHECK_THROWS(build_anharmonic<double>(5, 1.0, 50));
}

TEST_CASE("matrix power matches closed-form x^4 elements") {
  // <n|x^4|n> = (6n^2 + 6n + 3) / 4 with x = (a + a^dagger) / sqrt 2.
  const auto h = build_anharmonic<double>(2, 1.0, 30);
  for (std::size_t n = 0; n < 30; ++n) {
    const double nd = static_cast<double>(n);
    CHECK(h.at(n, n) == doctest::Approx(2 * nd + 1 + (6 * nd * nd + 6 * nd + 3) / 4).epsilon(1e-14));
  }
  // <n|x^4|n+4> = sqrt((n+1)(n+2)(n+3)(n+4)) / 4
  for (std::size_t n = 0; n + 4 < 30; ++n) {
    const double nd = static_cast<double>(n);
    CHECK(h.at(n, n + 4) == doctest::Approx(std::sqrt((nd + 1) * (nd + 2) * (nd + 3) * (nd + 4)) / 4).epsilon(1e-14));
  }
}

TEST_CASE("truncation stability of the oscillator ground energies") {
  CHECK(std::abs(dense_eig(build_anharmonic<double>(2, 1.0, 200)).eigenvalues(0) -
                 dense_eig(build_anharmonic<double>(2, 1.0, 300)).eigenvalues(0)) < 1e-10);
  const double hs400 = ground_state_banded(build_herbst_simon<double>(std::sqrt(0.3), 400)).energy;
  const double hs800 = ground_state_banded(build_herbst_simon<double>(std::sqrt(0.3), 800)).energy;
  CHECK(std::abs(hs400 - hs800) < 1e-10);
}

TEST_CASE("Herbst-Simon builder") {
  const auto free = build_herbst_simon<double>(0.0, 10);
  for (std::size_t n = 0; n < 10; ++n) CHECK(free.at(n, n) == 2.0 * n + 1.0);
  const auto h = build_herbst_simon<double>(std::sqrt(0.3), 50);
  CHECK(h.bandwidth() == 4);
  check_symmetric(h);
  // <0|V|1> = 2g <0|x|1> - 2g <0|x^3|1> = 2g / sqrt2 - 2g (3 / (2 sqrt2))
  const double g = std::sqrt(0.3);
  CHECK(h.at(0, 1) == doctest::Approx(2 * g / std::sqrt(2.0) - 2 * g * 3 / (2 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK_THROWS(build_herbst_simon<double>(0.5, 7));
}

TEST_CASE("Zeeman pencil") {
  const auto p0 = build_zeeman_pencil<double>(0.0, 12);
  CHECK(p0.dim() == 12 * 13 / 2);
  check_symmetric(p0.a);
  check_symmetric(p0.s);
  CHECK(p0.a.at(0, 0) == 0.0);
  SolverConfig cfg;
  cfg.alpha = 1.0;
  const auto r = solve_pencil(p0, 0, cfg);
  CHECK(r.status == Status::converged);
  CHECK(r.state.k <= 2);
  CHECK(r.state.energy == 0.0);

  const auto check = zeeman_construction_check();
  INFO("B = 1 dense energy " << check.energy);
  CHECK(check.validated);
  CHECK_THROWS(build_zeeman_pencil<double>(1.0, 9));
  CHECK(zeeman_index(0, 0) == 0);
  CHECK(zeeman_index(0, 1) == 1);
  CHECK(zeeman_index(1, 0) == 2);
}

TEST_CASE("Heisenberg: two-spin singlet") {
  const auto m = build_heisenberg(2, 0.0, 1, false);
  CHECK(dense_eig(m.hamiltonian).eigenvalues(0) == doctest::Approx(-0.75).epsilon(1e-14));
  CHECK_THROWS(build_heisenberg(2, 0.0, 1, true));
}

TEST_CASE("Heisenberg matrices match a Kronecker-product construction") {
  for (bool periodic : {true, false}) {
    for (double h : {0.0, 2.5}) {
      const auto m = build_heisenberg(3, h, 99, periodic);
      const auto ref = kron_chain(3, m.fields, periodic);
      for (Eigen::Index i = 0; i < 8; ++i) {
        for (Eigen::Index j = 0; j < 8; ++j) {
          CHECK(m.hamiltonian.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) ==
                doctest::Approx(ref(i, j)).epsilon(1e-15));
        }
      }
      const auto ev = dense_eig(m.hamiltonian).eigenvalues;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(ref);
      for (Eigen::Index i = 0; i < 8; ++i) CHECK(ev(i) == doctest::Approx(es.eigenvalues()(i)).epsilon(1e-13));
    }
  }
}

TEST_CASE("Heisenberg reproducibility, fields and sparsity") {
  const auto a = build_heisenberg(10, 3.0, 12345, true);
  const auto b = build_heisenberg(10, 3.0, 12345, true);
  CHECK(a.hamiltonian == b.hamiltonian);
  CHECK(a.fields == b.fields);
  CHECK(build_heisenberg(10, 3.0, 12346, true).fields != a.fields);
  for (double f : a.fields) CHECK(std::abs(f) <= 3.0);
  CHECK(a.hamiltonian.max_row_nnz() <= 11);
  check_symmetric(a.hamiltonian);

  const auto sec = build_heisenberg(10, 3.0, 12345, true, true);
  CHECK(sec.hamiltonian.dim() == 252);
  CHECK(sec.fields == a.fields);
  CHECK_THROWS(build_heisenberg(9, 1.0, 1, true, true));
}

TEST_CASE("ipr") {
  const std::vector<double> e{0.0, 0.0, 3.0};
  CHECK(ipr<double>(e) == 1.0);
  const std::vector<double> flat(16, 0.5);
  CHECK(ipr<double>(flat) == doctest::Approx(1.0 / 16));
  CHECK_THROWS(ipr<double>(std::vector<double>(3, 0.0)));

  const auto strong = ground_state_blocks(build_heisenberg(12, 50.0, 7, true).hamiltonian);
  CHECK(ipr<double>(strong.vector) > 0.9);
  const auto weak = ground_state_blocks(build_heisenberg(12, 1.0, 7, true).hamiltonian);
  CHECK(ipr<double>(weak.vector) < 0.1);
}

TEST_CASE("model specs: JSON round trip and validation") {
  const std::vector<ModelSpec> specs{ModelSpec::anharmonic(3, "100"), ModelSpec::herbst_simon("sqrt0.3"),
                                     ModelSpec::zeeman("10", 40), ModelSpec::heisenberg(12, 5.0, 7, false)};
  for (const auto& s : specs) {
    const nlohmann::json j = s;
    CHECK(j.get<ModelSpec>() == s);
    CHECK(nlohmann::json::parse(j.dump()).get<ModelSpec>() == s);
    CHECK_NOTHROW(s.validate());
  }
  CHECK(std::get<AnharmonicSpec>(ModelSpec::anharmonic(2, "100").variant).n == 1000);
  CHECK(std::get<AnharmonicSpec>(ModelSpec::anharmonic(2, "1").variant).n == 200);
  const auto numeric = nlohmann::json::parse(R"({"model":"anharmonic","s":2,"g":0.5,"N":30})").get<ModelSpec>();
  CHECK(std::get<AnharmonicSpec>(numeric.variant).g == "0.5");

  CHECK_THROWS_AS(ModelSpec::anharmonic(2, "x1", 30).validate(), ConfigError);
  CHECK_THROWS_AS(ModelSpec::anharmonic(2, "-1", 30).validate(), ConfigError);
  CHECK_THROWS_AS(ModelSpec::zeeman("1", 5).validate(), ConfigError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"model":"hydrogen"})").get<ModelSpec>(), ConfigError);

  auto m = ModelSpec::heisenberg(8, 1.0, 3);
  CHECK(set_model_parameter(m, "h", "5"));
  CHECK(std::get<HeisenbergSpec>(m.variant).h == 5.0);
  CHECK_FALSE(set_model_parameter(m, "g", "1"));
  CHECK(evaluate_parameter<double>("sqrt0.3") == std::sqrt(0.3));
  CHECK(evaluate_parameter<double>("sqrt(0.3)") == std::sqrt(0.3));
  CHECK(is_valid_parameter_token("1e-3"));
  CHECK_FALSE(is_valid_parameter_token("sqrt"));
}
