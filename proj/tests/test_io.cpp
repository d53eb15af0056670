#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "relaxpt/matrix_market.hpp"
#include "relaxpt/models.hpp"
#include "relaxpt/trace_io.hpp"

using namespace relaxpt;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "relaxpt_test_io";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string strip_elapsed(const std::string& csv) {
  std::istringstream is(csv);
  std::string line, out;
  while (std::getline(is, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

}  // namespace

TEST_CASE("Matrix Market round trip is bit-identical") {
  const auto h = build_heisenberg(3, 0.0, 1, true).hamiltonian;
  std::stringstream ss;
  write_matrix_market(h, ss);
  CHECK(ss.str().rfind("%%MatrixMarket matrix coordinate real symmetric\n8 8 ", 0) == 0);
  CHECK(read_matrix_market(ss) == h);

  const auto r = build_heisenberg(6, 1.3, 77, false).hamiltonian;
  const auto path = scratch("chain.mtx");
  write_matrix_market(r, path);
  CHECK(read_matrix_market(path) == r);
}

TEST_CASE("anharmonic export has bandwidth 4") {
  std::stringstream ss;
  write_matrix_market(build_anharmonic<double>(2, 1.0, 10), ss);
  std::string line;
  std::getline(ss, line);
  std::getline(ss, line);
  std::size_t maxband = 0, i, j;
  double v;
  while (ss >> i >> j >> v) {
    CHECK(i >= j);
    maxband = std::max(maxband, i - j);
  }
  CHECK(maxband == 4);
}

TEST_CASE("pencil export writes two files") {
  const auto p = build_zeeman_pencil<double>(1.0, 20);
  write_pencil(p, scratch("z_A.mtx"), scratch("z_S.mtx"));
  const auto q = read_pencil(scratch("z_A.mtx"), scratch("z_S.mtx"));
  CHECK(q.a == p.a);
  CHECK(q.s == p.s);
}

TEST_CASE("reader accepts general symmetric files and rejects asymmetric ones") {
  std::istringstream ok("%%MatrixMarket matrix coordinate real general\n% comment\n2 2 3\n1 1 1.5\n1 2 0.25\n2 1 0.25\n");
  const auto m = read_matrix_market(ok);
  CHECK(m.at(0, 1) == 0.25);
  CHECK(m.at(0, 0) == 1.5);
  std::istringstream bad("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 2 0.25\n2 1 0.5\n");
  CHECK_THROWS(read_matrix_market(bad));
  std::istringstream half("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 2 0.25\n");
  CHECK_THROWS(read_matrix_market(half));
  std::istringstream arr("%%MatrixMarket matrix array real general\n2 2\n1\n0\n0\n1\n");
  CHECK_THROWS(read_matrix_market(arr));
}

TEST_CASE("trace CSV and JSON") {
  ConvergenceTrace t;
  t.append({1, 1.0 / 3.0, 0.5, 0.001, {}});
  t.append({2, -2.5, 1e-11, 0.002, {1.25, -0.25}});
  std::stringstream ss;
  write_trace_csv(t, ss);
  CHECK(ss.str() ==
        "k,energy,residual,elapsed_s\n"
        "1,0.33333333333333331,0.5,0.001\n"
        "2,-2.5,9.9999999999999994e-12,0.002\n");

  SolverConfig cfg;
  cfg.alpha = 0.3;
  cfg.acceleration = Acceleration::anderson;
  const auto j = trace_to_json(t, cfg, {{"model", "x"}});
  CHECK(j["solver"]["alpha"] == 0.3);
  CHECK(j["solver"]["acceleration"] == "anderson");
  CHECK(j["records"][1]["beta"][1] == -0.25);
  CHECK_FALSE(j["records"][0].contains("beta"));
  CHECK(j["records"][0]["energy"].get<double>() == 1.0 / 3.0);
  CHECK(j["provenance"]["model"] == "x");
}

TEST_CASE("solver config JSON round trip") {
  SolverConfig c;
  c.alpha = 0.3;
  c.tol = 1e-9;
  c.max_iter = 77;
  c.mode = Mode::rs;
  c.memory = 4;
  c.precision = Precision::extended;
  const nlohmann::json j = c;
  const auto back = j.get<SolverConfig>();
  CHECK(back.alpha == c.alpha);
  CHECK(back.tol == c.tol);
  CHECK(back.max_iter == c.max_iter);
  CHECK(back.mode == c.mode);
  CHECK(back.memory == c.memory);
  CHECK(back.precision == c.precision);
  CHECK_THROWS_AS(nlohmann::json({{"mode", "bogus"}}).get<SolverConfig>(), ConfigError);
}

TEST_CASE("identical runs give identical traces apart from the timing column") {
  const auto p = epstein_nesbet(build_anharmonic<double>(2, 1.0, 200), 0);
  SolverConfig cfg;
  cfg.max_iter = 300;
  ConvergenceTrace a, b;
  relax_iterate(p, cfg, &a);
  relax_iterate(p, cfg, &b);
  std::stringstream sa, sb;
  write_trace_csv(a, sa);
  write_trace_csv(b, sb);
  CHECK(strip_elapsed(sa.str()) == strip_elapsed(sb.str()));
}
