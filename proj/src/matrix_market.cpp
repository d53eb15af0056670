#include "relaxpt/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "relaxpt/errors.hpp"

namespace relaxpt {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void write_matrix_market(const SparseSymmetric<double>& m, std::ostream& os) {
  // Upper entry (i, j) is written as lower entry (j, i), column by column.
  const auto upper = m.upper_entries();
  os << "%%MatrixMarket matrix coordinate real symmetric\n";
  os << m.dim() << ' ' << m.dim() << ' ' << upper.size() << '\n';
  char buf[64];
  for (const auto& e : upper) {
    std::snprintf(buf, sizeof buf, "%.17g", e.value);
    os << e.col + 1 << ' ' << e.row + 1 << ' ' << buf << '\n';
  }
}

void write_matrix_market(const SparseSymmetric<double>& m, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open " + path.string() + " for writing");
  write_matrix_market(m, os);
  if (!os) throw Error("write failed: " + path.string());
}

SparseSymmetric<double> read_matrix_market(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error("matrix market: empty input");
  std::istringstream banner(lower(line));
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix" || format != "coordinate") {
    throw Error("matrix market: expected a coordinate matrix header");
  }
  if (field != "real" && field != "integer" && field != "double") throw Error("matrix market: unsupported field " + field);
  if (symmetry != "symmetric" && symmetry != "general") throw Error("matrix market: unsupported symmetry " + symmetry);
  const bool general = symmetry == "general";

  while (std::getline(is, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(std::istringstream(line) >> rows >> cols >> nnz)) throw Error("matrix market: bad size line");
  if (rows != cols) throw DimensionMismatch("matrix market: matrix is not square");

  std::map<std::pair<std::size_t, std::size_t>, double> seen;
  for (std::size_t k = 0; k < nnz; ++k) {
    std::size_t i = 0, j = 0;
    double v = 0.0;
    if (!(is >> i >> j >> v)) throw Error("matrix market: truncated entry list");
    if (i == 0 || j == 0 || i > rows || j > rows) throw Error("matrix market: index out of range");
    --i;
    --j;
    if (!seen.emplace(std::make_pair(i, j), v).second) throw Error("matrix market: duplicate entry");
  }
  std::vector<SparseSymmetric<double>::Entry> entries;
  for (const auto& [key, v] : seen) {
    const auto [i, j] = key;
    const auto mirror = seen.find({j, i});
    if (i != j && mirror != seen.end()) {
      if (mirror->second != v) throw Error("matrix market: matrix is not symmetric");
      if (i > j) continue;
    } else if (i != j && general) {
      throw Error("matrix market: general matrix is missing a mirrored entry");
    }
    entries.push_back({i, j, v});
  }
  return SparseSymmetric<double>::from_entries(rows, std::move(entries));
}

SparseSymmetric<double> read_matrix_market(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open " + path.string());
  return read_matrix_market(is);
}

void write_pencil(const SymmetricPencil<double>& pencil, const std::filesystem::path& a_path,
                  const std::filesystem::path& s_path) {
  write_matrix_market(pencil.a, a_path);
  write_matrix_market(pencil.s, s_path);
}

SymmetricPencil<double> read_pencil(const std::filesystem::path& a_path, const std::filesystem::path& s_path) {
  SymmetricPencil<double> p{read_matrix_market(a_path), read_matrix_market(s_path)};
  p.validate();
  return p;
}

}  // namespace relaxpt
