#pragma once

#include <filesystem>
#include <iosfwd>

#include "relaxpt/pencil.hpp"
#include "relaxpt/sparse.hpp"

namespace relaxpt {

/// Matrix Market "coordinate real symmetric": 1-based indices, lower
/// triangle only, values printed with 17 significant digits so a re-import
/// is bit-identical.
void write_matrix_market(const SparseSymmetric<double>& m, std::ostream& os);
void write_matrix_market(const SparseSymmetric<double>& m, const std::filesystem::path& path);

/// Accepts "symmetric" (either triangle) and "general" files; a general file
/// must be symmetric and each pair may appear once or mirrored.
SparseSymmetric<double> read_matrix_market(std::istream& is);
SparseSymmetric<double> read_matrix_market(const std::filesystem::path& path);

void write_pencil(const SymmetricPencil<double>& pencil, const std::filesystem::path& a_path,
                  const std::filesystem::path& s_path);
SymmetricPencil<double> read_pencil(const std::filesystem::path& a_path, const std::filesystem::path& s_path);

}  // namespace relaxpt
