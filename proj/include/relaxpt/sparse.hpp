#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relaxpt/errors.hpp"
#include "relaxpt/kernels.hpp"

namespace relaxpt {

/// Real symmetric sparse matrix in CSR form.
///
/// Both triangles are stored, so every row is complete and the product is a
/// plain row-by-row sweep. Columns within a row are sorted. The diagonal is
/// cached separately for O(1) access. Exact zeros are not stored.
template <class T>
class SparseSymmetric {
 public:
  struct Entry {
    std::size_t row;
    std::size_t col;
    T value;
  };

  SparseSymmetric() : row_ptr_(1, 0) {}

  explicit SparseSymmetric(std::size_t dim) : dim_(dim), row_ptr_(dim + 1, 0), diag_(dim, T(0)) {}

  /// Builds from a list of entries, one per unordered pair {row, col}; (i, j)
  /// and (j, i) name the same pair and repeated pairs are summed. The mirror
  /// entry is generated here, which makes the result exactly symmetric.
  static SparseSymmetric from_entries(std::size_t dim, std::vector<Entry> entries) {
    for (auto& e : entries) {
      if (e.row >= dim || e.col >= dim) throw DimensionMismatch("entry index out of range");
      if (e.row > e.col) std::swap(e.row, e.col);
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    std::vector<Entry> upper;
    upper.reserve(entries.size());
    for (const auto& e : entries) {
      if (!upper.empty() && upper.back().row == e.row && upper.back().col == e.col) {
        upper.back().value += e.value;
      } else {
        upper.push_back(e);
      }
    }
    std::erase_if(upper, [](const Entry& e) { return e.value == T(0); });

    SparseSymmetric m(dim);
    std::vector<std::size_t> count(dim, 0);
    for (const auto& e : upper) {
      ++count[e.row];
      if (e.row != e.col) ++count[e.col];
    }
    for (std::size_t i = 0; i < dim; ++i) m.row_ptr_[i + 1] = m.row_ptr_[i] + count[i];
    m.col_.resize(m.row_ptr_[dim]);
    m.val_.resize(m.row_ptr_[dim]);
    std::vector<std::size_t> fill(m.row_ptr_.begin(), m.row_ptr_.end() - 1);
    // Row i receives its lower-triangle entries (pairs (j, i), j < i) before its
    // own upper entries, both in increasing column order, so rows come out sorted.
    for (const auto& e : upper) {
      m.col_[fill[e.row]] = e.col;
      m.val_[fill[e.row]++] = e.value;
      if (e.row != e.col) {
        m.col_[fill[e.col]] = e.row;
        m.val_[fill[e.col]++] = e.value;
      } else {
        m.diag_[e.row] = e.value;
      }
    }
    return m;
  }

  static SparseSymmetric from_diagonal(const std::vector<T>& d) {
    std::vector<Entry> e;
    for (std::size_t i = 0; i < d.size(); ++i) e.push_back({i, i, d[i]});
    return from_entries(d.size(), std::move(e));
  }

  /// Row-major dense input; throws if it is not exactly symmetric.
  static SparseSymmetric from_dense(std::size_t dim, std::span<const T> a) {
    if (a.size() != dim * dim) throw DimensionMismatch("dense input has wrong size");
    std::vector<Entry> e;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        if (a[i * dim + j] != a[j * dim + i]) throw Error("dense input is not symmetric");
        e.push_back({i, j, a[i * dim + j]});
      }
    }
    return from_entries(dim, std::move(e));
  }

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return val_.size(); }
  const std::vector<T>& diagonal() const { return diag_; }

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::size_t> col_index() const { return col_; }
  std::span<const T> values() const { return val_; }

  T at(std::size_t i, std::size_t j) const {
    auto first = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
    auto last = col_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
    auto it = std::lower_bound(first, last, j);
    if (it == last || *it != j) return T(0);
    return val_[static_cast<std::size_t>(it - col_.begin())];
  }

  /// Largest |i - j| over stored entries.
  std::size_t bandwidth() const {
    std::size_t b = 0;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
        b = std::max(b, col_[p] > i ? col_[p] - i : i - col_[p]);
      }
    }
    return b;
  }

  std::size_t max_row_nnz() const {
    std::size_t m = 0;
    for (std::size_t i = 0; i < dim_; ++i) m = std::max(m, row_ptr_[i + 1] - row_ptr_[i]);
    return m;
  }

  void multiply(std::span<const T> x, std::span<T> y) const {
    if (x.size() != dim_ || y.size() != dim_) throw DimensionMismatch("matvec size mismatch");
    kernels::active::spmv<T>(row_ptr_, col_, val_, x, y);
  }

  std::vector<T> operator*(const std::vector<T>& x) const {
    std::vector<T> y(dim_);
    multiply(x, y);
    return y;
  }

  /// Upper-triangle entries (row <= col), row-major order.
  std::vector<Entry> upper_entries() const {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
        if (col_[p] >= i) out.push_back({i, col_[p], val_[p]});
      }
    }
    return out;
  }

  SparseSymmetric without_diagonal() const {
    auto e = upper_entries();
    std::erase_if(e, [](const Entry& x) { return x.row == x.col; });
    return from_entries(dim_, std::move(e));
  }

  SparseSymmetric scaled(const T& c) const {
    if (c == T(0)) return SparseSymmetric(dim_);
    SparseSymmetric m = *this;
    for (auto& v : m.val_) v *= c;
    for (auto& v : m.diag_) v *= c;
    return m;
  }

  /// this + diag(d)
  SparseSymmetric plus_diagonal(const std::vector<T>& d) const {
    if (d.size() != dim_) throw DimensionMismatch("diagonal length mismatch");
    auto e = upper_entries();
    for (std::size_t i = 0; i < dim_; ++i) e.push_back({i, i, d[i]});
    return from_entries(dim_, std::move(e));
  }

  SparseSymmetric plus(const SparseSymmetric& other) const {
    if (other.dim_ != dim_) throw DimensionMismatch("operator dimensions differ");
    auto e = upper_entries();
    auto o = other.upper_entries();
    e.insert(e.end(), o.begin(), o.end());
    return from_entries(dim_, std::move(e));
  }

  template <class U>
  SparseSymmetric<U> cast() const {
    std::vector<typename SparseSymmetric<U>::Entry> e;
    for (const auto& x : upper_entries()) e.push_back({x.row, x.col, U(x.value)});
    return SparseSymmetric<U>::from_entries(dim_, std::move(e));
  }

  /// Row-major dense copy.
  std::vector<T> to_dense() const {
    std::vector<T> a(dim_ * dim_, T(0));
    for (std::size_t i = 0; i < dim_; ++i) {
      for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) a[i * dim_ + col_[p]] = val_[p];
    }
    return a;
  }

  bool is_diagonal() const {
    const auto on_diag = std::count_if(diag_.begin(), diag_.end(), [](const T& v) { return v != T(0); });
    return nnz() == static_cast<std::size_t>(on_diag);
  }

  friend bool operator==(const SparseSymmetric& a, const SparseSymmetric& b) {
    return a.dim_ == b.dim_ && a.row_ptr_ == b.row_ptr_ && a.col_ == b.col_ && a.val_ == b.val_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> col_;
  std::vector<T> val_;
  std::vector<T> diag_;
};

}  // namespace relaxpt
