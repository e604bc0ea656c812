#include "diagtype/sparse_matrix.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace diagtype::linalg {

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

SparseMatrix::SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.row >= rows_ || e.col >= cols_) {
      throw std::out_of_range("sparse matrix entry (" + std::to_string(e.row) + ", " +
                              std::to_string(e.col) + ") outside " + std::to_string(rows_) +
                              "x" + std::to_string(cols_));
    }
  }
  canonicalize();
}

void SparseMatrix::canonicalize() {
  std::sort(entries_.begin(), entries_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries_.size();) {
    Triplet acc = entries_[i++];
    while (i < entries_.size() && entries_[i].row == acc.row && entries_[i].col == acc.col) {
      acc.value += entries_[i++].value;
    }
    if (acc.value != 0) entries_[out++] = acc;
  }
  entries_.resize(out);
}

SparseMatrix SparseMatrix::identity(std::size_t n) {
  std::vector<Triplet> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i), 1});
  }
  return SparseMatrix(n, n, std::move(e));
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& dense) {
  const std::size_t rows = dense.size();
  const std::size_t cols = rows == 0 ? 0 : dense.front().size();
  std::vector<Triplet> e;
  for (std::size_t r = 0; r < rows; ++r) {
    if (dense[r].size() != cols) throw std::invalid_argument("ragged dense matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (dense[r][c] != 0) {
        e.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), dense[r][c]});
      }
    }
  }
  return SparseMatrix(rows, cols, std::move(e));
}

std::int64_t SparseMatrix::at(std::size_t row, std::size_t col) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), Triplet{static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col), 0},
                             [](const Triplet& a, const Triplet& b) {
                               return a.row != b.row ? a.row < b.row : a.col < b.col;
                             });
  if (it != entries_.end() && it->row == row && it->col == col) return it->value;
  return 0;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> e;
  e.reserve(entries_.size());
  for (const auto& t : entries_) e.push_back({t.col, t.row, t.value});
  return SparseMatrix(cols_, rows_, std::move(e));
}

std::vector<std::vector<std::int64_t>> SparseMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(rows_, std::vector<std::int64_t>(cols_, 0));
  for (const auto& t : entries_) d[t.row][t.col] = t.value;
  return d;
}

void SparseMatrix::write_coordinate(std::ostream& out) const {
  out << rows_ << ' ' << cols_ << ' ' << entries_.size() << '\n';
  for (const auto& t : entries_) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
}

SparseMatrix SparseMatrix::read_coordinate(std::istream& in) {
  std::size_t rows = 0, cols = 0, nnz = 0;
  if (!(in >> rows >> cols >> nnz)) throw std::invalid_argument("bad coordinate header");
  std::vector<Triplet> e;
  e.reserve(nnz);
  for (std::size_t i = 0; i < nnz; ++i) {
    std::int64_t r = 0, c = 0, v = 0;
    if (!(in >> r >> c >> v)) throw std::invalid_argument("truncated coordinate data");
    if (r < 0 || c < 0) throw std::invalid_argument("negative coordinate index");
    e.push_back({static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c), v});
  }
  return SparseMatrix(rows, cols, std::move(e));
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || a.entries_.size() != b.entries_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.entries_.size(); ++i) {
    const auto& x = a.entries_[i];
    const auto& y = b.entries_[i];
    if (x.row != y.row || x.col != y.col || x.value != y.value) return false;
  }
  return true;
}

}  // namespace diagtype::linalg
