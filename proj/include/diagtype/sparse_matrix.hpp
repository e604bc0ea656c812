#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace diagtype::linalg {

struct Triplet {
  std::uint32_t row;
  std::uint32_t col;
  std::int64_t value;
};

/// Exact sparse matrix with integer entries. Entries are kept sorted by
/// (row, col) with duplicates summed and zeros removed; the coefficient
/// domain (GF(2), Q or Z) is chosen by the algorithm that consumes it.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);
  SparseMatrix(std::size_t rows, std::size_t cols, std::vector<Triplet> entries);

  static SparseMatrix identity(std::size_t n);
  static SparseMatrix from_dense(const std::vector<std::vector<std::int64_t>>& dense);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const { return entries_.size(); }
  const std::vector<Triplet>& entries() const { return entries_; }

  std::int64_t at(std::size_t row, std::size_t col) const;
  SparseMatrix transposed() const;
  std::vector<std::vector<std::int64_t>> to_dense() const;

  /// Coordinate text dump: "rows cols nnz" followed by one "r c v" line per entry.
  void write_coordinate(std::ostream& out) const;
  static SparseMatrix read_coordinate(std::istream& in);

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  void canonicalize();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Triplet> entries_;
};

}  // namespace diagtype::linalg
