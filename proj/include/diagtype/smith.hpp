#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "diagtype/errors.hpp"
#include "diagtype/sparse_matrix.hpp"

namespace diagtype::linalg {

struct SmithOptions {
  /// Largest residual (rows * cols) handed to the dense arbitrary-precision
  /// reduction after unit pivots are exhausted.
  std::size_t dense_cap = std::size_t{4000} * 4000;
  int threads = 0;
};

/// Nonzero elementary divisors d_1 | d_2 | ... of an integer matrix, all
/// positive. Unit pivots are eliminated sparsely first (each contributes a
/// divisor 1); the remaining block goes to a dense reduction, subject to
/// dense_cap.
std::vector<mpz_class> smith_normal_form(const SparseMatrix& m, const SmithOptions& opts = {});

namespace reference {
/// Dense reduction of the whole matrix; oracle for the sparse front end.
std::vector<mpz_class> smith_normal_form_dense(const std::vector<std::vector<mpz_class>>& a);
}  // namespace reference

}  // namespace diagtype::linalg
