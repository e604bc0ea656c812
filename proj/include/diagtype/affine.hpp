#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

namespace diagtype::linalg {

using RationalVector = std::vector<mpq_class>;
using RationalMatrix = std::vector<RationalVector>;

/// Solutions of A x = b: particular + span(basis). When the system is
/// inconsistent, consistent is false and the other fields are empty.
struct AffineSolutionSet {
  bool consistent = false;
  RationalVector particular;
  std::vector<RationalVector> basis;

  /// True when coordinate i takes the same value on every solution.
  bool is_forced(std::size_t i) const;
};

/// Exact Gauss-Jordan elimination over Q. A has `unknowns` columns; rows of
/// A must all have that length.
AffineSolutionSet solve_affine_system(const RationalMatrix& a, const RationalVector& b, std::size_t unknowns);

}  // namespace diagtype::linalg
