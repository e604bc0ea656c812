#include "diagtype/affine.hpp"

#include <stdexcept>

namespace diagtype::linalg {

bool AffineSolutionSet::is_forced(std::size_t i) const {
  if (!consistent) return false;
  for (const auto& v : basis) {
    if (v[i] != 0) return false;
  }
  return true;
}

AffineSolutionSet solve_affine_system(const RationalMatrix& a, const RationalVector& b, std::size_t unknowns) {
  if (a.size() != b.size()) throw std::invalid_argument("solve_affine_system: row count mismatch");
  RationalMatrix m = a;
  for (std::size_t r = 0; r < m.size(); ++r) {
    if (m[r].size() != unknowns) throw std::invalid_argument("solve_affine_system: ragged matrix");
    m[r].push_back(b[r]);
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < unknowns && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const mpq_class inv = 1 / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const mpq_class f = m[r][c];
      for (std::size_t k = c; k <= unknowns; ++k) m[r][k] -= f * m[rank][k];
    }
    pivot_cols.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < m.size(); ++r) {
    if (m[r][unknowns] != 0) return {};
  }
  AffineSolutionSet out;
  out.consistent = true;
  out.particular.assign(unknowns, 0);
  for (std::size_t k = 0; k < rank; ++k) out.particular[pivot_cols[k]] = m[k][unknowns];
  std::vector<char> is_pivot(unknowns, 0);
  for (auto c : pivot_cols) is_pivot[c] = 1;
  for (std::size_t f = 0; f < unknowns; ++f) {
    if (is_pivot[f] != 0) continue;
    RationalVector v(unknowns, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < rank; ++k) v[pivot_cols[k]] = -m[k][f];
    out.basis.push_back(std::move(v));
  }
  return out;
}

}  // namespace diagtype::linalg
