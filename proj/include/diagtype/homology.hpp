#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diagtype/cluster_perm.hpp"
#include "diagtype/rank.hpp"
#include "diagtype/smith.hpp"
#include "diagtype/sparse_matrix.hpp"

namespace diagtype {

enum class Coefficients { GF2, Q, Z };
std::string coefficient_name(Coefficients c);

/// Closed simplicial complex stored as its full face list. Faces of
/// dimension d are sorted vertex tuples kept in one flat array with stride
/// d+1, in lexicographic order.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Closes the given faces under taking subsets.
  static SimplicialComplex from_maximal_faces(std::size_t vertices, const std::vector<std::vector<std::uint32_t>>& faces);

  std::size_t vertex_count() const { return vertices_; }
  /// -1 for the empty complex.
  int dimension() const { return static_cast<int>(flat_.size()) - 1; }
  std::size_t face_count(int d) const;
  std::size_t total_faces() const;
  const std::uint32_t* face(int d, std::size_t i) const { return flat_[static_cast<std::size_t>(d)].data() + i * static_cast<std::size_t>(d + 1); }
  /// Index of a sorted tuple of length d+1; throws std::out_of_range when absent.
  std::size_t index_of(int d, const std::uint32_t* tuple) const;

  /// Set when dimensions above dimension() were cut off on purpose, so the
  /// top homology group is not meaningful.
  bool truncated() const { return truncated_; }

  /// Alternating face count; the reduced version subtracts 1.
  long euler_characteristic() const;

 private:
  friend SimplicialComplex order_complex(const GradedPoset&, int, std::size_t);
  std::size_t vertices_ = 0;
  std::vector<std::vector<std::uint32_t>> flat_;
  bool truncated_ = false;
};

/// Chains of the poset. Vertices are element ids; a chain is listed in
/// increasing id order. max_dim >= 0 keeps chains with at most max_dim+1
/// elements (the max_dim-skeleton of the order complex). Fails with
/// ComputationError above max_simplices.
SimplicialComplex order_complex(const GradedPoset& p, int max_dim = -1, std::size_t max_simplices = 200'000'000);

/// boundary[d] maps C_d to C_{d-1}; boundary[0] is the augmentation C_0 -> Z.
/// Row and column indices follow the face order of the complex, signs are
/// (-1)^k for dropping the k-th vertex.
struct ChainComplex {
  std::vector<linalg::SparseMatrix> boundary;
};
ChainComplex chain_complex(const SimplicialComplex& sc);

/// Checks boundary[d-1] * boundary[d] == 0 over Z for every d >= 1.
bool boundary_squares_to_zero(const ChainComplex& cc);

struct HomologyOptions {
  linalg::RankOptions rank;
  linalg::SmithOptions smith;
};

/// Reduced Betti numbers for dimensions 0..dimension() (one less when the
/// complex is truncated). Coefficients::Z is rejected here; use
/// integral_homology.
std::vector<long> reduced_betti(const SimplicialComplex& sc, Coefficients coeff, const HomologyOptions& opts = {});

struct IntegralGroup {
  long rank = 0;
  std::vector<mpz_class> torsion;
};
/// Reduced integral homology by Smith normal form of each boundary map.
std::vector<IntegralGroup> integral_homology(const SimplicialComplex& sc, const HomologyOptions& opts = {});

/// {coeff, reduced: true, betti, euler}
std::string betti_report_json(Coefficients coeff, const std::vector<long>& betti, long reduced_euler);

}  // namespace diagtype
