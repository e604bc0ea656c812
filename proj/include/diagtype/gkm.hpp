#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "diagtype/graph.hpp"
#include "diagtype/polynomial.hpp"
#include "diagtype/rank.hpp"
#include "diagtype/sparse_matrix.hpp"

namespace diagtype {

enum class Field { Q, GF2 };
std::string field_name(Field f);

/// Edge sigma -- sigma o (a b): the two permutations differ by swapping
/// positions a < b (1-based), {a,b} an edge of the pattern graph. The weight
/// is e_a - e_b; the incidence sign is +1 at head and -1 at tail.
struct GkmEdge {
  std::uint32_t tail;
  std::uint32_t head;
  int a;
  int b;
};

struct GkmGraph {
  Graph pattern;
  /// All permutations of 1..n in lexicographic order of one-line notation.
  std::vector<std::vector<int>> vertices;
  std::vector<GkmEdge> edges;

  int n() const { return pattern.n(); }
  /// Weight vector of length n with +1 at a and -1 at b.
  std::vector<int> weight(const GkmEdge& e) const;
  /// Lexicographic rank of a permutation, i.e. its vertex id.
  std::uint32_t index_of(const std::vector<int>& perm) const;
};

/// Orientation from the lexicographically smaller permutation to the larger.
GkmGraph build_gkm_graph(const Graph& g);
/// Same edges with each orientation flipped by a coin drawn from seed.
GkmGraph reorient(const GkmGraph& gg, std::uint64_t seed);

struct LmapShape {
  std::uint64_t cols;  // C(n+i-1, i) * n!
  std::uint64_t rows;  // C(n+i-2, i) * #edges
  std::uint64_t nnz;   // cols * |E|
};
LmapShape lmap_shape(const GkmGraph& gg, int i);

/// L_i as an explicit matrix: columns (v, m) with m a degree-i monomial in n
/// variables, rows (e, mu) with mu a degree-i monomial in the variables left
/// after substituting x_b := x_a. Monomials are in graded-lex order.
linalg::SparseMatrix build_lmap(const GkmGraph& gg, int i);

struct GkmOptions {
  linalg::RankOptions rank;
};

/// dim ker L_i over the field. Throws ComputationError naming A_i and B_i
/// when the estimated working set exceeds opts.rank.memory_budget_bytes.
std::size_t equivariant_betti(const GkmGraph& gg, int i, Field field, const GkmOptions& opts = {});

struct OrdinaryBetti {
  /// beta_0, beta_2, ..., beta_{2r}.
  std::vector<mpz_class> values;
  /// Some coefficient is negative, so the input cannot come from an
  /// equivariantly formal action.
  bool negative = false;
};
/// Truncation of (sum dims_i t^i) * (1-t)^k to degree dims.size()-1.
OrdinaryBetti ordinary_betti_from_equivariant(const std::vector<std::size_t>& dims, int k);

struct GkmBettiReport {
  Field field = Field::GF2;
  int torus_rank = 0;
  std::vector<std::size_t> equivariant;
  OrdinaryBetti ordinary;
  /// beta_0..beta_{2|E|} completed by palindromic duality when the computed
  /// range reaches half the dimension.
  std::vector<long> completed;
  std::optional<long> total_by_duality;
  /// The computed middle coefficients disagree with the duality completion.
  bool duality_mismatch = false;
};

GkmBettiReport gkm_betti_report(const Graph& g, Field field, int max_degree, const GkmOptions& opts = {});

struct GkmTotal {
  bool determined = false;
  long total = 0;
  GkmBettiReport report;
  std::string reason;
};
/// Runs degrees 0..ceil(|E|/2) and sums the duality completion; undetermined
/// when a degree exceeds the budget.
GkmTotal gkm_total_betti(const Graph& g, Field field, const GkmOptions& opts = {});

std::string gkm_to_dot(const GkmGraph& gg);
std::string gkm_report_json(const GkmBettiReport& r);

}  // namespace diagtype
