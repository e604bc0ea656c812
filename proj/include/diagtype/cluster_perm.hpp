#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "diagtype/errors.hpp"
#include "diagtype/graph.hpp"

namespace diagtype {

/// Partition of the vertex set into blocks (bit masks over vertices),
/// ordered by least vertex.
struct Clustering {
  int n = 0;
  std::vector<std::uint64_t> blocks;

  int rank() const { return n - static_cast<int>(blocks.size()); }
  /// Index of the block containing vertex v (1-based).
  int block_of(int v) const;
  std::vector<std::vector<int>> block_lists() const;
  /// e.g. "12|3"; blocks separated by '|', vertices by ',' once n >= 10.
  std::string label() const;
  friend bool operator==(const Clustering& a, const Clustering& b) { return a.blocks == b.blocks; }
};

/// Components of the spanning subgraph with the given edges.
Clustering components_of(int n, const std::vector<Edge>& edges);

/// Ranked poset given by its covering relations. Elements are numbered
/// 0..size-1 along a linear extension: every cover (lower, upper) has
/// lower < upper.
class GradedPoset {
 public:
  GradedPoset() = default;
  /// With strict_ranks, every cover must raise the rank by exactly one and
  /// rank-0 elements must be exactly the minimal ones.
  GradedPoset(std::vector<int> ranks, std::vector<std::pair<std::uint32_t, std::uint32_t>> covers,
              std::vector<std::string> labels, bool strict_ranks = true);

  std::size_t size() const { return ranks_.size(); }
  int rank(std::size_t i) const { return ranks_[i]; }
  int max_rank() const;
  const std::vector<int>& ranks() const { return ranks_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& covers() const { return covers_; }
  const std::vector<std::uint32_t>& up(std::size_t i) const { return up_[i]; }
  const std::vector<std::uint32_t>& down(std::size_t i) const { return down_[i]; }
  std::size_t count_at_rank(int r) const;
  std::vector<std::uint32_t> minimal_elements() const;
  /// Elements strictly above i, ascending.
  std::vector<std::uint32_t> strictly_above(std::uint32_t i) const;
  bool leq(std::uint32_t a, std::uint32_t b) const;

 private:
  std::vector<int> ranks_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::uint32_t>> up_;
  std::vector<std::vector<std::uint32_t>> down_;
};

struct PosetOptions {
  /// Construction fails with ComputationError once this many elements would be built.
  std::size_t max_elements = 20'000'000;
};

/// Connected partitions ordered by refinement, ranked by n - #blocks.
struct ClusteringLattice {
  GradedPoset poset;
  std::vector<Clustering> clusterings;
};
ClusteringLattice clusterings(const Graph& g);

/// An element (C, A): labels[v-1] is the label given to vertex v by the
/// least representative of the coset, i.e. every block receives its label
/// set in increasing order.
struct AssignedElement {
  std::uint32_t clustering;
  std::vector<int> labels;
};

struct ClusterPermutohedron {
  Graph graph;
  ClusteringLattice lattice;
  GradedPoset poset;
  std::vector<AssignedElement> elements;
};
ClusterPermutohedron cluster_permutohedron(const Graph& g, const PosetOptions& opts = {});

/// Pairs (D, A) with D an edge subset and A an assignment for the
/// components of D. Ranked by the clustering rank of components(D); along a
/// cover that closes a cycle the rank stays put.
struct Graphicahedron {
  Graph graph;
  GradedPoset poset;
  /// Bit k of edge_sets[i] selects graph.edges()[k].
  std::vector<std::uint64_t> edge_sets;
  std::vector<std::vector<int>> labels;
};
Graphicahedron graphicahedron(const Graph& g, const PosetOptions& opts = {});

/// For a tree, the bijection Gr -> Cl sending (D, A) to (components(D), A).
std::vector<std::uint32_t> tree_graphicahedron_map(const Graphicahedron& gr, const ClusterPermutohedron& cl);

/// Elements of rank <= r with the covers among them. Ranks are monotone
/// along covers, so the subset is down-closed and restricting covers is the
/// transitive reduction. origin[k] is the parent id of element k.
struct Skeleton {
  GradedPoset poset;
  std::vector<std::uint32_t> origin;
};
Skeleton skeleton(const GradedPoset& p, int r);

/// The 1-skeleton as an edge list on rank-0 element ids: two minimal
/// elements are joined when they lie under a common rank-1 element.
std::vector<std::pair<std::uint32_t, std::uint32_t>> one_skeleton(const ClusterPermutohedron& cl);

/// True when f is a bijection carrying covers of a exactly onto covers of b.
bool is_order_isomorphism(const GradedPoset& a, const GradedPoset& b, const std::vector<std::uint32_t>& f);

std::string poset_to_json(const GradedPoset& p);
std::string poset_to_dot(const GradedPoset& p, const std::string& name = "poset");

}  // namespace diagtype
