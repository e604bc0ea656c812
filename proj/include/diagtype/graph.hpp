#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace diagtype {

/// Unordered edge {first, second} with first < second, 1-based.
using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 1..n. Adjacency is kept as bit masks,
/// which bounds n by max_vertices; every pipeline graph is far below that.
class Graph {
 public:
  static constexpr int max_vertices = 64;

  Graph() = default;
  explicit Graph(int n);
  /// Canonicalizes the edge list: pairs are ordered, duplicates collapse.
  /// Throws std::invalid_argument on loops or out-of-range endpoints.
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool adjacent(int i, int j) const;
  /// Bit j-1 is set when j is adjacent to i.
  std::uint64_t neighbours(int i) const { return adj_[static_cast<std::size_t>(i - 1)]; }
  int degree(int i) const;

  bool connected() const;
  /// Vertex sets of the connected components, each sorted, ordered by least vertex.
  std::vector<std::vector<int>> components() const;

  Graph with_edges(const std::vector<Edge>& extra) const;
  /// The complement edges {i,j} in lexicographic order.
  std::vector<Edge> non_edges() const;

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adj_;
};

inline Graph make_graph(int n, const std::vector<Edge>& edges) { return Graph(n, edges); }

namespace named {
Graph path(int n);
Graph cycle(int k);
Graph complete(int n);
/// Star with center 1 and leaves 2,3,4.
Graph claw();
/// Triangle 1,2,3 with pendant leaves 4-1, 5-2, 6-3.
Graph net();
/// Triangle 1,2,3 with outer vertices 4~{1,2}, 5~{2,3}, 6~{3,1}.
Graph sun3();
}  // namespace named

/// Parses "claw", "net", "sun3", "cycle(5)", "path(4)", "complete(3)".
Graph named_graph(std::string_view spec);

/// Graph on vs.size() vertices: vs[k] becomes vertex k+1.
Graph induced_subgraph(const Graph& g, const std::vector<int>& vs);

/// Relabels vertex v as perm[v-1].
Graph relabel(const Graph& g, const std::vector<int>& perm);

/// Length of a shortest cycle; nullopt for forests.
std::optional<int> girth(const Graph& g);

enum class ForbiddenKind { Cycle, Claw, Net, Sun3 };

struct ForbiddenWitness {
  ForbiddenKind kind;
  /// Sorted vertex subset of the host graph inducing the forbidden graph.
  std::vector<int> vertices;
};

std::string kind_name(const ForbiddenWitness& w);

/// Smallest induced cycle of length >= 4, claw, net or sun3, scanning subsets
/// by size and then lexicographically.
std::optional<ForbiddenWitness> find_forbidden_induced(const Graph& g);

/// The named graph a witness claims to induce.
Graph witness_graph(const ForbiddenWitness& w);

/// Vertex bijection f (f[v-1] is the image of v) mapping edges of a onto edges of b.
std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b);
bool graphs_isomorphic(const Graph& a, const Graph& b);

/// Lexicographically least edge list over all relabelings. Brute force, for
/// graphs up to about 9 vertices.
Graph canonical_form(const Graph& g);

/// "n m" then m lines "i j".
Graph parse_graph_text(std::istream& in);
/// {"n": int, "edges": [[i,j], ...]}
Graph parse_graph_json(const std::string& text);
/// JSON when the first non-blank character is '{', the text format otherwise.
Graph parse_graph(const std::string& text);
Graph read_graph_file(const std::string& path);
std::string to_json(const Graph& g);
std::string to_text(const Graph& g);

}  // namespace diagtype
