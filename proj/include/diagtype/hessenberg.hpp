#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "diagtype/graph.hpp"
#include "diagtype/polynomial.hpp"

namespace diagtype {

/// h(i) for i = 1..n stored at index i-1.
using HessenbergFunction = std::vector<int>;

/// Throws std::invalid_argument unless h(i) >= i, h weakly increasing and
/// h(n) = n; with require_connected also h(i) > i for i < n.
void validate_hessenberg(const HessenbergFunction& h, bool require_connected = false);
HessenbergFunction parse_hessenberg(const std::string& text);
std::string format_hessenberg(const HessenbergFunction& h);

/// Edges {i,j} with i < j <= h(i).
Graph hessenberg_to_graph(const HessenbergFunction& h);

struct IndifferenceCertificate {
  /// Position p (0-based) holds the original vertex ordering[p]; relabeling
  /// ordering[p] -> p+1 turns the graph into hessenberg_to_graph(h).
  std::vector<int> ordering;
  HessenbergFunction h;
};

/// Returns an ordering with the umbrella property, or nullopt when none
/// exists. Accepts disconnected graphs.
std::optional<IndifferenceCertificate> indifference_ordering(const Graph& g);

/// Checks that the certificate relabels g onto exactly hessenberg_to_graph(h).
bool verify_certificate(const Graph& g, const IndifferenceCertificate& cert);

using Recognition = std::variant<IndifferenceCertificate, ForbiddenWitness>;

/// Certificate or forbidden witness for a connected graph.
Recognition recognize_indifference(const Graph& g);
bool is_indifference(const Graph& g);

/// #{(i,j) : i < j <= h(i), sigma(i) > sigma(j)}; sigma in one-line form, 1-based values.
int inv_h(const std::vector<int>& sigma, const HessenbergFunction& h);

/// Sum over all permutations of t^{inv_h}.
linalg::Polynomial betti_polynomial_hessenberg(const HessenbergFunction& h);

/// Connected Hessenberg functions on n vertices, one per isomorphism class of
/// their graphs (the lexicographically least h of each class).
std::vector<HessenbergFunction> hessenberg_classes(int n);

struct AdiResult {
  int count = 0;
  std::vector<Edge> added;
};

/// Fewest non-edges whose addition gives an indifference graph; the witness is
/// the lexicographically first such set of that size.
AdiResult adi(const Graph& g);

}  // namespace diagtype
