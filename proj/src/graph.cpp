#include "diagtype/graph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace diagtype {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

}  // namespace

Graph::Graph(int n) : n_(n), adj_(static_cast<std::size_t>(std::max(n, 0)), 0) {
  if (n < 0 || n > max_vertices) {
    throw std::invalid_argument("vertex count must be in 0.." + std::to_string(max_vertices));
  }
}

Graph::Graph(int n, const std::vector<Edge>& edges) : Graph(n) {
  for (auto [a, b] : edges) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw std::invalid_argument("edge (" + std::to_string(a) + "," + std::to_string(b) + ") out of range");
    }
    if (a == b) throw std::invalid_argument("loop at vertex " + std::to_string(a));
    edges_.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  for (auto [a, b] : edges_) {
    adj_[static_cast<std::size_t>(a - 1)] |= bit(b);
    adj_[static_cast<std::size_t>(b - 1)] |= bit(a);
  }
}

bool Graph::adjacent(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_) return false;
  return (adj_[static_cast<std::size_t>(i - 1)] & bit(j)) != 0;
}

int Graph::degree(int i) const { return std::popcount(neighbours(i)); }

std::vector<std::vector<int>> Graph::components() const {
  std::vector<std::vector<int>> out;
  std::uint64_t seen = 0;
  for (int s = 1; s <= n_; ++s) {
    if ((seen & bit(s)) != 0) continue;
    std::uint64_t comp = bit(s), frontier = bit(s);
    while (frontier != 0) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= adj_[static_cast<std::size_t>(std::countr_zero(f))];
      frontier = next & ~comp;
      comp |= next;
    }
    seen |= comp;
    std::vector<int> vs;
    for (std::uint64_t c = comp; c != 0; c &= c - 1) vs.push_back(std::countr_zero(c) + 1);
    out.push_back(std::move(vs));
  }
  return out;
}

bool Graph::connected() const { return n_ >= 1 && components().size() == 1; }

Graph Graph::with_edges(const std::vector<Edge>& extra) const {
  std::vector<Edge> all = edges_;
  all.insert(all.end(), extra.begin(), extra.end());
  return Graph(n_, all);
}

std::vector<Edge> Graph::non_edges() const {
  std::vector<Edge> out;
  for (int i = 1; i <= n_; ++i) {
    for (int j = i + 1; j <= n_; ++j) {
      if (!adjacent(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace named {

Graph path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  std::vector<Edge> e;
  for (int i = 1; i < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph cycle(int k) {
  if (k < 3) throw std::invalid_argument("cycle needs k >= 3");
  std::vector<Edge> e;
  for (int i = 1; i < k; ++i) e.emplace_back(i, i + 1);
  e.emplace_back(1, k);
  return Graph(k, e);
}

Graph complete(int n) {
  if (n < 1) throw std::invalid_argument("complete needs n >= 1");
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) e.emplace_back(i, j);
  }
  return Graph(n, e);
}

Graph claw() { return Graph(4, {{1, 2}, {1, 3}, {1, 4}}); }

Graph net() { return Graph(6, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 5}, {3, 6}}); }

Graph sun3() { return Graph(6, {{1, 2}, {2, 3}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 5}, {3, 6}, {1, 6}}); }

}  // namespace named

Graph named_graph(std::string_view spec) {
  std::string s(spec);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; }), s.end());
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "claw") return named::claw();
  if (s == "net") return named::net();
  if (s == "sun3" || s == "sun") return named::sun3();
  const auto open = s.find('(');
  if (open == std::string::npos || s.back() != ')') throw std::invalid_argument("unknown graph name: " + s);
  const std::string head = s.substr(0, open);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(s.substr(open + 1, s.size() - open - 2), &used);
    if (used != s.size() - open - 2) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw std::invalid_argument("bad size in graph name: " + s);
  }
  if (head == "cycle") return named::cycle(k);
  if (head == "path") return named::path(k);
  if (head == "complete") return named::complete(k);
  throw std::invalid_argument("unknown graph name: " + s);
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vs) {
  if (vs.empty()) throw std::invalid_argument("induced_subgraph needs a nonempty vertex set");
  std::vector<int> sorted = vs;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("induced_subgraph: repeated vertex");
  }
  if (sorted.front() < 1 || sorted.back() > g.n()) throw std::invalid_argument("induced_subgraph: vertex out of range");
  std::vector<Edge> e;
  const int k = static_cast<int>(vs.size());
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      if (g.adjacent(vs[static_cast<std::size_t>(a)], vs[static_cast<std::size_t>(b)])) e.emplace_back(a + 1, b + 1);
    }
  }
  return Graph(k, e);
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n()) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<Edge> e;
  for (auto [a, b] : g.edges()) e.emplace_back(perm[static_cast<std::size_t>(a - 1)], perm[static_cast<std::size_t>(b - 1)]);
  return Graph(g.n(), e);
}

std::optional<int> girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  const int n = g.n();
  for (int s = 1; s <= n; ++s) {
    std::vector<int> dist(static_cast<std::size_t>(n + 1), -1), parent(static_cast<std::size_t>(n + 1), 0);
    std::queue<int> q;
    dist[static_cast<std::size_t>(s)] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (std::uint64_t m = g.neighbours(u); m != 0; m &= m - 1) {
        const int v = std::countr_zero(m) + 1;
        if (dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          parent[static_cast<std::size_t>(v)] = u;
          q.push(v);
        } else if (parent[static_cast<std::size_t>(u)] != v) {
          best = std::min(best, dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(v)] + 1);
        }
      }
    }
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

std::string kind_name(const ForbiddenWitness& w) {
  switch (w.kind) {
    case ForbiddenKind::Cycle:
      return "Cycle(" + std::to_string(w.vertices.size()) + ")";
    case ForbiddenKind::Claw:
      return "Claw";
    case ForbiddenKind::Net:
      return "Net";
    case ForbiddenKind::Sun3:
      return "Sun3";
  }
  return "?";
}

Graph witness_graph(const ForbiddenWitness& w) {
  switch (w.kind) {
    case ForbiddenKind::Cycle:
      return named::cycle(static_cast<int>(w.vertices.size()));
    case ForbiddenKind::Claw:
      return named::claw();
    case ForbiddenKind::Net:
      return named::net();
    case ForbiddenKind::Sun3:
      return named::sun3();
  }
  throw std::logic_error("unknown witness kind");
}

namespace {

bool is_chordless_cycle(const Graph& h) {
  if (h.n() < 4 || static_cast<int>(h.edge_count()) != h.n()) return false;
  for (int v = 1; v <= h.n(); ++v) {
    if (h.degree(v) != 2) return false;
  }
  return h.connected();
}

// Visits k-subsets of {1..n} in lexicographic order until visit returns true.
bool for_each_subset(int n, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> s(static_cast<std::size_t>(k));
  std::iota(s.begin(), s.end(), 1);
  for (;;) {
    if (visit(s)) return true;
    int i = k - 1;
    while (i >= 0 && s[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) return false;
    ++s[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) s[static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(j - 1)] + 1;
  }
}

}  // namespace

std::optional<ForbiddenWitness> find_forbidden_induced(const Graph& g) {
  static const Graph claw = named::claw();
  static const Graph net = named::net();
  static const Graph sun = named::sun3();
  std::optional<ForbiddenWitness> found;
  for (int k = 4; k <= g.n() && !found; ++k) {
    for_each_subset(g.n(), k, [&](const std::vector<int>& vs) {
      const Graph h = induced_subgraph(g, vs);
      if (is_chordless_cycle(h)) {
        found = ForbiddenWitness{ForbiddenKind::Cycle, vs};
      } else if (k == 4 && graphs_isomorphic(h, claw)) {
        found = ForbiddenWitness{ForbiddenKind::Claw, vs};
      } else if (k == 6 && graphs_isomorphic(h, net)) {
        found = ForbiddenWitness{ForbiddenKind::Net, vs};
      } else if (k == 6 && graphs_isomorphic(h, sun)) {
        found = ForbiddenWitness{ForbiddenKind::Sun3, vs};
      }
      return found.has_value();
    });
  }
  return found;
}

std::optional<std::vector<int>> find_isomorphism(const Graph& a, const Graph& b) {
  const int n = a.n();
  if (n != b.n() || a.edge_count() != b.edge_count()) return std::nullopt;
  std::vector<int> da, db;
  for (int v = 1; v <= n; ++v) {
    da.push_back(a.degree(v));
    db.push_back(b.degree(v));
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return std::nullopt;
  }
  std::vector<int> image(static_cast<std::size_t>(n), 0);
  std::uint64_t used = 0;
  std::function<bool(int)> extend = [&](int v) -> bool {
    if (v > n) return true;
    for (int w = 1; w <= n; ++w) {
      if ((used & bit(w)) != 0 || da[static_cast<std::size_t>(v - 1)] != db[static_cast<std::size_t>(w - 1)]) continue;
      bool ok = true;
      for (int u = 1; u < v && ok; ++u) {
        ok = a.adjacent(u, v) == b.adjacent(image[static_cast<std::size_t>(u - 1)], w);
      }
      if (!ok) continue;
      image[static_cast<std::size_t>(v - 1)] = w;
      used |= bit(w);
      if (extend(v + 1)) return true;
      used &= ~bit(w);
    }
    return false;
  };
  if (!extend(1)) return std::nullopt;
  return image;
}

bool graphs_isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

Graph canonical_form(const Graph& g) {
  std::vector<int> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), 1);
  Graph best = g;
  do {
    Graph h = relabel(g, perm);
    if (h.edges() < best.edges()) best = std::move(h);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Graph parse_graph_text(std::istream& in) {
  long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("graph text: expected header \"n m\"");
  std::vector<Edge> e;
  for (long k = 0; k < m; ++k) {
    long a = 0, b = 0;
    if (!(in >> a >> b)) throw std::invalid_argument("graph text: expected " + std::to_string(m) + " edge lines");
    e.emplace_back(static_cast<int>(a), static_cast<int>(b));
  }
  std::string rest;
  if (in >> rest) throw std::invalid_argument("graph text: trailing data after edge list");
  if (n > Graph::max_vertices) throw std::invalid_argument("graph text: too many vertices");
  return Graph(static_cast<int>(n), e);
}

Graph parse_graph_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw std::invalid_argument(std::string("graph json: ") + ex.what());
  }
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer() || !j.contains("edges") ||
      !j["edges"].is_array()) {
    throw std::invalid_argument("graph json: expected {\"n\": int, \"edges\": [[i,j],...]}");
  }
  const auto n = j["n"].get<long>();
  if (n < 0 || n > Graph::max_vertices) throw std::invalid_argument("graph json: bad vertex count");
  std::vector<Edge> e;
  for (const auto& p : j["edges"]) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
      throw std::invalid_argument("graph json: each edge must be a pair of integers");
    }
    e.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  return Graph(static_cast<int>(n), e);
}

Graph parse_graph(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_graph_json(text);
  std::istringstream in(text);
  return parse_graph_text(in);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string to_json(const Graph& g) {
  nlohmann::json j;
  j["n"] = g.n();
  j["edges"] = nlohmann::json::array();
  for (auto [a, b] : g.edges()) j["edges"].push_back({a, b});
  return j.dump();
}

std::string to_text(const Graph& g) {
  std::ostringstream out;
  out << g.n() << ' ' << g.edge_count() << '\n';
  for (auto [a, b] : g.edges()) out << a << ' ' << b << '\n';
  return out.str();
}

}  // namespace diagtype
