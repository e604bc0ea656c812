#include "diagtype/hessenberg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace diagtype {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

// Umbrella property of a full ordering: for positions a < b < c, an edge
// between a and c forces edges a-b and b-c.
bool is_umbrella(const Graph& g, const std::vector<int>& order) {
  const auto n = order.size();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t a = 0; a < c; ++a) {
      if (!g.adjacent(order[a], order[c])) continue;
      for (std::size_t b = a + 1; b < c; ++b) {
        if (!g.adjacent(order[a], order[b]) || !g.adjacent(order[b], order[c])) return false;
      }
    }
  }
  return true;
}

HessenbergFunction h_of_ordering(const Graph& g, const std::vector<int>& order) {
  const int n = g.n();
  std::vector<int> pos(static_cast<std::size_t>(n + 1), 0);
  for (int p = 0; p < n; ++p) pos[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] = p + 1;
  HessenbergFunction h(static_cast<std::size_t>(n));
  for (int p = 1; p <= n; ++p) h[static_cast<std::size_t>(p - 1)] = p;
  for (auto [a, b] : g.edges()) {
    const int pa = pos[static_cast<std::size_t>(a)], pb = pos[static_cast<std::size_t>(b)];
    const int lo = std::min(pa, pb), hi = std::max(pa, pb);
    auto& slot = h[static_cast<std::size_t>(lo - 1)];
    slot = std::max(slot, hi);
  }
  return h;
}

// Lexicographic BFS; with a previous ordering, ties go to the vertex that
// appears latest in it (the "+" rule).
std::vector<int> lbfs(const Graph& g, const std::vector<int>* previous) {
  const int n = g.n();
  std::vector<int> rank_prev(static_cast<std::size_t>(n + 1), 0);
  if (previous != nullptr) {
    for (int p = 0; p < n; ++p) rank_prev[static_cast<std::size_t>((*previous)[static_cast<std::size_t>(p)])] = p;
  }
  std::vector<std::vector<int>> label(static_cast<std::size_t>(n + 1));
  std::vector<int> order;
  std::uint64_t done = 0;
  for (int step = 0; step < n; ++step) {
    int best = 0;
    for (int v = 1; v <= n; ++v) {
      if ((done & bit(v)) != 0) continue;
      if (best == 0) {
        best = v;
        continue;
      }
      const auto& lv = label[static_cast<std::size_t>(v)];
      const auto& lb = label[static_cast<std::size_t>(best)];
      if (lv > lb || (lv == lb && previous != nullptr &&
                      rank_prev[static_cast<std::size_t>(v)] > rank_prev[static_cast<std::size_t>(best)])) {
        best = v;
      }
    }
    order.push_back(best);
    done |= bit(best);
    for (std::uint64_t m = g.neighbours(best) & ~done; m != 0; m &= m - 1) {
      label[static_cast<std::size_t>(std::countr_zero(m) + 1)].push_back(n - step);
    }
  }
  return order;
}

// Lexicographically first umbrella ordering by depth-first placement.
std::optional<std::vector<int>> search_ordering(const Graph& g) {
  const int n = g.n();
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  std::vector<int> order;
  std::function<bool(std::uint64_t)> place = [&](std::uint64_t placed) -> bool {
    if (placed == all) return true;
    const std::uint64_t unplaced = all & ~placed;
    const int p = static_cast<int>(order.size());
    for (std::uint64_t cand = unplaced; cand != 0; cand &= cand - 1) {
      const int v = std::countr_zero(cand) + 1;
      const std::uint64_t nv = g.neighbours(v);
      bool ok = true;
      // Placed vertices from the first neighbour of v onwards, plus v, form a clique.
      int first = p;
      for (int a = 0; a < p; ++a) {
        if ((nv & bit(order[static_cast<std::size_t>(a)])) != 0) {
          first = a;
          break;
        }
      }
      for (int a = first; a < p && ok; ++a) {
        const int u = order[static_cast<std::size_t>(a)];
        if ((nv & bit(u)) == 0) ok = false;
        for (int b = a + 1; b < p && ok; ++b) ok = g.adjacent(u, order[static_cast<std::size_t>(b)]);
      }
      // A placed vertex with another unplaced neighbour must reach over v.
      for (int a = 0; a < p && ok; ++a) {
        const int u = order[static_cast<std::size_t>(a)];
        if ((g.neighbours(u) & unplaced & ~bit(v)) != 0 && (nv & bit(u)) == 0) ok = false;
      }
      if (!ok) continue;
      order.push_back(v);
      if (place(placed | bit(v))) return true;
      order.pop_back();
    }
    return false;
  };
  if (!place(0)) return std::nullopt;
  return order;
}

constexpr int kSweepThreshold = 12;

}  // namespace

void validate_hessenberg(const HessenbergFunction& h, bool require_connected) {
  const int n = static_cast<int>(h.size());
  if (n == 0) throw std::invalid_argument("Hessenberg function must be nonempty");
  if (n > Graph::max_vertices) throw std::invalid_argument("Hessenberg function too long");
  for (int i = 1; i <= n; ++i) {
    const int v = h[static_cast<std::size_t>(i - 1)];
    if (v < i || v > n) throw std::invalid_argument("h(" + std::to_string(i) + ") must lie in [i, n]");
    if (i > 1 && v < h[static_cast<std::size_t>(i - 2)]) throw std::invalid_argument("h must be weakly increasing");
    if (require_connected && i < n && v == i) {
      throw std::invalid_argument("h(" + std::to_string(i) + ") = i gives a disconnected graph");
    }
  }
}

HessenbergFunction parse_hessenberg(const std::string& text) {
  HessenbergFunction h;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      h.push_back(std::stoi(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad Hessenberg entry: \"" + item + "\"");
    }
  }
  validate_hessenberg(h);
  return h;
}

std::string format_hessenberg(const HessenbergFunction& h) {
  std::string out;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(h[i]);
  }
  return out;
}

Graph hessenberg_to_graph(const HessenbergFunction& h) {
  validate_hessenberg(h);
  const int n = static_cast<int>(h.size());
  std::vector<Edge> e;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= h[static_cast<std::size_t>(i - 1)]; ++j) e.emplace_back(i, j);
  }
  return Graph(n, e);
}

std::optional<IndifferenceCertificate> indifference_ordering(const Graph& g) {
  if (g.n() == 0) return IndifferenceCertificate{};
  std::optional<std::vector<int>> order;
  if (g.n() > kSweepThreshold) {
    const auto s1 = lbfs(g, nullptr);
    const auto s2 = lbfs(g, &s1);
    auto s3 = lbfs(g, &s2);
    if (!is_umbrella(g, s3)) return std::nullopt;
    order = std::move(s3);
  } else {
    order = search_ordering(g);
  }
  if (!order) return std::nullopt;
  IndifferenceCertificate cert{*order, h_of_ordering(g, *order)};
  if (!verify_certificate(g, cert)) throw std::logic_error("umbrella ordering failed verification");
  return cert;
}

bool verify_certificate(const Graph& g, const IndifferenceCertificate& cert) {
  const int n = g.n();
  if (static_cast<int>(cert.ordering.size()) != n || static_cast<int>(cert.h.size()) != n) return false;
  std::vector<int> perm(static_cast<std::size_t>(n), 0);
  for (int p = 0; p < n; ++p) {
    const int v = cert.ordering[static_cast<std::size_t>(p)];
    if (v < 1 || v > n || perm[static_cast<std::size_t>(v - 1)] != 0) return false;
    perm[static_cast<std::size_t>(v - 1)] = p + 1;
  }
  try {
    return relabel(g, perm) == hessenberg_to_graph(cert.h);
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Recognition recognize_indifference(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("recognize_indifference needs a connected graph");
  if (auto cert = indifference_ordering(g)) return *cert;
  if (auto w = find_forbidden_induced(g)) return *w;
  throw std::logic_error("graph has neither an umbrella ordering nor a forbidden induced subgraph");
}

bool is_indifference(const Graph& g) { return indifference_ordering(g).has_value(); }

int inv_h(const std::vector<int>& sigma, const HessenbergFunction& h) {
  const int n = static_cast<int>(h.size());
  if (static_cast<int>(sigma.size()) != n) throw std::invalid_argument("inv_h: size mismatch");
  int count = 0;
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= h[static_cast<std::size_t>(i - 1)]; ++j) {
      if (sigma[static_cast<std::size_t>(i - 1)] > sigma[static_cast<std::size_t>(j - 1)]) ++count;
    }
  }
  return count;
}

linalg::Polynomial betti_polynomial_hessenberg(const HessenbergFunction& h) {
  validate_hessenberg(h, true);
  const int n = static_cast<int>(h.size());
  if (n > 11) throw std::invalid_argument("betti_polynomial_hessenberg enumerates n!; n <= 11 supported");
  std::vector<int> sigma(static_cast<std::size_t>(n));
  std::iota(sigma.begin(), sigma.end(), 1);
  std::vector<long> counts;
  do {
    const auto k = static_cast<std::size_t>(inv_h(sigma, h));
    if (counts.size() <= k) counts.resize(k + 1, 0);
    ++counts[k];
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return linalg::Polynomial::from_longs(counts);
}

std::vector<HessenbergFunction> hessenberg_classes(int n) {
  if (n < 1 || n > 9) throw std::invalid_argument("hessenberg_classes supports 1 <= n <= 9");
  std::vector<HessenbergFunction> out;
  std::set<std::vector<Edge>> seen;
  HessenbergFunction h(static_cast<std::size_t>(n));
  // h(i) ranges over max(h(i-1), i+1)..n, with h(n) = n.
  auto rec = [&](auto&& self, int i) -> void {
    if (i == n) {
      h[static_cast<std::size_t>(n - 1)] = n;
      if (seen.insert(canonical_form(hessenberg_to_graph(h)).edges()).second) out.push_back(h);
      return;
    }
    const int lo = std::max(i == 1 ? 2 : h[static_cast<std::size_t>(i - 2)], i + 1);
    for (int v = lo; v <= n; ++v) {
      h[static_cast<std::size_t>(i - 1)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 1);
  return out;
}

AdiResult adi(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("adi needs a connected graph");
  const auto candidates = g.non_edges();
  const int m = static_cast<int>(candidates.size());
  for (int k = 0; k <= m; ++k) {
    std::vector<int> pick(static_cast<std::size_t>(k));
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<Edge> added;
      for (int i : pick) added.push_back(candidates[static_cast<std::size_t>(i)]);
      if (is_indifference(g.with_edges(added))) return {k, added};
      int i = k - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - k + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw std::logic_error("adi: complete graph is always reachable");
}

}  // namespace diagtype
