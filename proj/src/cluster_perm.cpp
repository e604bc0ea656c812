#include "diagtype/cluster_perm.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace diagtype {

namespace {

std::uint64_t bit(int v) { return std::uint64_t{1} << (v - 1); }

bool induces_connected(const Graph& g, std::uint64_t mask) {
  if (mask == 0) return false;
  std::uint64_t reach = mask & (~mask + 1), frontier = reach;
  while (frontier != 0) {
    std::uint64_t next = 0;
    for (std::uint64_t f = frontier; f != 0; f &= f - 1) next |= g.neighbours(std::countr_zero(f) + 1);
    next &= mask;
    frontier = next & ~reach;
    reach |= next;
  }
  return reach == mask;
}

std::string block_string(std::uint64_t mask, int n) {
  std::string s;
  bool first = true;
  for (std::uint64_t m = mask; m != 0; m &= m - 1) {
    if (!first && n >= 10) s += ',';
    s += std::to_string(std::countr_zero(m) + 1);
    first = false;
  }
  return s;
}

std::uint64_t factorial(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// Words over block indices: word[l-1] is the block receiving label l. The
// distinct words are the assignments of the clustering.
std::vector<std::vector<std::uint8_t>> assignment_words(const Clustering& c) {
  std::vector<std::uint8_t> w;
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    w.insert(w.end(), static_cast<std::size_t>(std::popcount(c.blocks[b])), static_cast<std::uint8_t>(b));
  }
  std::vector<std::vector<std::uint8_t>> out;
  do out.push_back(w);
  while (std::next_permutation(w.begin(), w.end()));
  return out;
}

std::uint64_t pack_word(const std::vector<std::uint8_t>& w) {
  std::uint64_t k = 0;
  for (auto x : w) k = (k << 4U) | x;
  return k;
}

// Least coset representative: block b hands out its labels in increasing
// order to its vertices in increasing order.
std::vector<int> labels_from_word(const Clustering& c, const std::vector<std::uint8_t>& w) {
  std::vector<int> labels(static_cast<std::size_t>(c.n), 0);
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    std::uint64_t m = c.blocks[b];
    for (int l = 1; l <= c.n; ++l) {
      if (w[static_cast<std::size_t>(l - 1)] != b) continue;
      labels[static_cast<std::size_t>(std::countr_zero(m))] = l;
      m &= m - 1;
    }
  }
  return labels;
}

std::string assigned_label(const Clustering& c, const std::vector<std::uint8_t>& w) {
  std::string s;
  for (std::size_t b = 0; b < c.blocks.size(); ++b) {
    if (b != 0) s += '|';
    s += block_string(c.blocks[b], c.n);
    s += ':';
    std::uint64_t lm = 0;
    for (int l = 1; l <= c.n; ++l) {
      if (w[static_cast<std::size_t>(l - 1)] == b) lm |= bit(l);
    }
    s += block_string(lm, c.n);
  }
  return s;
}

// Block index in `to` of each block of the finer clustering `from`.
std::vector<std::uint8_t> projection(const Clustering& from, const Clustering& to) {
  std::vector<std::uint8_t> m;
  for (auto b : from.blocks) m.push_back(static_cast<std::uint8_t>(to.block_of(std::countr_zero(b) + 1)));
  return m;
}

void require_connected(const Graph& g, const char* what) {
  if (!g.connected()) throw std::invalid_argument(std::string(what) + " needs a connected graph");
  if (g.n() > 16) throw std::invalid_argument(std::string(what) + " supports at most 16 vertices");
}

}  // namespace

int Clustering::block_of(int v) const {
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if ((blocks[b] & bit(v)) != 0) return static_cast<int>(b);
  }
  throw std::out_of_range("vertex not covered by clustering");
}

std::vector<std::vector<int>> Clustering::block_lists() const {
  std::vector<std::vector<int>> out;
  for (auto b : blocks) {
    std::vector<int> vs;
    for (std::uint64_t m = b; m != 0; m &= m - 1) vs.push_back(std::countr_zero(m) + 1);
    out.push_back(std::move(vs));
  }
  return out;
}

std::string Clustering::label() const {
  std::string s;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (b != 0) s += '|';
    s += block_string(blocks[b], n);
  }
  return s;
}

Clustering components_of(int n, const std::vector<Edge>& edges) {
  const Graph h(n, edges);
  Clustering c{n, {}};
  for (const auto& comp : h.components()) {
    std::uint64_t m = 0;
    for (int v : comp) m |= bit(v);
    c.blocks.push_back(m);
  }
  return c;
}

GradedPoset::GradedPoset(std::vector<int> ranks, std::vector<std::pair<std::uint32_t, std::uint32_t>> covers,
                         std::vector<std::string> labels, bool strict_ranks)
    : ranks_(std::move(ranks)), covers_(std::move(covers)), labels_(std::move(labels)) {
  const std::size_t n = ranks_.size();
  if (labels_.empty()) labels_.resize(n);
  if (labels_.size() != n) throw std::invalid_argument("poset: label count mismatch");
  up_.resize(n);
  down_.resize(n);
  std::sort(covers_.begin(), covers_.end());
  covers_.erase(std::unique(covers_.begin(), covers_.end()), covers_.end());
  for (auto [lo, hi] : covers_) {
    if (lo >= n || hi >= n || lo >= hi) throw std::invalid_argument("poset: covers must go from lower to higher ids");
    if (ranks_[hi] < ranks_[lo] || (strict_ranks && ranks_[hi] != ranks_[lo] + 1)) {
      throw std::invalid_argument("poset: rank does not increase along cover " + std::to_string(lo) + "<" +
                                  std::to_string(hi));
    }
    up_[lo].push_back(hi);
    down_[hi].push_back(lo);
  }
  if (strict_ranks) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((ranks_[i] == 0) != down_[i].empty()) throw std::invalid_argument("poset: rank-0 elements must be the minimal ones");
    }
  }
}

int GradedPoset::max_rank() const { return ranks_.empty() ? -1 : *std::max_element(ranks_.begin(), ranks_.end()); }

std::size_t GradedPoset::count_at_rank(int r) const {
  return static_cast<std::size_t>(std::count(ranks_.begin(), ranks_.end(), r));
}

std::vector<std::uint32_t> GradedPoset::minimal_elements() const {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < size(); ++i) {
    if (down_[i].empty()) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

std::vector<std::uint32_t> GradedPoset::strictly_above(std::uint32_t i) const {
  std::vector<char> seen(size(), 0);
  std::vector<std::uint32_t> stack(up_[i].begin(), up_[i].end()), out;
  while (!stack.empty()) {
    const auto x = stack.back();
    stack.pop_back();
    if (seen[x] != 0) continue;
    seen[x] = 1;
    out.push_back(x);
    for (auto y : up_[x]) {
      if (seen[y] == 0) stack.push_back(y);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool GradedPoset::leq(std::uint32_t a, std::uint32_t b) const {
  if (a == b) return true;
  const auto above = strictly_above(a);
  return std::binary_search(above.begin(), above.end(), b);
}

ClusteringLattice clusterings(const Graph& g) {
  require_connected(g, "clusterings");
  const int n = g.n();
  std::vector<Clustering> all;
  // Restricted growth strings enumerate set partitions.
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<std::uint64_t> blocks;
  auto emit = [&]() {
    for (auto b : blocks) {
      if (!induces_connected(g, b)) return;
    }
    all.push_back(Clustering{n, blocks});
  };
  auto rec = [&](auto& self, int v) -> void {
    if (v > n) {
      emit();
      return;
    }
    for (std::size_t b = 0; b <= blocks.size(); ++b) {
      if (b == blocks.size()) {
        blocks.push_back(bit(v));
        self(self, v + 1);
        blocks.pop_back();
      } else {
        blocks[b] |= bit(v);
        self(self, v + 1);
        blocks[b] &= ~bit(v);
      }
    }
  };
  rec(rec, 1);
  std::stable_sort(all.begin(), all.end(), [](const Clustering& a, const Clustering& b) { return a.rank() < b.rank(); });

  std::map<std::vector<std::uint64_t>, std::uint32_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i].blocks] = static_cast<std::uint32_t>(i);
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& bl = all[i].blocks;
    for (std::size_t a = 0; a < bl.size(); ++a) {
      for (std::size_t b = a + 1; b < bl.size(); ++b) {
        bool touching = false;
        for (std::uint64_t m = bl[a]; m != 0 && !touching; m &= m - 1) {
          touching = (g.neighbours(std::countr_zero(m) + 1) & bl[b]) != 0;
        }
        if (!touching) continue;
        std::vector<std::uint64_t> merged;
        for (std::size_t k = 0; k < bl.size(); ++k) {
          if (k == b) continue;
          merged.push_back(k == a ? (bl[a] | bl[b]) : bl[k]);
        }
        std::sort(merged.begin(), merged.end(), [](std::uint64_t x, std::uint64_t y) {
          return std::countr_zero(x) < std::countr_zero(y);
        });
        covers.emplace_back(static_cast<std::uint32_t>(i), index.at(merged));
      }
    }
  }
  std::vector<int> ranks;
  std::vector<std::string> labels;
  for (const auto& c : all) {
    ranks.push_back(c.rank());
    labels.push_back(c.label());
  }
  return {GradedPoset(std::move(ranks), std::move(covers), std::move(labels)), std::move(all)};
}

ClusterPermutohedron cluster_permutohedron(const Graph& g, const PosetOptions& opts) {
  ClusteringLattice lat = clusterings(g);
  const int n = g.n();
  std::uint64_t expected = 0;
  for (const auto& c : lat.clusterings) {
    std::uint64_t denom = 1;
    for (auto b : c.blocks) denom *= factorial(std::popcount(b));
    expected += factorial(n) / denom;
  }
  if (expected > opts.max_elements) {
    throw ComputationError("cluster-permutohedron has " + std::to_string(expected) + " elements, cap is " +
                           std::to_string(opts.max_elements));
  }
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index(lat.clusterings.size());
  std::vector<std::vector<std::vector<std::uint8_t>>> words(lat.clusterings.size());
  std::vector<AssignedElement> elements;
  std::vector<int> ranks;
  std::vector<std::string> labels;
  elements.reserve(expected);
  for (std::size_t c = 0; c < lat.clusterings.size(); ++c) {
    const auto& cl = lat.clusterings[c];
    words[c] = assignment_words(cl);
    for (const auto& w : words[c]) {
      index[c].emplace(pack_word(w), static_cast<std::uint32_t>(elements.size()));
      elements.push_back({static_cast<std::uint32_t>(c), labels_from_word(cl, w)});
      ranks.push_back(cl.rank());
      labels.push_back(assigned_label(cl, w));
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
  for (auto [lo, hi] : lat.poset.covers()) {
    const auto proj = projection(lat.clusterings[lo], lat.clusterings[hi]);
    for (const auto& w : words[lo]) {
      std::vector<std::uint8_t> up(w.size());
      for (std::size_t l = 0; l < w.size(); ++l) up[l] = proj[w[l]];
      covers.emplace_back(index[lo].at(pack_word(w)), index[hi].at(pack_word(up)));
    }
  }
  GradedPoset poset(std::move(ranks), std::move(covers), std::move(labels));
  return {g, std::move(lat), std::move(poset), std::move(elements)};
}

Graphicahedron graphicahedron(const Graph& g, const PosetOptions& opts) {
  require_connected(g, "graphicahedron");
  const auto& edges = g.edges();
  const std::size_t m = edges.size();
  if (m > 24) throw std::invalid_argument("graphicahedron supports at most 24 edges");
  const int n = g.n();
  struct Slot {
    std::uint64_t d;
    Clustering comp;
    std::vector<std::vector<std::uint8_t>> words;
  };
  std::vector<Slot> slots;
  std::uint64_t expected = 0;
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << m); ++d) {
    std::vector<Edge> sub;
    for (std::size_t k = 0; k < m; ++k) {
      if ((d >> k) & 1U) sub.push_back(edges[k]);
    }
    Clustering comp = components_of(n, sub);
    std::uint64_t denom = 1;
    for (auto b : comp.blocks) denom *= factorial(std::popcount(b));
    expected += factorial(n) / denom;
    if (expected > opts.max_elements) {
      throw ComputationError("graphicahedron exceeds the element cap of " + std::to_string(opts.max_elements));
    }
    slots.push_back({d, std::move(comp), {}});
  }
  std::stable_sort(slots.begin(), slots.end(), [](const Slot& a, const Slot& b) {
    if (a.comp.rank() != b.comp.rank()) return a.comp.rank() < b.comp.rank();
    return std::popcount(a.d) < std::popcount(b.d);
  });
  std::vector<std::uint32_t> slot_of(std::size_t{1} << m);
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> index(slots.size());
  Graphicahedron out{g, {}, {}, {}};
  std::vector<int> ranks;
  std::vector<std::string> labels;
  std::uint32_t next = 0;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    auto& sl = slots[s];
    slot_of[sl.d] = static_cast<std::uint32_t>(s);
    sl.words = assignment_words(sl.comp);
    for (const auto& w : sl.words) {
      index[s].emplace(pack_word(w), next++);
      out.edge_sets.push_back(sl.d);
      out.labels.push_back(labels_from_word(sl.comp, w));
      ranks.push_back(sl.comp.rank());
      std::string lab = "{";
      for (std::size_t k = 0; k < m; ++k) {
        if ((sl.d >> k) & 1U) {
          if (lab.size() > 1) lab += ',';
          lab += std::to_string(edges[k].first) + "-" + std::to_string(edges[k].second);
        }
      }
      labels.push_back(lab + "} " + assigned_label(sl.comp, w));
    }
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& sl = slots[s];
    for (std::size_t k = 0; k < m; ++k) {
      if ((sl.d >> k) & 1U) continue;
      const std::size_t t = slot_of[sl.d | (std::uint64_t{1} << k)];
      const auto proj = projection(sl.comp, slots[t].comp);
      for (const auto& w : sl.words) {
        std::vector<std::uint8_t> up(w.size());
        for (std::size_t l = 0; l < w.size(); ++l) up[l] = proj[w[l]];
        covers.emplace_back(index[s].at(pack_word(w)), index[t].at(pack_word(up)));
      }
    }
  }
  out.poset = GradedPoset(std::move(ranks), std::move(covers), std::move(labels), false);
  return out;
}

std::vector<std::uint32_t> tree_graphicahedron_map(const Graphicahedron& gr, const ClusterPermutohedron& cl) {
  const auto& g = gr.graph;
  if (static_cast<int>(g.edge_count()) != g.n() - 1) throw std::invalid_argument("tree_graphicahedron_map needs a tree");
  std::map<std::pair<std::vector<std::uint64_t>, std::vector<int>>, std::uint32_t> cl_index;
  for (std::size_t i = 0; i < cl.elements.size(); ++i) {
    const auto& e = cl.elements[i];
    cl_index[{cl.lattice.clusterings[e.clustering].blocks, e.labels}] = static_cast<std::uint32_t>(i);
  }
  std::vector<std::uint32_t> f;
  for (std::size_t i = 0; i < gr.edge_sets.size(); ++i) {
    std::vector<Edge> sub;
    for (std::size_t k = 0; k < g.edge_count(); ++k) {
      if ((gr.edge_sets[i] >> k) & 1U) sub.push_back(g.edges()[k]);
    }
    f.push_back(cl_index.at({components_of(g.n(), sub).blocks, gr.labels[i]}));
  }
  return f;
}

Skeleton skeleton(const GradedPoset& p, int r) {
  if (r < 0) throw std::invalid_argument("skeleton rank must be nonnegative");
  std::vector<std::uint32_t> newid(p.size(), UINT32_MAX), origin;
  std::vector<int> ranks;
  std::vector<std::string> labels;
  bool strict = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.rank(i) > r) continue;
    newid[i] = static_cast<std::uint32_t>(origin.size());
    origin.push_back(static_cast<std::uint32_t>(i));
    ranks.push_back(p.rank(i));
    labels.push_back(p.label(i));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers;
  for (auto [lo, hi] : p.covers()) {
    if (p.rank(hi) != p.rank(lo) + 1) strict = false;
    if (newid[lo] != UINT32_MAX && newid[hi] != UINT32_MAX) covers.emplace_back(newid[lo], newid[hi]);
  }
  return {GradedPoset(std::move(ranks), std::move(covers), std::move(labels), strict), std::move(origin)};
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> one_skeleton(const ClusterPermutohedron& cl) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::size_t i = 0; i < cl.poset.size(); ++i) {
    if (cl.poset.rank(i) != 1) continue;
    const auto& d = cl.poset.down(i);
    if (d.size() != 2) throw std::logic_error("rank-1 element without exactly two minimal faces");
    out.emplace_back(std::min(d[0], d[1]), std::max(d[0], d[1]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_order_isomorphism(const GradedPoset& a, const GradedPoset& b, const std::vector<std::uint32_t>& f) {
  if (a.size() != b.size() || f.size() != a.size() || a.covers().size() != b.covers().size()) return false;
  std::vector<char> hit(b.size(), 0);
  for (auto x : f) {
    if (x >= b.size() || hit[x] != 0) return false;
    hit[x] = 1;
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> mapped;
  for (auto [lo, hi] : a.covers()) mapped.emplace_back(f[lo], f[hi]);
  std::sort(mapped.begin(), mapped.end());
  return mapped == b.covers();
}

std::string poset_to_json(const GradedPoset& p) {
  nlohmann::json j;
  j["elements"] = nlohmann::json::array();
  for (std::size_t i = 0; i < p.size(); ++i) {
    j["elements"].push_back({{"id", i}, {"rank", p.rank(i)}, {"label", p.label(i)}});
  }
  j["covers"] = nlohmann::json::array();
  for (auto [lo, hi] : p.covers()) j["covers"].push_back({lo, hi});
  return j.dump();
}

std::string poset_to_dot(const GradedPoset& p, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=BT;\n";
  for (int r = 0; r <= p.max_rank(); ++r) {
    out << "  { rank=same;";
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p.rank(i) == r) out << " n" << i << " [label=\"" << p.label(i) << "\"];";
    }
    out << " }\n";
  }
  for (auto [lo, hi] : p.covers()) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace diagtype
