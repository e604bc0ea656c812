#include "diagtype/gkm.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace diagtype {

namespace {

using Monomial = std::vector<std::uint8_t>;

// Degree-d monomials in nv variables, graded-lex (exponent of x_1 first, descending).
std::vector<Monomial> monomials(int nv, int d) {
  std::vector<Monomial> out;
  if (nv == 0) {
    if (d == 0) out.emplace_back();
    return out;
  }
  Monomial m(static_cast<std::size_t>(nv), 0);
  auto rec = [&](auto& self, int v, int left) -> void {
    if (v == nv - 1) {
      m[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(left);
      out.push_back(m);
      return;
    }
    for (int e = left; e >= 0; --e) {
      m[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(e);
      self(self, v + 1, left - e);
    }
  };
  rec(rec, 0, d);
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// For the pair (a, b), 0-based a < b: reduced index of each monomial after
// x_b := x_a, in the graded-lex order of the remaining n-1 variables.
struct Reduction {
  std::vector<std::uint32_t> target;
  std::vector<std::vector<std::uint32_t>> groups;
};

Reduction reduction_for(const std::vector<Monomial>& mons, int n, int a, int b, int d) {
  const auto reduced = monomials(n - 1, d);
  std::map<Monomial, std::uint32_t> index;
  for (std::size_t k = 0; k < reduced.size(); ++k) index[reduced[k]] = static_cast<std::uint32_t>(k);
  Reduction r;
  r.groups.resize(reduced.size());
  for (std::size_t k = 0; k < mons.size(); ++k) {
    Monomial mu;
    for (int v = 0; v < n; ++v) {
      if (v == b) continue;
      int e = mons[k][static_cast<std::size_t>(v)];
      if (v == a) e += mons[k][static_cast<std::size_t>(b)];
      mu.push_back(static_cast<std::uint8_t>(e));
    }
    const auto t = index.at(mu);
    r.target.push_back(t);
    r.groups[t].push_back(static_cast<std::uint32_t>(k));
  }
  return r;
}

struct Assembly {
  std::size_t cols = 0;
  std::size_t rows_per_edge = 0;
  std::vector<Monomial> mons;
  std::map<std::pair<int, int>, Reduction> reductions;
};

Assembly prepare(const GkmGraph& gg, int i) {
  Assembly as;
  const int n = gg.n();
  as.mons = monomials(n, i);
  as.cols = gg.vertices.size() * as.mons.size();
  for (auto [a, b] : gg.pattern.edges()) as.reductions.emplace(std::make_pair(a, b), reduction_for(as.mons, n, a - 1, b - 1, i));
  as.rows_per_edge = as.reductions.empty() ? 0 : as.reductions.begin()->second.groups.size();
  return as;
}

void check_budget(const GkmGraph& gg, int i, Field field, const linalg::RankOptions& opts) {
  const auto s = lmap_shape(gg, i);
  const std::uint64_t entry = field == Field::GF2 ? 4 : 8;
  const std::uint64_t estimate = s.nnz * entry * 3 + s.rows * 24 + (field == Field::Q ? s.nnz * 16 : 0);
  if (estimate > opts.memory_budget_bytes) {
    throw ComputationError("L_" + std::to_string(i) + " has A_i = " + std::to_string(s.cols) + " columns and B_i = " +
                           std::to_string(s.rows) + " rows; estimated " + std::to_string(estimate) +
                           " bytes exceeds the budget of " + std::to_string(opts.memory_budget_bytes));
  }
}

}  // namespace

std::string field_name(Field f) { return f == Field::Q ? "q" : "f2"; }

std::vector<int> GkmGraph::weight(const GkmEdge& e) const {
  std::vector<int> w(static_cast<std::size_t>(n()), 0);
  w[static_cast<std::size_t>(e.a - 1)] = 1;
  w[static_cast<std::size_t>(e.b - 1)] = -1;
  return w;
}

std::uint32_t GkmGraph::index_of(const std::vector<int>& perm) const {
  const int k = static_cast<int>(perm.size());
  std::uint64_t rank = 0;
  for (int i = 0; i < k; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < k; ++j) smaller += perm[static_cast<std::size_t>(j)] < perm[static_cast<std::size_t>(i)] ? 1 : 0;
    rank = rank * static_cast<std::uint64_t>(k - i) + static_cast<std::uint64_t>(smaller);
  }
  return static_cast<std::uint32_t>(rank);
}

GkmGraph build_gkm_graph(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("build_gkm_graph needs a connected graph");
  if (g.n() > 10) throw std::invalid_argument("build_gkm_graph enumerates n!; n <= 10 supported");
  GkmGraph gg;
  gg.pattern = g;
  std::vector<int> p(static_cast<std::size_t>(g.n()));
  std::iota(p.begin(), p.end(), 1);
  do gg.vertices.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  for (std::size_t v = 0; v < gg.vertices.size(); ++v) {
    for (auto [a, b] : g.edges()) {
      auto q = gg.vertices[v];
      if (q[static_cast<std::size_t>(a - 1)] > q[static_cast<std::size_t>(b - 1)]) continue;
      std::swap(q[static_cast<std::size_t>(a - 1)], q[static_cast<std::size_t>(b - 1)]);
      gg.edges.push_back({static_cast<std::uint32_t>(v), gg.index_of(q), a, b});
    }
  }
  return gg;
}

GkmGraph reorient(const GkmGraph& gg, std::uint64_t seed) {
  GkmGraph out = gg;
  std::mt19937_64 rng(seed);
  for (auto& e : out.edges) {
    if ((rng() & 1U) != 0) std::swap(e.tail, e.head);
  }
  return out;
}

LmapShape lmap_shape(const GkmGraph& gg, int i) {
  const auto n = static_cast<std::uint64_t>(gg.n());
  const std::uint64_t cols = binomial(n + static_cast<std::uint64_t>(i) - 1, static_cast<std::uint64_t>(i)) * gg.vertices.size();
  const std::uint64_t rows = (n >= 2 ? binomial(n + static_cast<std::uint64_t>(i) - 2, static_cast<std::uint64_t>(i)) : 1) *
                             gg.edges.size();
  return {cols, rows, cols * gg.pattern.edge_count()};
}

linalg::SparseMatrix build_lmap(const GkmGraph& gg, int i) {
  const Assembly as = prepare(gg, i);
  const std::size_t m = as.mons.size();
  std::vector<linalg::Triplet> t;
  for (std::size_t e = 0; e < gg.edges.size(); ++e) {
    const auto& edge = gg.edges[e];
    const auto& red = as.reductions.at({edge.a, edge.b});
    for (std::size_t mu = 0; mu < red.groups.size(); ++mu) {
      const auto row = static_cast<std::uint32_t>(e * as.rows_per_edge + mu);
      for (auto k : red.groups[mu]) {
        t.push_back({row, static_cast<std::uint32_t>(edge.tail * m + k), -1});
        t.push_back({row, static_cast<std::uint32_t>(edge.head * m + k), 1});
      }
    }
  }
  return linalg::SparseMatrix(gg.edges.size() * as.rows_per_edge, as.cols, std::move(t));
}

std::size_t equivariant_betti(const GkmGraph& gg, int i, Field field, const GkmOptions& opts) {
  if (i < 0) throw std::invalid_argument("equivariant_betti: negative degree");
  check_budget(gg, i, field, opts.rank);
  const Assembly as = prepare(gg, i);
  if (gg.edges.empty()) return as.cols;
  std::size_t rank = 0;
  if (field == Field::GF2) {
    const std::size_t m = as.mons.size();
    std::vector<linalg::Gf2Row> rows(gg.edges.size() * as.rows_per_edge);
    const auto ne = static_cast<std::int64_t>(gg.edges.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t e = 0; e < ne; ++e) {
      const auto& edge = gg.edges[static_cast<std::size_t>(e)];
      const auto& red = as.reductions.at({edge.a, edge.b});
      for (std::size_t mu = 0; mu < red.groups.size(); ++mu) {
        auto& row = rows[static_cast<std::size_t>(e) * as.rows_per_edge + mu];
        for (auto k : red.groups[mu]) {
          row.push_back(static_cast<std::uint32_t>(edge.tail * m + k));
          row.push_back(static_cast<std::uint32_t>(edge.head * m + k));
        }
      }
    }
    rank = linalg::rank_gf2_rows(std::move(rows), as.cols, opts.rank);
  } else {
    rank = linalg::rank_rational(build_lmap(gg, i), opts.rank);
  }
  return as.cols - rank;
}

OrdinaryBetti ordinary_betti_from_equivariant(const std::vector<std::size_t>& dims, int k) {
  std::vector<mpz_class> c;
  for (auto d : dims) c.emplace_back(static_cast<unsigned long>(d));
  OrdinaryBetti out;
  out.values = linalg::series_expand_product(linalg::Polynomial(c), k, static_cast<int>(dims.size()) - 1);
  out.negative = std::any_of(out.values.begin(), out.values.end(), [](const mpz_class& v) { return v < 0; });
  return out;
}

GkmBettiReport gkm_betti_report(const Graph& g, Field field, int max_degree, const GkmOptions& opts) {
  const GkmGraph gg = build_gkm_graph(g);
  GkmBettiReport r;
  r.field = field;
  r.torus_rank = g.n();
  for (int i = 0; i <= max_degree; ++i) r.equivariant.push_back(equivariant_betti(gg, i, field, opts));
  r.ordinary = ordinary_betti_from_equivariant(r.equivariant, r.torus_rank);
  const int top = static_cast<int>(g.edge_count());
  if (2 * max_degree >= top) {
    std::vector<long> full(static_cast<std::size_t>(top + 1), 0);
    for (int i = 0; 2 * i <= top; ++i) {
      const long v = r.ordinary.values[static_cast<std::size_t>(i)].get_si();
      full[static_cast<std::size_t>(i)] = v;
      full[static_cast<std::size_t>(top - i)] = v;
    }
    for (int i = 0; i <= max_degree && i <= top; ++i) {
      if (r.ordinary.values[static_cast<std::size_t>(i)] != full[static_cast<std::size_t>(i)]) r.duality_mismatch = true;
    }
    r.completed = full;
    r.total_by_duality = std::accumulate(full.begin(), full.end(), 0L);
  }
  return r;
}

GkmTotal gkm_total_betti(const Graph& g, Field field, const GkmOptions& opts) {
  GkmTotal out;
  const int r = (static_cast<int>(g.edge_count()) + 1) / 2;
  try {
    out.report = gkm_betti_report(g, field, r, opts);
  } catch (const ComputationError& e) {
    out.reason = e.what();
    return out;
  }
  out.determined = out.report.total_by_duality.has_value();
  if (out.determined) out.total = *out.report.total_by_duality;
  return out;
}

std::string gkm_to_dot(const GkmGraph& gg) {
  std::ostringstream out;
  out << "digraph gkm {\n";
  for (std::size_t v = 0; v < gg.vertices.size(); ++v) {
    out << "  v" << v << " [label=\"";
    for (int x : gg.vertices[v]) out << x;
    out << "\"];\n";
  }
  for (const auto& e : gg.edges) {
    out << "  v" << e.tail << " -> v" << e.head << " [label=\"e" << e.a << "-e" << e.b << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

std::string gkm_report_json(const GkmBettiReport& r) {
  nlohmann::json j;
  j["field"] = field_name(r.field);
  j["torus_rank"] = r.torus_rank;
  j["equivariant"] = r.equivariant;
  j["ordinary"] = nlohmann::json::array();
  for (const auto& v : r.ordinary.values) j["ordinary"].push_back(v.get_si());
  j["negative_coefficient"] = r.ordinary.negative;
  if (r.total_by_duality) {
    j["completed"] = r.completed;
    j["total_by_duality"] = *r.total_by_duality;
    j["duality_mismatch"] = r.duality_mismatch;
  } else {
    j["total_by_duality"] = nullptr;
  }
  return j.dump();
}

}  // namespace diagtype
