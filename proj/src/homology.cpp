#include "diagtype/homology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace diagtype {

std::string coefficient_name(Coefficients c) {
  switch (c) {
    case Coefficients::GF2:
      return "f2";
    case Coefficients::Q:
      return "q";
    case Coefficients::Z:
      return "z";
  }
  return "?";
}

std::size_t SimplicialComplex::face_count(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return flat_[static_cast<std::size_t>(d)].size() / static_cast<std::size_t>(d + 1);
}

std::size_t SimplicialComplex::total_faces() const {
  std::size_t t = 0;
  for (int d = 0; d <= dimension(); ++d) t += face_count(d);
  return t;
}

std::size_t SimplicialComplex::index_of(int d, const std::uint32_t* tuple) const {
  const auto stride = static_cast<std::size_t>(d + 1);
  std::size_t lo = 0, hi = face_count(d);
  const auto& f = flat_[static_cast<std::size_t>(d)];
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (std::lexicographical_compare(f.data() + mid * stride, f.data() + (mid + 1) * stride, tuple, tuple + stride)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == face_count(d) || !std::equal(tuple, tuple + stride, f.data() + lo * stride)) {
    throw std::out_of_range("face not in complex");
  }
  return lo;
}

long SimplicialComplex::euler_characteristic() const {
  long chi = 0;
  for (int d = 0; d <= dimension(); ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(face_count(d));
  return chi;
}

SimplicialComplex SimplicialComplex::from_maximal_faces(std::size_t vertices,
                                                        const std::vector<std::vector<std::uint32_t>>& faces) {
  std::vector<std::set<std::vector<std::uint32_t>>> by_dim;
  for (auto f : faces) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end()) throw std::invalid_argument("face with repeated vertex");
    if (f.empty()) continue;
    if (f.back() >= vertices) throw std::invalid_argument("face vertex out of range");
    const std::size_t k = f.size();
    if (k > 24) throw std::invalid_argument("face too large to close under subsets");
    if (by_dim.size() < k) by_dim.resize(k);
    for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
      std::vector<std::uint32_t> sub;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1U) sub.push_back(f[i]);
      }
      by_dim[sub.size() - 1].insert(std::move(sub));
    }
  }
  SimplicialComplex sc;
  sc.vertices_ = vertices;
  for (const auto& s : by_dim) {
    std::vector<std::uint32_t> flat;
    for (const auto& f : s) flat.insert(flat.end(), f.begin(), f.end());
    sc.flat_.push_back(std::move(flat));
  }
  return sc;
}

SimplicialComplex order_complex(const GradedPoset& p, int max_dim, std::size_t max_simplices) {
  const std::size_t n = p.size();
  std::vector<std::vector<std::uint32_t>> above(n);
  for (std::size_t i = 0; i < n; ++i) above[i] = p.strictly_above(static_cast<std::uint32_t>(i));
  SimplicialComplex sc;
  sc.vertices_ = n;
  std::size_t total = 0;
  std::vector<std::uint32_t> chain;
  bool cut = false;
  auto extend = [&](auto& self) -> void {
    const std::size_t d = chain.size() - 1;
    if (sc.flat_.size() <= d) sc.flat_.resize(d + 1);
    sc.flat_[d].insert(sc.flat_[d].end(), chain.begin(), chain.end());
    if (++total > max_simplices) {
      throw ComputationError("order complex exceeds " + std::to_string(max_simplices) + " simplices");
    }
    const auto& up = above[chain.back()];
    if (up.empty()) return;
    if (max_dim >= 0 && static_cast<int>(d) >= max_dim) {
      cut = true;
      return;
    }
    for (auto u : up) {
      chain.push_back(u);
      self(self);
      chain.pop_back();
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    chain.assign(1, static_cast<std::uint32_t>(i));
    extend(extend);
  }
  sc.truncated_ = cut;
  return sc;
}

namespace {

// Rows of the transpose of boundary[d]: one row per d-face listing its facets.
template <class Emit>
void for_each_facet(const SimplicialComplex& sc, int d, std::size_t face, Emit&& emit) {
  std::vector<std::uint32_t> sub(static_cast<std::size_t>(d));
  const std::uint32_t* f = sc.face(d, face);
  for (int k = 0; k <= d; ++k) {
    std::size_t w = 0;
    for (int j = 0; j <= d; ++j) {
      if (j != k) sub[w++] = f[j];
    }
    emit(sc.index_of(d - 1, sub.data()), k % 2 == 0 ? 1 : -1);
  }
}

linalg::SparseMatrix boundary_matrix(const SimplicialComplex& sc, int d) {
  const std::size_t cols = sc.face_count(d);
  if (d == 0) {
    std::vector<linalg::Triplet> t;
    for (std::size_t i = 0; i < cols; ++i) t.push_back({0, static_cast<std::uint32_t>(i), 1});
    return linalg::SparseMatrix(1, cols, std::move(t));
  }
  std::vector<linalg::Triplet> t(cols * static_cast<std::size_t>(d + 1));
  const auto ncols = static_cast<std::int64_t>(cols);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < ncols; ++c) {
    std::size_t slot = static_cast<std::size_t>(c) * static_cast<std::size_t>(d + 1);
    for_each_facet(sc, d, static_cast<std::size_t>(c), [&](std::size_t row, int sign) {
      t[slot++] = {static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(c), sign};
    });
  }
  return linalg::SparseMatrix(sc.face_count(d - 1), cols, std::move(t));
}

std::size_t boundary_rank_gf2(const SimplicialComplex& sc, int d, const linalg::RankOptions& opts) {
  const std::size_t count = sc.face_count(d);
  if (count == 0) return 0;
  if (d == 0) return 1;
  std::vector<linalg::Gf2Row> rows(count);
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < n; ++c) {
    auto& row = rows[static_cast<std::size_t>(c)];
    for_each_facet(sc, d, static_cast<std::size_t>(c),
                   [&](std::size_t r, int) { row.push_back(static_cast<std::uint32_t>(r)); });
  }
  return linalg::rank_gf2_rows(std::move(rows), sc.face_count(d - 1), opts);
}

}  // namespace

ChainComplex chain_complex(const SimplicialComplex& sc) {
  ChainComplex cc;
  for (int d = 0; d <= sc.dimension(); ++d) cc.boundary.push_back(boundary_matrix(sc, d));
  return cc;
}

bool boundary_squares_to_zero(const ChainComplex& cc) {
  for (std::size_t d = 1; d < cc.boundary.size(); ++d) {
    const auto& lo = cc.boundary[d - 1];
    const auto& hi = cc.boundary[d];
    if (lo.cols() != hi.rows()) return false;
    // Column c of the product is lo applied to column c of hi.
    const auto hit = hi.transposed();
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> lo_cols(lo.cols());
    for (const auto& t : lo.entries()) lo_cols[t.col].emplace_back(t.row, t.value);
    std::vector<std::int64_t> acc(lo.rows(), 0);
    std::size_t start = 0;
    const auto& e = hit.entries();
    while (start < e.size()) {
      std::size_t end = start;
      while (end < e.size() && e[end].row == e[start].row) ++end;
      std::vector<std::uint32_t> touched;
      for (std::size_t k = start; k < end; ++k) {
        for (auto [r, v] : lo_cols[e[k].col]) {
          acc[r] += v * e[k].value;
          touched.push_back(r);
        }
      }
      for (auto r : touched) {
        if (acc[r] != 0) return false;
      }
      for (auto r : touched) acc[r] = 0;
      start = end;
    }
  }
  return true;
}

std::vector<long> reduced_betti(const SimplicialComplex& sc, Coefficients coeff, const HomologyOptions& opts) {
  if (coeff == Coefficients::Z) throw std::invalid_argument("reduced_betti takes a field; use integral_homology for Z");
  const int dim = sc.dimension();
  std::vector<std::size_t> rk(static_cast<std::size_t>(dim + 2), 0);
  for (int d = 0; d <= dim; ++d) {
    if (coeff == Coefficients::GF2) {
      rk[static_cast<std::size_t>(d)] = boundary_rank_gf2(sc, d, opts.rank);
    } else {
      rk[static_cast<std::size_t>(d)] = linalg::rank_rational(boundary_matrix(sc, d), opts.rank);
    }
  }
  const int top = sc.truncated() ? dim - 1 : dim;
  std::vector<long> betti;
  for (int d = 0; d <= top; ++d) {
    betti.push_back(static_cast<long>(sc.face_count(d)) - static_cast<long>(rk[static_cast<std::size_t>(d)]) -
                    static_cast<long>(rk[static_cast<std::size_t>(d + 1)]));
  }
  return betti;
}

std::vector<IntegralGroup> integral_homology(const SimplicialComplex& sc, const HomologyOptions& opts) {
  const int dim = sc.dimension();
  std::vector<std::vector<mpz_class>> divisors(static_cast<std::size_t>(dim + 2));
  for (int d = 0; d <= dim; ++d) {
    divisors[static_cast<std::size_t>(d)] = linalg::smith_normal_form(boundary_matrix(sc, d).transposed(), opts.smith);
  }
  const int top = sc.truncated() ? dim - 1 : dim;
  std::vector<IntegralGroup> out;
  for (int d = 0; d <= top; ++d) {
    IntegralGroup g;
    const auto& below = divisors[static_cast<std::size_t>(d)];
    const auto& above = divisors[static_cast<std::size_t>(d + 1)];
    g.rank = static_cast<long>(sc.face_count(d)) - static_cast<long>(below.size()) - static_cast<long>(above.size());
    for (const auto& v : above) {
      if (v != 1) g.torsion.push_back(v);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::string betti_report_json(Coefficients coeff, const std::vector<long>& betti, long reduced_euler) {
  nlohmann::json j;
  j["coeff"] = coefficient_name(coeff);
  j["reduced"] = true;
  j["betti"] = betti;
  j["euler"] = reduced_euler;
  return j.dump();
}

}  // namespace diagtype
