#include "diagtype/smith.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagtype::linalg {

namespace {

struct ZEntry {
  std::uint32_t col;
  std::int64_t val;
};
using ZRow = std::vector<ZEntry>;

bool is_unit(std::int64_t v) { return v == 1 || v == -1; }

void normalize_divisors(std::vector<mpz_class>& d) {
  for (auto& v : d) v = abs(v);
  d.erase(std::remove(d.begin(), d.end(), 0), d.end());
  std::sort(d.begin(), d.end());
  const auto first = static_cast<std::size_t>(std::upper_bound(d.begin(), d.end(), 1) - d.begin());
  // Restore the divisibility chain: (a, b) -> (gcd, lcm) until stable.
  for (std::size_t i = first; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      d[i] = g;
      d[j] = l;
    }
  }
  std::sort(d.begin(), d.end());
}

}  // namespace

namespace reference {

std::vector<mpz_class> smith_normal_form_dense(const std::vector<std::vector<mpz_class>>& input) {
  auto a = input;
  const std::size_t rows = a.size(), cols = rows == 0 ? 0 : a[0].size();
  std::vector<mpz_class> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    // Pivot: nonzero entry of least absolute value in the remaining block.
    std::size_t pr = rows, pc = cols;
    for (std::size_t r = t; r < rows; ++r) {
      for (std::size_t c = t; c < cols; ++c) {
        if (a[r][c] != 0 && (pr == rows || abs(a[r][c]) < abs(a[pr][pc]))) {
          pr = r;
          pc = c;
        }
      }
    }
    if (pr == rows) break;
    std::swap(a[t], a[pr]);
    for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (a[r][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t c = t; c < cols; ++c) a[r][c] -= q * a[t][c];
        if (a[r][t] != 0) {
          std::swap(a[t], a[r]);
          clean = false;
        }
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (a[t][c] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][c].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t r = t; r < rows; ++r) a[r][c] -= q * a[r][t];
        if (a[t][c] != 0) {
          for (std::size_t r = 0; r < rows; ++r) std::swap(a[r][t], a[r][c]);
          clean = false;
        }
      }
    }
    diag.push_back(a[t][t]);
    ++t;
  }
  normalize_divisors(diag);
  return diag;
}

}  // namespace reference

namespace {

// Unit pivots kept in insertion order: pivot j has no entries in the columns of
// pivots i < j, so reducing a row in increasing pivot index terminates.
class UnitEliminator {
 public:
  explicit UnitEliminator(std::size_t cols) : pivot_at_(cols, -1), count_(cols, 0) {}

  void count(const ZRow& r) {
    for (const auto& e : r) ++count_[e.col];
  }

  struct Scratch {
    std::vector<std::int64_t> vals;
    std::vector<char> seen;
    std::vector<std::uint32_t> touched;
    std::vector<std::pair<std::int64_t, std::uint32_t>> heap;
  };

  Scratch scratch() const {
    Scratch s;
    s.vals.assign(pivot_at_.size(), 0);
    s.seen.assign(pivot_at_.size(), 0);
    return s;
  }

  // Reduces `row` in place; returns false on overflow.
  bool reduce(ZRow& row, Scratch& s) const {
    auto& heap = s.heap;
    heap.clear();
    for (const auto& e : row) {
      if (pivot_at_[e.col] >= 0) heap.emplace_back(-pivot_at_[e.col], e.col);
    }
    if (heap.empty()) return true;
    s.touched.clear();
    for (const auto& e : row) {
      s.vals[e.col] = e.val;
      s.seen[e.col] = 1;
      s.touched.push_back(e.col);
    }
    std::make_heap(heap.begin(), heap.end());
    bool ok = true;
    while (!heap.empty()) {
      std::pop_heap(heap.begin(), heap.end());
      const auto c = heap.back().second;
      heap.pop_back();
      const std::int64_t f = s.vals[c];
      if (f == 0) continue;
      for (const auto& pe : pivots_[static_cast<std::size_t>(pivot_at_[c])]) {
        const auto x = pe.col;
        if (s.seen[x] == 0) {
          s.seen[x] = 1;
          s.touched.push_back(x);
        }
        const bool was_zero = s.vals[x] == 0;
        std::int64_t prod = 0;
        if (__builtin_mul_overflow(f, pe.val, &prod) || __builtin_sub_overflow(s.vals[x], prod, &s.vals[x])) ok = false;
        if (was_zero && x != c && pivot_at_[x] >= 0) {
          heap.emplace_back(-pivot_at_[x], x);
          std::push_heap(heap.begin(), heap.end());
        }
      }
    }
    row.clear();
    std::sort(s.touched.begin(), s.touched.end());
    for (const auto x : s.touched) {
      if (s.vals[x] != 0) row.push_back({x, s.vals[x]});
      s.vals[x] = 0;
      s.seen[x] = 0;
    }
    return ok;
  }

  // Takes a reduced row as a pivot if it has a unit entry.
  bool try_pivot(ZRow& row) {
    std::size_t best = row.size();
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (is_unit(row[k].val) && (best == row.size() || count_[row[k].col] < count_[row[best].col])) best = k;
    }
    if (best == row.size()) return false;
    if (row[best].val < 0) {
      for (auto& e : row) e.val = -e.val;
    }
    pivot_at_[row[best].col] = static_cast<std::int64_t>(pivots_.size());
    pivots_.push_back(std::move(row));
    return true;
  }

  std::size_t size() const { return pivots_.size(); }

 private:
  std::vector<ZRow> pivots_;
  std::vector<std::int64_t> pivot_at_;
  std::vector<std::uint32_t> count_;
};

}  // namespace

std::vector<mpz_class> smith_normal_form(const SparseMatrix& m, const SmithOptions& opts) {
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#endif
  std::vector<ZRow> rows(m.rows());
  for (const auto& t : m.entries()) rows[t.row].push_back({t.col, t.value});
  std::sort(rows.begin(), rows.end(), [](const ZRow& a, const ZRow& b) { return a.size() < b.size(); });
  UnitEliminator elim(m.cols());
  for (const auto& r : rows) elim.count(r);
  std::size_t units = 0;
  for (;;) {
    const std::size_t before = elim.size();
    std::vector<ZRow> rest;
    auto local = elim.scratch();
    for (auto& r : rows) {
      if (!elim.reduce(r, local)) throw ComputationError("integer overflow during sparse unit-pivot elimination");
      if (r.empty()) continue;
      if (!elim.try_pivot(r)) rest.push_back(std::move(r));
    }
    // Later pivots can reach into rows set aside earlier.
    const auto nrest = static_cast<std::int64_t>(rest.size());
    bool overflow = false;
#pragma omp parallel reduction(|| : overflow)
    {
      auto mine = elim.scratch();
#pragma omp for schedule(dynamic, 16)
      for (std::int64_t i = 0; i < nrest; ++i) {
        if (!elim.reduce(rest[static_cast<std::size_t>(i)], mine)) overflow = true;
      }
    }
    if (overflow) throw ComputationError("integer overflow during sparse unit-pivot elimination");
    rest.erase(std::remove_if(rest.begin(), rest.end(), [](const ZRow& r) { return r.empty(); }), rest.end());
    rows = std::move(rest);
    units = elim.size();
    if (rows.empty() || elim.size() == before) break;
  }

  std::vector<mpz_class> out(units, 1);
  if (!rows.empty()) {
    std::vector<std::uint32_t> live;
    for (const auto& r : rows) {
      for (const auto& e : r) live.push_back(e.col);
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    if (rows.size() * live.size() > opts.dense_cap) {
      throw ComputationError("Smith residual " + std::to_string(rows.size()) + "x" + std::to_string(live.size()) +
                             " exceeds the dense cap");
    }
    std::vector<std::vector<mpz_class>> dense(rows.size(), std::vector<mpz_class>(live.size(), 0));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r]) {
        const auto c = static_cast<std::size_t>(std::lower_bound(live.begin(), live.end(), e.col) - live.begin());
        dense[r][c] = static_cast<long>(e.val);
      }
    }
    auto rest = reference::smith_normal_form_dense(dense);
    out.insert(out.end(), rest.begin(), rest.end());
  }
  normalize_divisors(out);
  return out;
}

}  // namespace diagtype::linalg
