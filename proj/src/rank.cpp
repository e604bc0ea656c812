#include "diagtype/rank.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <numeric>
#include <string>

#include <gmpxx.h>
#ifdef _OPENMP
#include <omp.h>
#endif

namespace diagtype::linalg {

namespace {

std::uint32_t mul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t pow_mod(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p, b = a % p;
  while (e != 0) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(r);
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) { return pow_mod(a, p - 2, p); }

std::uint32_t reduce_mod(std::int64_t v, std::uint32_t p) {
  const std::int64_t r = v % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

void set_threads(const RankOptions& opts) {
#ifdef _OPENMP
  if (opts.threads > 0) omp_set_num_threads(opts.threads);
#else
  (void)opts;
#endif
}

// Field policies for the structured elimination. Each policy owns the row
// representation, the per-thread accumulator used to reduce one row against
// the pivot set, and the dense kernel for the tail.

struct Gf2Policy {
  using Entry = std::uint32_t;
  using Row = Gf2Row;

  static std::uint32_t col(Entry e) { return e; }
  static Entry recol(Entry, std::uint32_t c) { return c; }

  static void normalize(Row& r) {
    std::sort(r.begin(), r.end());
    std::size_t out = 0;
    for (std::size_t i = 0; i < r.size();) {
      std::size_t j = i;
      while (j < r.size() && r[j] == r[i]) ++j;
      if ((j - i) % 2 == 1) r[out++] = r[i];
      i = j;
    }
    r.resize(out);
  }

  static void prepare_pivot(Row&) {}

  static std::size_t dense_bytes(std::size_t rows, std::size_t cols) {
    return rows * ((cols + 63) / 64) * 8;
  }

  struct Accumulator {
    std::vector<std::uint64_t> bits;
    explicit Accumulator(std::size_t cols) : bits((cols + 63) / 64 + 1, 0) {}
  };

  // Reduces row against pivots (pivot_of[c] >= 0 when column c has a pivot).
  static Row reduce(const Row& row, const std::vector<Row>& pivots,
                    const std::vector<std::int64_t>& pivot_of, Accumulator& acc) {
    Row out;
    if (row.empty()) return out;
    auto& bits = acc.bits;
    for (auto c : row) bits[c >> 6] ^= std::uint64_t{1} << (c & 63);
    std::size_t w = row.front() >> 6;
    const std::size_t words = bits.size();
    for (; w < words; ++w) {
      while (bits[w] != 0) {
        const std::uint32_t c = static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits[w]));
        const std::int64_t p = pivot_of[c];
        if (p >= 0) {
          for (auto x : pivots[static_cast<std::size_t>(p)]) bits[x >> 6] ^= std::uint64_t{1} << (x & 63);
        } else {
          out.push_back(c);
          bits[w] &= bits[w] - 1;
        }
      }
    }
    return out;
  }

  static std::size_t dense_rank(const std::vector<Row>& rows, std::size_t cols);
};

struct ZpPolicy {
  using Entry = ZpEntry;
  using Row = ZpRow;
  std::uint32_t p;

  static std::uint32_t col(const Entry& e) { return e.col; }
  static Entry recol(const Entry& e, std::uint32_t c) { return {c, e.val}; }

  void normalize(Row& r) const {
    std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.col < b.col; });
    std::size_t out = 0;
    for (std::size_t i = 0; i < r.size();) {
      std::uint64_t v = 0;
      std::size_t j = i;
      while (j < r.size() && r[j].col == r[i].col) v += r[j++].val;
      v %= p;
      if (v != 0) r[out++] = {r[i].col, static_cast<std::uint32_t>(v)};
      i = j;
    }
    r.resize(out);
  }

  // Scale so the leading entry is 1.
  void prepare_pivot(Row& r) const {
    const std::uint32_t inv = inv_mod(r.front().val, p);
    for (auto& e : r) e.val = mul_mod(e.val, inv, p);
  }

  static std::size_t dense_bytes(std::size_t rows, std::size_t cols) { return rows * cols * 4; }

  struct Accumulator {
    std::vector<std::uint64_t> marks;
    std::vector<std::uint32_t> vals;
    explicit Accumulator(std::size_t cols) : marks((cols + 63) / 64 + 1, 0), vals(cols + 1, 0) {}
  };

  Row reduce(const Row& row, const std::vector<Row>& pivots, const std::vector<std::int64_t>& pivot_of,
             Accumulator& acc) const {
    Row out;
    if (row.empty()) return out;
    auto& marks = acc.marks;
    auto& vals = acc.vals;
    for (const auto& e : row) {
      marks[e.col >> 6] |= std::uint64_t{1} << (e.col & 63);
      vals[e.col] = e.val;
    }
    const std::size_t words = marks.size();
    for (std::size_t w = row.front().col >> 6; w < words; ++w) {
      while (marks[w] != 0) {
        const std::uint32_t c = static_cast<std::uint32_t>(w * 64 + std::countr_zero(marks[w]));
        marks[w] &= marks[w] - 1;
        const std::uint32_t v = vals[c];
        vals[c] = 0;
        if (v == 0) continue;
        const std::int64_t pi = pivot_of[c];
        if (pi < 0) {
          out.push_back({c, v});
          continue;
        }
        const std::uint32_t f = p - v;  // subtract v * pivot (pivot lead is 1)
        const auto& prow = pivots[static_cast<std::size_t>(pi)];
        for (std::size_t k = 1; k < prow.size(); ++k) {
          const std::uint32_t x = prow[k].col;
          marks[x >> 6] |= std::uint64_t{1} << (x & 63);
          vals[x] = static_cast<std::uint32_t>((vals[x] + static_cast<std::uint64_t>(f) * prow[k].val) % p);
        }
      }
    }
    return out;
  }

  std::size_t dense_rank(const std::vector<Row>& rows, std::size_t cols) const;
};

std::size_t Gf2Policy::dense_rank(const std::vector<Row>& rows, std::size_t cols) {
  const std::size_t words = (cols + 63) / 64;
  const std::size_t n = rows.size();
  std::vector<std::uint64_t> m(n * words, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (auto c : rows[r]) m[r * words + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < n; ++c) {
    const std::size_t w = c >> 6;
    const std::uint64_t bit = std::uint64_t{1} << (c & 63);
    std::size_t piv = rank;
    while (piv < n && (m[piv * words + w] & bit) == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * words + w),
                       m.begin() + static_cast<std::ptrdiff_t>((piv + 1) * words),
                       m.begin() + static_cast<std::ptrdiff_t>(rank * words + w));
    }
    const std::uint64_t* prow = m.data() + rank * words;
    const auto below = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(static)
    for (std::int64_t r = static_cast<std::int64_t>(rank) + 1; r < below; ++r) {
      std::uint64_t* row = m.data() + static_cast<std::size_t>(r) * words;
      if ((row[w] & bit) != 0) {
        for (std::size_t k = w; k < words; ++k) row[k] ^= prow[k];
      }
    }
    ++rank;
  }
  return rank;
}

std::size_t ZpPolicy::dense_rank(const std::vector<Row>& rows, std::size_t cols) const {
  const std::size_t n = rows.size();
  std::vector<std::uint32_t> m(n * cols, 0);
  for (std::size_t r = 0; r < n; ++r) {
    for (const auto& e : rows[r]) m[r * cols + e.col] = e.val;
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < n; ++c) {
    std::size_t piv = rank;
    while (piv < n && m[piv * cols + c] == 0) ++piv;
    if (piv == n) continue;
    if (piv != rank) {
      std::swap_ranges(m.begin() + static_cast<std::ptrdiff_t>(piv * cols + c),
                       m.begin() + static_cast<std::ptrdiff_t>((piv + 1) * cols),
                       m.begin() + static_cast<std::ptrdiff_t>(rank * cols + c));
    }
    std::uint32_t* prow = m.data() + rank * cols;
    const std::uint32_t inv = inv_mod(prow[c], p);
    for (std::size_t k = c; k < cols; ++k) prow[k] = mul_mod(prow[k], inv, p);
    const auto below = static_cast<std::int64_t>(n);
    const std::uint32_t mod = p;
#pragma omp parallel for schedule(static)
    for (std::int64_t r = static_cast<std::int64_t>(rank) + 1; r < below; ++r) {
      std::uint32_t* row = m.data() + static_cast<std::size_t>(r) * cols;
      const std::uint32_t v = row[c];
      if (v == 0) continue;
      const std::uint64_t f = mod - v;
      for (std::size_t k = c; k < cols; ++k) {
        row[k] = static_cast<std::uint32_t>((row[k] + f * prow[k]) % mod);
      }
    }
    ++rank;
  }
  return rank;
}

// Removes rows owning a column that no other row touches; each such row is
// independent of the rest and contributes one to the rank.
template <class Policy>
std::size_t strip_column_singletons(std::vector<typename Policy::Row>& rows, std::size_t cols) {
  std::vector<std::uint32_t> count(cols, 0);
  std::vector<std::size_t> start(cols + 1, 0);
  for (const auto& r : rows) {
    for (const auto& e : r) ++count[Policy::col(e)];
  }
  for (std::size_t c = 0; c < cols; ++c) start[c + 1] = start[c] + count[c];
  std::vector<std::uint32_t> owner(start[cols]);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (const auto& e : rows[r]) owner[fill[Policy::col(e)]++] = static_cast<std::uint32_t>(r);
    }
  }
  std::vector<char> alive(rows.size(), 1);
  std::vector<std::uint32_t> queue;
  for (std::size_t c = 0; c < cols; ++c) {
    if (count[c] == 1) queue.push_back(static_cast<std::uint32_t>(c));
  }
  std::size_t removed = 0;
  while (!queue.empty()) {
    const std::uint32_t c = queue.back();
    queue.pop_back();
    if (count[c] != 1) continue;
    std::size_t row = rows.size();
    for (std::size_t k = start[c]; k < start[c + 1]; ++k) {
      if (alive[owner[k]] != 0) {
        row = owner[k];
        break;
      }
    }
    if (row == rows.size()) continue;
    alive[row] = 0;
    ++removed;
    for (const auto& e : rows[row]) {
      const auto x = Policy::col(e);
      if (--count[x] == 1) queue.push_back(x);
    }
  }
  if (removed != 0) {
    std::size_t out = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (alive[r] != 0) {
        if (out != r) rows[out] = std::move(rows[r]);
        ++out;
      }
    }
    rows.resize(out);
  }
  return removed;
}

// Structured Gaussian elimination: strip singleton columns, pick a
// triangular pivot set (one row per distinct leading column), replace the
// remaining rows by their Schur complement, and repeat until the remainder is
// dense enough for the bit-packed or word kernel.
template <class Policy>
std::size_t structured_rank(std::vector<typename Policy::Row> rows, std::size_t cols, const Policy& pol,
                            const RankOptions& opts) {
  using Row = typename Policy::Row;
  set_threads(opts);
  std::size_t rank = 0;
  for (;;) {
    rows.erase(std::remove_if(rows.begin(), rows.end(), [](const Row& r) { return r.empty(); }), rows.end());
    if (rows.empty() || cols == 0) return rank;
    rank += strip_column_singletons<Policy>(rows, cols);
    if (rows.empty()) return rank;

    // Renumber live columns, sparsest first.
    std::vector<std::uint32_t> count(cols, 0);
    std::size_t nnz = 0;
    for (const auto& r : rows) {
      nnz += r.size();
      for (const auto& e : r) ++count[Policy::col(e)];
    }
    std::vector<std::uint32_t> order;
    for (std::size_t c = 0; c < cols; ++c) {
      if (count[c] != 0) order.push_back(static_cast<std::uint32_t>(c));
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return count[a] < count[b]; });
    std::vector<std::uint32_t> relabel(cols, 0);
    for (std::size_t i = 0; i < order.size(); ++i) relabel[order[i]] = static_cast<std::uint32_t>(i);
    cols = order.size();
    const auto nrows = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t i = 0; i < nrows; ++i) {
      auto& r = rows[static_cast<std::size_t>(i)];
      for (auto& e : r) e = Policy::recol(e, relabel[Policy::col(e)]);
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return Policy::col(a) < Policy::col(b); });
    }

    // Triangular pivot set: the sparsest row for each leading column.
    std::vector<std::int64_t> pivot_of(cols, -1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto lead = Policy::col(rows[i].front());
      const std::int64_t cur = pivot_of[lead];
      if (cur < 0 || rows[i].size() < rows[static_cast<std::size_t>(cur)].size()) {
        pivot_of[lead] = static_cast<std::int64_t>(i);
      }
    }
    std::size_t npiv = 0;
    for (auto p : pivot_of) npiv += p >= 0 ? 1 : 0;

    const double density = static_cast<double>(nnz) / (static_cast<double>(rows.size()) * static_cast<double>(cols));
    const std::size_t dense_bytes = Policy::dense_bytes(rows.size(), cols);
    const bool slow_progress = npiv * 8 < rows.size() && npiv * 8 < cols;
    if (dense_bytes <= opts.memory_budget_bytes &&
        (density > 0.02 || slow_progress || dense_bytes <= (std::size_t{1} << 20))) {
      return rank + pol.dense_rank(rows, cols);
    }

    std::vector<Row> pivots(cols);
    std::vector<char> is_pivot_row(rows.size(), 0);
    for (std::size_t c = 0; c < cols; ++c) {
      if (pivot_of[c] >= 0) {
        const auto idx = static_cast<std::size_t>(pivot_of[c]);
        is_pivot_row[idx] = 1;
        pivots[c] = std::move(rows[idx]);
        pol.prepare_pivot(pivots[c]);
        pivot_of[c] = static_cast<std::int64_t>(c);
      }
    }
    std::vector<Row> rest;
    rest.reserve(rows.size() - npiv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (is_pivot_row[i] == 0) rest.push_back(std::move(rows[i]));
    }
    rows.clear();
    rows.shrink_to_fit();

    std::vector<Row> next(rest.size());
    const auto nrest = static_cast<std::int64_t>(rest.size());
    std::size_t live = 0;
#pragma omp parallel reduction(+ : live)
    {
      typename Policy::Accumulator acc(cols);
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < nrest; ++i) {
        auto& src = rest[static_cast<std::size_t>(i)];
        next[static_cast<std::size_t>(i)] = pol.reduce(src, pivots, pivot_of, acc);
        Row().swap(src);
        live += next[static_cast<std::size_t>(i)].size();
      }
    }
    rank += npiv;
    if (live * sizeof(typename Policy::Entry) > opts.memory_budget_bytes) {
      throw ComputationError("sparse elimination fill exceeds memory budget (" + std::to_string(live) +
                             " entries)");
    }
    rows = std::move(next);
  }
}

std::uint64_t splitmix(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31U);
}

std::uint64_t mul_mod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, b = a, e = d;
    while (e != 0) {
      if (e & 1U) x = mul_mod64(x, b, n);
      b = mul_mod64(b, b, n);
      e >>= 1U;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> word_primes(std::size_t count, std::uint64_t seed) {
  std::vector<std::uint32_t> out;
  std::uint64_t state = seed;
  while (out.size() < count) {
    const std::uint32_t cand = static_cast<std::uint32_t>((1U << 30U) + (splitmix(state) % (1U << 30U))) | 1U;
    if (is_prime_u64(cand) && std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(cand);
  }
  return out;
}

std::size_t rank_gf2_rows(std::vector<Gf2Row> rows, std::size_t cols, const RankOptions& opts) {
  for (auto& r : rows) Gf2Policy::normalize(r);
  return structured_rank(std::move(rows), cols, Gf2Policy{}, opts);
}

std::size_t rank_mod_p_rows(std::vector<ZpRow> rows, std::size_t cols, std::uint32_t p,
                            const RankOptions& opts) {
  if (p == 2) {
    std::vector<Gf2Row> g(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (const auto& e : rows[i]) {
        if (e.val % 2 != 0) g[i].push_back(e.col);
      }
    }
    return rank_gf2_rows(std::move(g), cols, opts);
  }
  ZpPolicy pol{p};
  for (auto& r : rows) {
    for (auto& e : r) e.val %= p;
    pol.normalize(r);
  }
  return structured_rank(std::move(rows), cols, pol, opts);
}

std::size_t rank_gf2(const SparseMatrix& m, const RankOptions& opts) {
  std::vector<Gf2Row> rows(m.rows());
  for (const auto& t : m.entries()) {
    if (t.value % 2 != 0) rows[t.row].push_back(t.col);
  }
  return rank_gf2_rows(std::move(rows), m.cols(), opts);
}

std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p, const RankOptions& opts) {
  if (p < 2 || !is_prime_u64(p)) throw std::invalid_argument("rank_mod_p needs a prime modulus");
  std::vector<ZpRow> rows(m.rows());
  for (const auto& t : m.entries()) {
    const std::uint32_t v = reduce_mod(t.value, p);
    if (v != 0) rows[t.row].push_back({t.col, v});
  }
  return rank_mod_p_rows(std::move(rows), m.cols(), p, opts);
}

std::size_t rank_rational(const SparseMatrix& m, const RankOptions& opts) {
  const auto total = static_cast<std::size_t>(opts.prime_count + opts.extra_prime_budget);
  const auto primes = word_primes(total, opts.seed);
  std::vector<std::size_t> ranks;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    ranks.push_back(rank_mod_p(m, primes[i], opts));
    if (ranks.size() < static_cast<std::size_t>(opts.prime_count)) continue;
    const std::size_t best = *std::max_element(ranks.begin(), ranks.end());
    const auto agree = static_cast<int>(std::count(ranks.begin(), ranks.end(), best));
    if (agree >= opts.prime_count) return best;
  }
  if (m.rows() * m.cols() <= std::size_t{250000}) return reference::rank_rational_bareiss(m);
  throw ComputationError("modular ranks disagree beyond the retry budget");
}

namespace reference {

std::size_t rank_gf2_dense(const SparseMatrix& m) {
  std::vector<std::vector<bool>> a(m.rows(), std::vector<bool>(m.cols(), false));
  for (const auto& t : m.entries()) a[t.row][t.col] = (t.value % 2) != 0;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && !a[piv][c]) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (!a[r][c]) continue;
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = a[r][k] != a[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_mod_p_dense(const SparseMatrix& m, std::uint32_t p) {
  std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
  for (const auto& t : m.entries()) a[t.row][t.col] = reduce_mod(t.value, p);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t piv = rank;
    while (piv < m.rows() && a[piv][c] == 0) ++piv;
    if (piv == m.rows()) continue;
    std::swap(a[piv], a[rank]);
    const std::uint64_t inv = inv_mod(static_cast<std::uint32_t>(a[rank][c]), p);
    for (std::size_t r = rank + 1; r < m.rows(); ++r) {
      if (a[r][c] == 0) continue;
      const std::uint64_t f = a[r][c] * inv % p;
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = (a[r][k] + (p - f) * a[rank][k]) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t rank_rational_bareiss(const SparseMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols, 0));
  for (const auto& t : m.entries()) a[t.row][t.col] = static_cast<long>(t.value);
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]) / prev;
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

}  // namespace reference

}  // namespace diagtype::linalg
