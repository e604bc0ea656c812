#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "diagtype/errors.hpp"
#include "diagtype/sparse_matrix.hpp"

namespace diagtype::linalg {

using diagtype::ComputationError;

struct RankOptions {
  /// Upper bound for the dense tail of the elimination and the sparse working set.
  std::size_t memory_budget_bytes = std::size_t{3} << 30;
  /// 0 keeps the OpenMP default.
  int threads = 0;
  /// Seed for the choice of word-size primes in rank_rational.
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  int prime_count = 3;
  int extra_prime_budget = 4;
};

/// One sparse row over GF(2): strictly increasing column indices.
using Gf2Row = std::vector<std::uint32_t>;

struct ZpEntry {
  std::uint32_t col;
  std::uint32_t val;
};
/// One sparse row over Z/p: strictly increasing columns, values in [1, p).
using ZpRow = std::vector<ZpEntry>;

std::size_t rank_gf2(const SparseMatrix& m, const RankOptions& opts = {});
std::size_t rank_mod_p(const SparseMatrix& m, std::uint32_t p, const RankOptions& opts = {});

/// Rank over Q by modular ranks at several word-size primes. The primes are
/// drawn deterministically from opts.seed; agreement of opts.prime_count
/// primes is required, and further primes are drawn on disagreement. A matrix
/// small enough for fraction-free elimination falls back to it when primes
/// keep disagreeing.
std::size_t rank_rational(const SparseMatrix& m, const RankOptions& opts = {});

/// Row-list entry points used by assemblers that stream rows directly.
/// Rows need not be sorted; duplicate columns cancel (GF(2)) or add (Z/p).
std::size_t rank_gf2_rows(std::vector<Gf2Row> rows, std::size_t cols, const RankOptions& opts = {});
std::size_t rank_mod_p_rows(std::vector<ZpRow> rows, std::size_t cols, std::uint32_t p,
                            const RankOptions& opts = {});

/// Deterministic list of distinct primes in (2^30, 2^31) chosen from seed.
std::vector<std::uint32_t> word_primes(std::size_t count, std::uint64_t seed);

bool is_prime_u64(std::uint64_t n);

namespace reference {

// Serial dense eliminations kept as oracles for the structured kernels above.
std::size_t rank_gf2_dense(const SparseMatrix& m);
std::size_t rank_mod_p_dense(const SparseMatrix& m, std::uint32_t p);
/// Fraction-free (Bareiss) elimination over Z with arbitrary precision.
std::size_t rank_rational_bareiss(const SparseMatrix& m);

}  // namespace reference

}  // namespace diagtype::linalg
