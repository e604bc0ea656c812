// Structured elimination against the dense references on boundary matrices
// of cluster-permutohedron skeleta, plus the GKM map of the net.

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <tuple>

#include "diagtype/cluster_perm.hpp"
#include "diagtype/gkm.hpp"
#include "diagtype/homology.hpp"
#include "diagtype/rank.hpp"
#include "diagtype/smith.hpp"

using namespace diagtype;
using namespace diagtype::linalg;

namespace {

const SparseMatrix& boundary(const char* name, int r, int d) {
  static std::map<std::tuple<std::string, int, int>, SparseMatrix> cache;
  const auto key = std::make_tuple(std::string(name), r, d);
  auto it = cache.find(key);
  if (it == cache.end()) {
    const auto sc = order_complex(skeleton(cluster_permutohedron(named_graph(name)).poset, r).poset);
    it = cache.emplace(key, chain_complex(sc).boundary[static_cast<std::size_t>(d)]).first;
  }
  return it->second;
}

std::vector<std::vector<mpz_class>> dense(const SparseMatrix& m) {
  std::vector<std::vector<mpz_class>> a(m.rows(), std::vector<mpz_class>(m.cols()));
  for (const auto& e : m.entries()) a[e.row][e.col] = static_cast<long>(e.value);
  return a;
}

void BM_RankGf2(benchmark::State& st) {
  const auto& m = boundary("net", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(rank_gf2(m));
  st.counters["cols"] = static_cast<double>(m.cols());
}

void BM_RankGf2Dense(benchmark::State& st) {
  const auto& m = boundary("claw", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(reference::rank_gf2_dense(m));
}

void BM_RankGf2Claw(benchmark::State& st) {
  const auto& m = boundary("claw", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(rank_gf2(m));
}

void BM_RankQ(benchmark::State& st) {
  const auto& m = boundary("net", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(rank_rational(m));
}

void BM_RankQBareiss(benchmark::State& st) {
  const auto& m = boundary("claw", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(reference::rank_rational_bareiss(m));
}

void BM_RankQClaw(benchmark::State& st) {
  const auto& m = boundary("claw", 2, 2);
  for (auto _ : st) benchmark::DoNotOptimize(rank_rational(m));
}

void BM_Smith(benchmark::State& st) {
  const auto m = boundary("net", 2, 2).transposed();
  for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(m));
}

void BM_SmithDense(benchmark::State& st) {
  const auto a = dense(boundary("claw", 2, 2));
  for (auto _ : st) benchmark::DoNotOptimize(reference::smith_normal_form_dense(a));
}

void BM_SmithClaw(benchmark::State& st) {
  const auto m = boundary("claw", 2, 2).transposed();
  for (auto _ : st) benchmark::DoNotOptimize(smith_normal_form(m));
}

void BM_GkmNet(benchmark::State& st) {
  const auto gg = build_gkm_graph(named::net());
  const int i = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(equivariant_betti(gg, i, Field::GF2));
}

}  // namespace

BENCHMARK(BM_RankGf2Claw)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankGf2Dense)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankGf2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankQClaw)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankQBareiss)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankQ)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmithClaw)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SmithDense)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Smith)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GkmNet)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
