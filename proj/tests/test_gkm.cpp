#include <doctest.h>

#include "diagtype/gkm.hpp"
#include "diagtype/hessenberg.hpp"
#include "oracles.hpp"

using namespace diagtype;

namespace {

std::vector<long> longs(const std::vector<mpz_class>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

Graph underlying(const GkmGraph& gg) {
  std::vector<Edge> e;
  for (const auto& x : gg.edges) e.emplace_back(static_cast<int>(x.tail) + 1, static_cast<int>(x.head) + 1);
  return Graph(static_cast<int>(gg.vertices.size()), e);
}

}  // namespace

TEST_SUITE("gkm") {

TEST_CASE("GKM graphs") {
  const auto k3 = build_gkm_graph(named::complete(3));
  const Graph k33(6, {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}});
  CHECK(graphs_isomorphic(underlying(k3), k33));
  const auto claw = build_gkm_graph(named::claw());
  CHECK(claw.vertices.size() == 24);
  CHECK(claw.edges.size() == 36);
  const auto u = underlying(claw);
  for (int v = 1; v <= u.n(); ++v) CHECK(u.degree(v) == 3);
  const auto p2 = build_gkm_graph(named::path(2));
  REQUIRE(p2.edges.size() == 1);
  CHECK(p2.weight(p2.edges[0]) == std::vector<int>{1, -1});
  for (std::uint32_t i = 0; i < claw.vertices.size(); ++i) CHECK(claw.index_of(claw.vertices[i]) == i);
}

TEST_CASE("L-map shapes") {
  const auto net = build_gkm_graph(named::net());
  const auto s = lmap_shape(net, 3);
  CHECK(s.cols == 40320);
  CHECK(s.rows == 75600);
  const auto m = build_lmap(build_gkm_graph(named::path(3)), 1);
  CHECK(m.cols() == lmap_shape(build_gkm_graph(named::path(3)), 1).cols);
  CHECK(m.rows() == lmap_shape(build_gkm_graph(named::path(3)), 1).rows);
}

TEST_CASE("equivariant kernel dimensions") {
  for (const auto& g : {named::path(3), named::claw(), named::net(), named::cycle(4)}) {
    CHECK(equivariant_betti(build_gkm_graph(g), 0, Field::Q) == 1);
  }
  CHECK(equivariant_betti(build_gkm_graph(named::complete(3)), 1, Field::Q) == 5);
  CHECK(equivariant_betti(build_gkm_graph(named::net()), 1, Field::GF2) == 26);
}

TEST_CASE("ordinary expansion") {
  const auto net = ordinary_betti_from_equivariant({1, 26, 287, 1748}, 6);
  CHECK(longs(net.values) == std::vector<long>{1, 20, 146, 396});
  CHECK(!net.negative);
  CHECK(longs(ordinary_betti_from_equivariant({1, 5, 14}, 3).values) == std::vector<long>{1, 2, 2});
  // Free polynomial ring in 4 variables: dims C(i+3, 3).
  CHECK(longs(ordinary_betti_from_equivariant({1, 4, 10, 20}, 4).values) == std::vector<long>{1, 0, 0, 0});
  CHECK(ordinary_betti_from_equivariant({1, 13, 61, 169}, 4).negative);
}

TEST_CASE("total betti numbers") {
  const auto k3 = gkm_total_betti(named::complete(3), Field::Q);
  REQUIRE(k3.determined);
  CHECK(k3.total == 6);
  CHECK(!k3.report.duality_mismatch);
  const auto claw = gkm_total_betti(named::claw(), Field::GF2);
  CHECK(claw.report.duality_mismatch);
  GkmOptions tiny;
  tiny.rank.memory_budget_bytes = 1024;
  const auto no = gkm_total_betti(named::net(), Field::GF2, tiny);
  CHECK(!no.determined);
  CHECK(no.reason.find("A_i") != std::string::npos);
  CHECK_THROWS_AS(equivariant_betti(build_gkm_graph(named::net()), 2, Field::GF2, tiny), ComputationError);
}

TEST_CASE("kernel dimensions do not depend on edge orientation") {
  for (const auto& g : {named::path(4), named::claw(), named::cycle(4), named::complete(4), named::net()}) {
    const auto base = build_gkm_graph(g);
    for (int i = 1; i <= 2; ++i) {
      const auto d = equivariant_betti(base, i, Field::GF2);
      for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        CHECK(equivariant_betti(reorient(base, seed), i, Field::GF2) == d);
        CHECK(equivariant_betti(reorient(base, seed), i, Field::Q) == equivariant_betti(base, i, Field::Q));
      }
    }
  }
}

TEST_CASE("GKM Betti numbers of indifference graphs equal the inversion polynomial") {
  std::vector<HessenbergFunction> hs;
  for (int n = 2; n <= 4; ++n) {
    for (const auto& h : hessenberg_classes(n)) hs.push_back(h);
  }
  const auto five = hessenberg_classes(5);
  for (std::size_t i = 0; i < five.size(); i += 2) hs.push_back(five[i]);
  for (const auto& h : hs) {
    const auto g = hessenberg_to_graph(h);
    const auto expect = oracle::inversion_polynomial(h);
    const auto t = gkm_total_betti(g, Field::Q);
    CAPTURE(format_hessenberg(h));
    REQUIRE(t.determined);
    CHECK(t.report.completed == expect);
    CHECK(t.total == std::accumulate(expect.begin(), expect.end(), 0L));
    CHECK(!t.report.duality_mismatch);
  }
}

TEST_CASE("GKM export") {
  const auto dot = gkm_to_dot(build_gkm_graph(named::path(3)));
  CHECK(dot.find("digraph") == 0);
  const auto j = gkm_report_json(gkm_betti_report(named::path(3), Field::Q, 1));
  CHECK(j.find("\"equivariant\"") != std::string::npos);
}

}  // TEST_SUITE
