#include <doctest.h>

#include <thread>

#include <json.hpp>

#include "diagtype/abfp.hpp"
#include "oracles.hpp"

using namespace diagtype;
using linalg::Polynomial;

namespace {

Clustering clustering(int n, const std::vector<std::vector<int>>& blocks) {
  Clustering c;
  c.n = n;
  for (const auto& b : blocks) {
    std::uint64_t m = 0;
    for (int v : b) m |= std::uint64_t{1} << (v - 1);
    c.blocks.push_back(m);
  }
  return c;
}

}  // namespace

TEST_SUITE("abfp") {

TEST_CASE("face ranks") {
  CHECK(face_rank(clustering(4, {{1}, {2}, {3}, {4}})) == 0);
  CHECK(face_rank(clustering(6, {{1, 2, 3, 4, 5, 6}})) == 5);
  CHECK(face_rank(clustering(3, {{1, 2}, {3}})) == 1);
}

TEST_CASE("face betti polynomials") {
  CHECK(face_betti_polynomial(clustering(3, {{1, 2}, {3}}), named::complete(3)) == Polynomial{1, 1});
  CHECK(face_betti_polynomial(clustering(3, {{1, 2, 3}}), named::complete(3)) == Polynomial{1, 2, 2, 1});
  CHECK(face_betti_polynomial(clustering(3, {{1, 2, 3}}), named::path(3)) == Polynomial{1, 4, 1});
  CHECK_THROWS_AS(face_betti_polynomial(clustering(4, {{1, 2, 3, 4}}), named::claw()), NonIndifferenceFace);
}

TEST_CASE("orbit space polynomials") {
  CHECK(compute_A(named::complete(3)) == Polynomial{4, 1});
  CHECK(compute_A(named::path(3)) == Polynomial{1});
  CHECK(compute_A(named::path(2)) == Polynomial{1});
  for (int n = 1; n <= 6; ++n) CHECK(compute_A(named::path(n)) == Polynomial{1});
  CHECK_THROWS(compute_A(named::claw()));
}

TEST_CASE("orbit space polynomials of all indifference graphs up to 5 vertices") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& h : hessenberg_classes(n)) {
      const auto g = hessenberg_to_graph(h);
      const auto a = compute_A(g);
      CAPTURE(format_hessenberg(h));
      CHECK(a.has_nonnegative_coeffs());
      // B - Inter = A (t-1)^(n-1), checked by multiplying back.
      CHECK(betti_polynomial_hessenberg(h) - inter_polynomial(g) == a * Polynomial::linear_power(-1, n - 1));
    }
  }
}

TEST_CASE("memoized orbit space polynomials are thread safe") {
  std::vector<Graph> gs;
  for (int n = 2; n <= 6; ++n) {
    for (const auto& h : hessenberg_classes(n)) gs.push_back(hessenberg_to_graph(h));
  }
  std::vector<std::vector<Polynomial>> results(4);
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = 0; i < gs.size(); ++i) results[static_cast<std::size_t>(t)].push_back(compute_A(gs[(i + static_cast<std::size_t>(t) * 7) % gs.size()]));
    });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < gs.size(); ++i) {
      CHECK(results[static_cast<std::size_t>(t)][i] == compute_A(gs[(i + static_cast<std::size_t>(t) * 7) % gs.size()]));
    }
  }
}

TEST_CASE("intersection polynomials") {
  CHECK(inter_polynomial(named::sun3()) == Polynomial{306, -1362, 2322, -1560, 540, 384, 72, 18});
  CHECK(inter_polynomial(named::complete(3)) == Polynomial{-3, 9});
  CHECK(inter_polynomial(named::path(2)) == Polynomial{2});
}

TEST_CASE("consistency of the coefficient system") {
  const auto sun = abfp_consistency_test(named::sun3(), 5, 29);
  CHECK(!sun.consistent);
  REQUIRE(sun.forced_b2);
  CHECK(*sun.forced_b2 == 20);
  CHECK(sun.unknowns == 15);
  CHECK(sun.equations == 15);
  CHECK(abfp_consistency_test(named::complete(3), 2, 2).consistent);
  CHECK(abfp_consistency_test(named::path(3), 4, 1).consistent);
}

TEST_CASE("formality reports") {
  const auto p4 = formality_report(named::path(4));
  CHECK(p4.verdict == Verdict::Formal);
  REQUIRE(p4.certificate);
  CHECK(p4.certificate->h == HessenbergFunction{2, 3, 4, 4});
  CHECK(verify_report(named::path(4), p4));

  const auto c4 = formality_report(named::cycle(4));
  CHECK(c4.verdict == Verdict::NonFormal);
  CHECK(c4.evidence == EvidenceKind::ForbiddenSkeletonHomology);
  REQUIRE(c4.skeleton);
  CHECK(c4.skeleton->betti_q[1] == 3);

  // Net plus a vertex on the pendant edge 1-4; the net stays induced on 1..6.
  std::vector<Edge> e = named::net().edges();
  e.emplace_back(1, 7);
  e.emplace_back(4, 7);
  const Graph host(7, e);
  const auto r = formality_report(host);
  CHECK(r.verdict == Verdict::NonFormal);
  REQUIRE(r.witness);
  CHECK(verify_report(host, r));
  CHECK(oracle::connected(induced_subgraph(host, r.witness->vertices)));

  const auto claw = formality_report(named::claw());
  CHECK(claw.verdict == Verdict::NonFormal);
  CHECK(claw.evidence == EvidenceKind::ForbiddenSkeletonHomology);
}

TEST_CASE("tampered reports fail verification") {
  auto r = formality_report(named::cycle(4));
  REQUIRE(r.skeleton);
  r.skeleton->betti_gf2.assign(r.skeleton->betti_gf2.size(), 0);
  r.skeleton->betti_q.assign(r.skeleton->betti_q.size(), 0);
  CHECK_FALSE(verify_report(named::cycle(4), r));
  auto f = formality_report(named::path(3));
  REQUIRE(f.certificate);
  f.certificate->h = {3, 3, 3};
  CHECK_FALSE(verify_report(named::path(3), f));
}

TEST_CASE("verdict json") {
  const auto j = nlohmann::json::parse(report_to_json(named::cycle(4), formality_report(named::cycle(4))));
  CHECK(j["verdict"] == "NonFormal");
  CHECK(j["evidence"]["kind"] == "ForbiddenSkeletonHomology");
  CHECK(j["evidence"]["witness_vertices"].size() == 4);
  CHECK(j.contains("artifacts"));
  CHECK(j.contains("graph"));
  const auto k3 = nlohmann::json::parse(report_to_json(named::complete(3), formality_report(named::complete(3))));
  CHECK(k3["artifacts"]["A"] == std::vector<long>{4, 1});
  CHECK(k3["artifacts"]["B"] == std::vector<long>{1, 2, 2, 1});
}

TEST_CASE("formal exactly when recognized on connected graphs up to 5 vertices") {
  for (int n = 1; n <= 5; ++n) {
    for (const auto& g : oracle::graphs_up_to_iso(n)) {
      if (!oracle::connected(g)) continue;
      const auto r = formality_report(g);
      CAPTURE(to_json(g));
      CHECK((r.verdict == Verdict::Formal) == oracle::staircase_order_exists(g));
      CHECK(r.verdict != Verdict::Undetermined);
      CHECK(verify_report(g, r));
      if (r.verdict == Verdict::NonFormal) {
        CHECK(r.witness.has_value());
        CHECK(r.evidence.has_value());
      }
    }
  }
}

}  // TEST_SUITE
