#include <doctest.h>

#include <variant>

#include "diagtype/hessenberg.hpp"
#include "oracles.hpp"

using namespace diagtype;

namespace {

Graph shuffled(const Graph& g, std::mt19937_64& rng) {
  std::vector<int> p(static_cast<std::size_t>(g.n()));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return relabel(g, p);
}

HessenbergFunction random_connected_h(std::mt19937_64& rng, int n) {
  HessenbergFunction h(static_cast<std::size_t>(n));
  int prev = 2;
  for (int i = 1; i <= n; ++i) {
    const int lo = std::max(prev, std::min(i + 1, n));
    const int hi = std::min(n, lo + 3);
    h[static_cast<std::size_t>(i - 1)] = std::uniform_int_distribution<int>(lo, hi)(rng);
    prev = h[static_cast<std::size_t>(i - 1)];
  }
  h.back() = n;
  return h;
}

}  // namespace

TEST_SUITE("hessenberg") {

TEST_CASE("hessenberg graphs") {
  CHECK(hessenberg_to_graph({2, 3, 3}) == named::path(3));
  CHECK(hessenberg_to_graph({5, 5, 5, 5, 5}) == named::complete(5));
  const auto penta = hessenberg_to_graph({3, 4, 5, 6, 6, 6});
  for (int i = 1; i <= 6; ++i) {
    for (int j = i + 1; j <= 6; ++j) CHECK(penta.adjacent(i, j) == (j - i <= 2));
  }
  CHECK_THROWS(validate_hessenberg({3, 2, 3}));
  CHECK_THROWS(validate_hessenberg({2, 3, 3, 3}));
  CHECK_THROWS(validate_hessenberg({1, 3, 3}, true));
  CHECK(parse_hessenberg(format_hessenberg({2, 4, 4, 4})) == HessenbergFunction{2, 4, 4, 4});
}

TEST_CASE("recognition examples") {
  const auto r = recognize_indifference(Graph(3, {{1, 2}, {1, 3}}));
  REQUIRE(std::holds_alternative<IndifferenceCertificate>(r));
  CHECK(std::get<IndifferenceCertificate>(r).ordering == std::vector<int>{2, 1, 3});
  CHECK(std::get<IndifferenceCertificate>(r).h == HessenbergFunction{2, 3, 3});

  const auto claw = recognize_indifference(named::claw());
  REQUIRE(std::holds_alternative<ForbiddenWitness>(claw));
  CHECK(std::get<ForbiddenWitness>(claw).kind == ForbiddenKind::Claw);

  const auto k4 = recognize_indifference(named::complete(4));
  REQUIRE(std::holds_alternative<IndifferenceCertificate>(k4));
  CHECK(std::get<IndifferenceCertificate>(k4).ordering == std::vector<int>{1, 2, 3, 4});
  CHECK(std::get<IndifferenceCertificate>(k4).h == HessenbergFunction{4, 4, 4, 4});

  CHECK_THROWS_AS(recognize_indifference(Graph(4, {{1, 2}, {3, 4}})), std::invalid_argument);
}

TEST_CASE("recognition agrees with an exhaustive staircase search") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : oracle::graphs_up_to_iso(n)) CHECK(indifference_ordering(g).has_value() == oracle::staircase_order_exists(g));
  }
}

TEST_CASE("large inputs take the sweep path") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 25; ++t) {
    const int n = std::uniform_int_distribution<int>(13, 40)(rng);
    const auto g = shuffled(hessenberg_to_graph(random_connected_h(rng, n)), rng);
    const auto cert = indifference_ordering(g);
    REQUIRE(cert);
    CHECK(verify_certificate(g, *cert));
    // Hang a claw off an end vertex of the ordering.
    const int end = cert->ordering.front();
    auto e = g.edges();
    e.emplace_back(end, n + 1);
    e.emplace_back(end, n + 2);
    auto bad = Graph(n + 3, e).with_edges({{end, n + 3}});
    CHECK_FALSE(indifference_ordering(bad).has_value());
  }
}

TEST_CASE("inversion statistic") {
  CHECK(inv_h({1, 2, 3}, {2, 3, 3}) == 0);
  CHECK(inv_h({3, 2, 1}, {2, 3, 3}) == 2);
  CHECK(inv_h({3, 2, 1}, {3, 3, 3}) == 3);
}

TEST_CASE("betti polynomials") {
  CHECK(betti_polynomial_hessenberg({2, 3, 3}) == linalg::Polynomial{1, 4, 1});
  CHECK(betti_polynomial_hessenberg({3, 3, 3}) == linalg::Polynomial{1, 2, 2, 1});
  CHECK(betti_polynomial_hessenberg({2, 2}) == linalg::Polynomial{1, 1});
  for (int n = 1; n <= 7; ++n) {
    const mpz_class fact = [n] {
      mpz_class f = 1;
      for (int i = 2; i <= n; ++i) f *= i;
      return f;
    }();
    for (const auto& h : hessenberg_classes(n)) {
      const auto b = betti_polynomial_hessenberg(h);
      CAPTURE(format_hessenberg(h));
      CHECK(b.is_palindromic());
      CHECK(b.evaluate(1) == fact);
      CHECK(b.to_longs() == oracle::inversion_polynomial(h));
      CHECK(b.degree() == static_cast<int>(hessenberg_to_graph(h).edge_count()));
    }
  }
}

TEST_CASE("hessenberg classes count connected unit interval graphs") {
  for (int n = 1; n <= 6; ++n) {
    std::size_t expect = 0;
    for (const auto& g : oracle::graphs_up_to_iso(n)) expect += oracle::connected(g) && oracle::staircase_order_exists(g) ? 1 : 0;
    CHECK(hessenberg_classes(n).size() == expect);
  }
}

TEST_CASE("adi examples") {
  CHECK(adi(named::path(5)).count == 0);
  CHECK(adi(named::path(5)).added.empty());
  const auto c5 = adi(named::cycle(5));
  CHECK(c5.count == 2);
  CHECK(is_indifference(named::cycle(5).with_edges(c5.added)));
  const auto claw = adi(named::claw());
  CHECK(claw.count == 1);
  REQUIRE(claw.added.size() == 1);
  CHECK(claw.added[0].first != 1);
  CHECK(is_indifference(named::claw().with_edges(claw.added)));
}

TEST_CASE("adi vanishes exactly on indifference graphs") {
  for (int n = 1; n <= 6; ++n) {
    for (const auto& g : oracle::graphs_up_to_iso(n)) {
      if (!oracle::connected(g)) continue;
      CHECK((adi(g).count == 0) == oracle::staircase_order_exists(g));
    }
  }
}

TEST_CASE("adi of cycles and the girth bound") {
  for (int n = 4; n <= 8; ++n) CHECK(adi(named::cycle(n)).count == n - 3);
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 200; ++t) {
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    const auto g = oracle::random_connected(rng, n, 0.4);
    const int gi = oracle::girth_bfs(g);
    CHECK(adi(g).count >= (gi == 0 ? 0 : gi - 3));
  }
}

TEST_CASE("adi matches a subset search oracle") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 40; ++t) {
    const int n = std::uniform_int_distribution<int>(3, 6)(rng);
    const auto g = oracle::random_connected(rng, n, 0.45);
    const auto r = adi(g);
    CHECK(r.count == oracle::min_completion(g));
    CHECK(oracle::staircase_order_exists(g.with_edges(r.added)));
  }
}

}  // TEST_SUITE
