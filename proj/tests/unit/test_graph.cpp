#include "doctest.h"

#include <random>

#include "bdg/errors.hpp"
#include "bdg/graph.hpp"
#include "oracles.hpp"

using namespace bdg;

namespace {

oracle::Edges edges_of(const Graph& g) { return g.edges(); }

bool iso(const Graph& a, const Graph& b) {
  return oracle::isomorphic(a.vertex_count(), a.edges(), b.vertex_count(), b.edges());
}

std::vector<Graph> families() {
  return {cycle(3), cycle(5), cycle(8), path(4), star(5), complete(1), complete(4),
          cocktail_party(4), cocktail_party(6), butterfly(), petersen(),
          theorem1_family(1, 1, 2), theorem1_family(0, 1, 4), theorem1_family(1, 2, 2)};
}

}  // namespace

TEST_CASE("closed neighbourhoods") {
  auto s5 = star(5);
  CHECK(closed_neighbourhood(s5, 0).size() == 5);
  CHECK(closed_neighbourhood(s5, 3) == std::vector<Vertex>{0, 3});
  // C4 with edges {i, i+1 mod 4}
  CHECK(closed_neighbourhood(cycle(4), 0) == std::vector<Vertex>{0, 1, 3});
  CHECK_THROWS_AS(closed_neighbourhood(s5, 5), DomainError);
  CHECK_THROWS_AS(closed_neighbourhood(s5, -1), DomainError);
}

TEST_CASE("metrics of the fixtures") {
  auto k4 = metrics(complete(4));
  CHECK(k4.max_degree == 3);
  CHECK(k4.girth == 3);
  CHECK(k4.is_regular);

  auto s5 = metrics(star(5));
  CHECK(s5.max_degree == 4);
  CHECK(s5.girth == kInfiniteGirth);
  CHECK_FALSE(s5.is_regular);

  auto r6 = metrics(cocktail_party(6));
  CHECK(r6.max_degree == 4);
  CHECK(r6.is_regular);
  CHECK(r6.girth == oracle::girth_bruteforce(6, cocktail_party(6).edges()));
  CHECK(r6.girth == 3);

  CHECK(metrics(petersen()).girth == 5);
  CHECK(metrics(cycle(7)).girth == 7);
}

TEST_CASE("girth and distances agree with brute force on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 3 + trial % 7;
    auto e = oracle::random_connected(n, 0.35, rng);
    Graph g(n, e);
    auto m = metrics(g);
    int bf = oracle::girth_bruteforce(n, e);
    CHECK(m.girth == (bf == 0 ? kInfiniteGirth : bf));
    for (int x = 0; x < n; ++x) {
      CHECK(m.distances[x][x] == 0);
      for (int y = 0; y < n; ++y) {
        CHECK(m.distances[x][y] == m.distances[y][x]);
        for (int z = 0; z < n; ++z) CHECK(m.distances[x][z] <= m.distances[x][y] + m.distances[y][z]);
      }
    }
  }
}

TEST_CASE("non-decreasing permutations") {
  CHECK(non_decreasing_permutation(star(3), 0) == std::vector<Vertex>{0, 1, 2});
  CHECK(non_decreasing_permutation(cycle(4), 0) == std::vector<Vertex>{0, 1, 3, 2});
  CHECK(non_decreasing_permutation(complete(4), 2) == std::vector<Vertex>{2, 0, 1, 3});
  CHECK_THROWS_AS(non_decreasing_permutation(star(3), 3), DomainError);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 8;
    Graph g(n, oracle::random_connected(n, 0.3, rng));
    Vertex root = static_cast<Vertex>(trial % n);
    auto p = non_decreasing_permutation(g, root);
    auto d = distances_from(g, root);
    REQUIRE(p.size() == static_cast<std::size_t>(n));
    CHECK(p.front() == root);
    for (std::size_t k = 1; k < p.size(); ++k) CHECK(d[p[k - 1]] <= d[p[k]]);
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (int k = 0; k < n; ++k) CHECK(sorted[k] == k);
  }
}

TEST_CASE("reduction merges equal closed neighbourhoods") {
  auto b = reduce_irreducible(butterfly());
  REQUIRE(b.vertex_count() == 3);
  CHECK(iso(b, star(3)));
  CHECK(b.intensity(0) == 1);  // the centre
  std::vector<int> in(b.intensities().begin(), b.intensities().end());
  std::sort(in.begin(), in.end());
  CHECK(in == std::vector<int>{1, 2, 2});

  auto k5 = reduce_irreducible(complete(5));
  CHECK(k5.vertex_count() == 1);
  CHECK(k5.intensity(0) == 5);

  CHECK(reduce_irreducible(cycle(5)) == cycle(5));

  for (const auto& g : families()) {
    auto r = reduce_irreducible(g);
    CHECK(reduce_irreducible(r) == r);
    CHECK(r.total_intensity() == g.total_intensity());
  }
}

TEST_CASE("cloning inverts reduction") {
  auto s3 = star(3);
  std::vector<int> two(3, 2);
  auto c = clone_vertices(s3, two);
  CHECK(c.vertex_count() == 6);
  CHECK(c.edge_count() == 11);
  CHECK(clone_vertices(s3, std::vector<int>(3, 1)) == s3);
  CHECK(iso(clone_vertices(complete(1), std::vector<int>{3}), complete(3)));
  CHECK_THROWS_AS(clone_vertices(s3, std::vector<int>{1, 0, 1}), DomainError);

  for (const auto& g : families()) {
    auto r = reduce_irreducible(g);
    for (int k = 1; k <= 3; ++k) {
      std::vector<int> copies(r.vertex_count(), k);
      auto back = reduce_irreducible(clone_vertices(r, copies));
      std::vector<int> expect;
      for (int x = 0; x < r.vertex_count(); ++x) expect.push_back(k * r.intensity(x));
      CHECK(back == r.with_intensities(expect));
    }
  }
}

TEST_CASE("expanding intensities gives clones") {
  auto b = expand_intensities(reduce_irreducible(butterfly()));
  CHECK(iso(b, butterfly()));
}

TEST_CASE("family constructors") {
  CHECK(iso(theorem1_family(1, 1, 2), path(3)));
  CHECK(iso(theorem1_family(1, 1, 2), star(3)));
  CHECK(iso(cocktail_party(4), cycle(4)));
  CHECK(iso(theorem1_family(1, 2, 2), butterfly()));
  CHECK(theorem1_family(2, 3, 4).vertex_count() == 14);
  for (int x = 0; x < 2; ++x) CHECK(theorem1_family(2, 3, 4).degree(x) == 13);

  for (int m = 4; m <= 10; m += 2) {
    auto met = metrics(cocktail_party(m));
    CHECK(met.is_regular);
    CHECK(met.max_degree == m - 2);
  }
  for (int n = 1; n <= 6; ++n) {
    auto met = metrics(complete(n));
    CHECK(met.is_regular);
    CHECK(met.max_degree == n - 1);
    CHECK(star(n).edge_count() == n - 1);  // trees
  }
  auto p = metrics(petersen());
  CHECK(p.is_regular);
  CHECK(p.max_degree == 3);

  CHECK_THROWS_AS(cycle(2), DomainError);
  CHECK_THROWS_AS(cocktail_party(5), DomainError);
  CHECK_THROWS_AS(cocktail_party(2), DomainError);  // two isolated vertices
  CHECK_THROWS_AS(theorem1_family(0, 1, 2), DomainError);
  CHECK_THROWS_AS(theorem1_family(1, 1, 3), DomainError);
  CHECK_THROWS_AS(theorem1_family(1, 0, 2), DomainError);
}

TEST_CASE("family strings") {
  CHECK(parse_family("cycle:7") == cycle(7));
  CHECK(parse_family("theorem1:1,2,2") == theorem1_family(1, 2, 2));
  CHECK(parse_family("butterfly") == butterfly());
  CHECK(parse_family("petersen") == petersen());
  CHECK(parse_family("cocktail:6") == cocktail_party(6));
  CHECK_THROWS_AS(parse_family("cycle"), DomainError);
  CHECK_THROWS_AS(parse_family("cycle:x"), DomainError);
  CHECK_THROWS_AS(parse_family("hexagon:6"), DomainError);
  CHECK_THROWS_AS(parse_family("theorem1:1,2"), DomainError);
}

TEST_CASE("subgraph embeddings") {
  std::vector<Vertex> id{0, 1, 2, 3};
  CHECK(is_subgraph(cycle(4), complete(4), id));
  std::vector<Vertex> into_c4{1, 0, 2};  // centre to 1, leaves to 0 and 2
  CHECK(is_subgraph(star(3), cycle(4), into_c4));
  CHECK_FALSE(is_subgraph(complete(4), cycle(4), id));
  std::vector<Vertex> bad{0, 0, 1};
  CHECK_THROWS_AS(is_subgraph(star(3), cycle(4), bad), DomainError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(Graph(3, {{0, 0}, {0, 1}, {1, 2}}), DomainError);
  CHECK_THROWS_AS(Graph(3, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(Graph(2, {{0, 2}}), DomainError);
  CHECK_THROWS_AS(Graph(2, {{0, 1}}, {1, 0}), DomainError);
  CHECK_THROWS_AS(Graph(0, {}), DomainError);
  Graph g(2, {{0, 1}, {1, 0}, {0, 1}});
  CHECK(g.edge_count() == 1);
}
