#include "doctest.h"

#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "bdg/errors.hpp"
#include "bdg/markov_chain.hpp"
#include "bdg/star_exact.hpp"
#include "bdg/surface_chain.hpp"
#include "oracles.hpp"

using namespace bdg;
using boost::multiprecision::cpp_rational;

namespace {

const double kS3 = 2 + 1 / std::sqrt(5.0);

double chain_gamma(const Graph& g, int M, const SurfaceChainOptions& opts = {}) {
  auto sc = build_truncated_surface_chain(g, M, opts);
  return gamma_from_chain(sc.chain, stationary(sc.chain), sc.rate);
}

int max_of(const SurfaceState& s) { return *std::max_element(s.begin(), s.end()); }

struct Triple {
  int N, n, m;
  double value;
};

std::vector<Triple> triples() {
  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r5 = std::sqrt(5.0);
  return {{1, 1, 2, 2 + 1 / r5},         {0, 1, 4, 2 + 2 / r3},
          {2, 1, 2, 3 + 1 / r3},         {1, 2, 2, 11.0 / 3},
          {0, 1, 6, 3 + 3 / r2},         {1, 1, 4, 3 + 2 * std::sqrt(21.0) / 7},
          {2, 2, 2, 4 + 2 / r5},         {1, 3, 2, 4 + 3 / std::sqrt(13.0)}};
}

}  // namespace

TEST_CASE("transitions on the three-vertex star") {
  auto s3 = star(3);
  CHECK(surface_transition(s3, {1, 0, 0}, 0) == SurfaceState{2, 0, 0});
  CHECK(surface_transition(s3, {1, 0, 0}, 1) == SurfaceState{1, 2, 0});
  CHECK(surface_transition(complete(1), {0}, 0) == SurfaceState{0});
  CHECK_THROWS_AS(surface_transition(s3, {0, 0, 1}, 0), DomainError);  // adjacent equal heights
  CHECK_THROWS_AS(surface_transition(s3, {1, 2, 1}, 0), DomainError);  // min not 0
  CHECK_THROWS_AS(surface_transition(s3, {1, 0, 0}, 5), DomainError);
}

TEST_CASE("rewards") {
  auto p3 = path(3);
  SurfaceState s{0, 1, 2};
  CHECK(growth_reward(p3, s, 0) == 0);
  CHECK(reward_g2(p3, s, surface_transition(p3, s, 0)) == 0);
  CHECK(reward_g2(p3, s, surface_transition(p3, s, 2)) == 1);
  CHECK_THROWS_AS(reward_g2(p3, s, SurfaceState{0, 5, 0}), DomainError);
  auto k4 = complete(4);
  SurfaceState k{0, 1, 2, 3};
  for (int y = 0; y < 4; ++y) CHECK(growth_reward(k4, k, y) == 1);
}

TEST_CASE("surface trajectories follow the unnormalized dynamics") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 24; ++trial) {
    int n = 2 + trial % 5;
    auto e = oracle::random_connected(n, 0.5, rng);
    Graph g(n, e);
    auto a = oracle::adjacency(n, e);
    std::vector<long long> h(n, 0);
    for (int y = 0; y < n; ++y) oracle::step(a, h, y);
    SurfaceState s = start_state(g);
    REQUIRE(s == oracle::normalize(h));
    std::uniform_int_distribution<int> pick(0, n - 1);
    long long reward_total = 0, max0 = *std::max_element(h.begin(), h.end());
    for (int t = 0; t < 10'000; ++t) {
      int y = pick(rng);
      oracle::step(a, h, y);
      SurfaceState next = surface_transition(g, s, y);
      REQUIRE(next == oracle::normalize(h));
      REQUIRE(in_state_space(g, next));
      reward_total += reward_g2(g, s, next);
      s = std::move(next);
    }
    CHECK(reward_total == *std::max_element(h.begin(), h.end()) - max0);
  }
}

TEST_CASE("lumped and raw dynamics produce the same rewards") {
  std::mt19937_64 rng(5);
  std::vector<Graph> graphs{star(3), path(5), cycle(5), butterfly(), theorem1_family(0, 1, 6),
                            petersen()};
  for (int trial = 0; trial < 10; ++trial) {
    int n = 3 + trial % 5;
    graphs.emplace_back(n, oracle::random_connected(n, 0.4, rng));
  }
  for (const auto& g : graphs) {
    const int n = g.vertex_count();
    std::uniform_int_distribution<int> pick(0, n - 1);
    SurfaceState raw = start_state(g), lumped = canonical_form(g, raw);
    for (int t = 0; t < 20'000; ++t) {
      int y = pick(rng);
      REQUIRE(growth_reward(g, raw, y) == growth_reward(g, lumped, y));
      raw = surface_transition(g, raw, y);
      lumped = canonical_form(g, surface_transition(g, lumped, y));
      REQUIRE(in_state_space(g, lumped));
      REQUIRE(canonical_form(g, raw) == lumped);
    }
  }
}

TEST_CASE("raw truncated chain stays in S and resets") {
  SurfaceChainOptions raw;
  raw.lump_hidden = false;
  for (const Graph& g : {star(3), cycle(4), path(4), butterfly()}) {
    const int n = g.vertex_count(), M = n + 5;
    auto sc = build_truncated_surface_chain(g, M, raw);
    CHECK(is_irreducible(sc.chain));
    for (const auto& s : sc.states) {
      REQUIRE(in_state_space(g, s));
      REQUIRE(max_of(s) <= M);
      for (int y = 0; y < n; ++y) REQUIRE(in_state_space(g, surface_transition(g, s, y)));
      if (max_of(s) > M - n) continue;
      auto top = static_cast<Vertex>(std::max_element(s.begin(), s.end()) - s.begin());
      SurfaceState t = s;
      for (Vertex y : non_decreasing_permutation(g, top)) t = surface_transition(g, t, y);
      CHECK(max_of(t) <= n);
    }
  }
}

TEST_CASE("truncation closure keeps the chain inside the cap") {
  auto sc = build_truncated_surface_chain(butterfly(), 8);
  bool any = false;
  for (char c : sc.overflow) any = any || c;
  CHECK(any);
  for (const auto& s : sc.states) CHECK(max_of(s) <= 8);
  auto pi = stationary(sc.chain);
  CHECK(closure_flux(sc, pi) > 0);
  CHECK(pi.tail_bound > 0);
  CHECK_THROWS_AS(build_truncated_surface_chain(butterfly(), 4), DomainError);
  SurfaceChainOptions tiny;
  tiny.max_states = 10;
  CHECK_THROWS_AS(build_truncated_surface_chain(butterfly(), 12, tiny), ResourceError);
}

TEST_CASE("truncated chain gamma") {
  auto t0 = std::chrono::steady_clock::now();
  CHECK(std::abs(chain_gamma(star(3), 16) - kS3) < 1e-6);
  CHECK(std::abs(chain_gamma(path(3), 16) - chain_gamma(star(3), 16)) < 1e-14);
  CHECK(chain_gamma(complete(4), 8) == doctest::Approx(4).epsilon(1e-14));
  CHECK(std::abs(chain_gamma(butterfly(), 12) - 11.0 / 3) < 1e-5);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() < 10);

  auto r = surface_gamma(star(3), 16, 4);
  CHECK(r.levels == std::vector<int>{8, 12, 16});
  CHECK(std::abs(r.values[0] - kS3) > std::abs(r.values[2] - kS3));
  CHECK(std::abs(r.extrapolated - kS3) < 1e-6);
}

TEST_CASE("theorem-1 family through the generic chain") {
  for (auto t : triples()) {
    auto g = theorem1_family(t.N, t.n, t.m);
    double v = chain_gamma(reduce_irreducible(g), 20);
    INFO(t.N, " ", t.n, " ", t.m);
    CHECK(std::abs(v - t.value) < 1e-8);
  }
}

TEST_CASE("closed form") {
  for (auto t : triples()) {
    INFO(t.N, " ", t.n, " ", t.m);
    CHECK(std::abs(gamma_theorem1(t.N, t.n, t.m) - t.value) <= 1e-12 * t.value);
  }
  CHECK_THROWS_AS(gamma_theorem1(0, 1, 2), DomainError);
  CHECK_THROWS_AS(gamma_theorem1(1, 1, 3), DomainError);
  CHECK_THROWS_AS(gamma_theorem1(0, 0, 4), DomainError);
  CHECK_THROWS_AS(gamma_theorem1(-1, 1, 4), DomainError);
}

TEST_CASE("excess chain") {
  for (auto t : triples()) {
    auto c = delta_chain_theorem1(t.N, t.n, t.m, 60);
    auto pi = stationary(c);
    const int V = t.N + t.n * t.m;
    INFO(t.N, " ", t.n, " ", t.m);
    CHECK(std::abs(gamma_from_chain(c, pi, V) - t.value) < 1e-9);
    // the reward accounting #V - n (1 - Pi(0))
    CHECK(std::abs(V - t.n * (1 - pi.distribution[0]) - t.value) < 1e-9);
    auto st = theorem1_stationary(t.N, t.n, t.m);
    CHECK(std::abs(pi.distribution[0] - (1 - st.c1 * st.tau)) < 1e-9);
  }
  auto c = delta_chain_theorem1(0, 1, 4, 40);
  auto pi = stationary(c);
  auto st = theorem1_stationary(0, 1, 4);
  for (int k = 1; k <= 30; ++k)
    CHECK(std::abs(pi.distribution[k] - st.c1 * std::pow(st.ratio, k - 1)) < 1e-10);
  CHECK(std::abs(pi.distribution[0] - st.pi0) < 1e-10);
}

TEST_CASE("reduced star chain") {
  auto c = s3_reduced_chain(40);
  auto pi = stationary(c);
  CHECK(pi.residual < 1e-12);
  CHECK(std::abs(gamma_from_chain(c, pi, 3) - kS3) < 1e-8);
}

// Quotient of the raw S3 chain onto z, 0, 1, ... (index 0 is z, k at k+1).
TEST_CASE("reduced star chain is the quotient of the raw chain") {
  SurfaceChainOptions raw;
  raw.lump_hidden = false;
  const int M = 6;
  auto sc = build_truncated_surface_chain(star(3), M, raw);
  auto reduced = s3_reduced_chain(M + 2);
  auto quotient = [](const SurfaceState& s) {
    const int c = s[0], a = s[1], b = s[2];
    if (c == 0) return std::abs(a - b) + 1;
    const int leaf = std::max(a, b);
    return c > leaf ? 0 : leaf - c + 1;
  };
  int compared = 0;
  for (int s = 0; s < sc.chain.state_count; ++s) {
    bool closed = false;
    std::map<std::pair<int, int>, double> row;
    for (int i = sc.chain.row_begin(s); i < sc.chain.row_end(s); ++i) {
      closed = closed || sc.overflow[i];
      row[{quotient(sc.states[sc.chain.targets[i]]), static_cast<int>(sc.chain.rewards[i])}] +=
          sc.chain.probabilities[i];
    }
    if (closed) continue;
    const int q = quotient(sc.states[s]);
    std::map<std::pair<int, int>, double> expected;
    for (int i = reduced.row_begin(q); i < reduced.row_end(q); ++i)
      expected[{reduced.targets[i], static_cast<int>(reduced.rewards[i])}] += reduced.probabilities[i];
    REQUIRE(row.size() == expected.size());
    for (auto [key, p] : expected) CHECK(row[key] == doctest::Approx(p).epsilon(1e-15));
    ++compared;
  }
  CHECK(compared > 10);
}

TEST_CASE("nearest-neighbour model on complete graphs") {
  const std::vector<cpp_rational> exact{1, cpp_rational(4, 3), cpp_rational(27, 17),
                                        cpp_rational(128, 71), cpp_rational(3125, 1569)};
  for (int n = 1; n <= 5; ++n) CHECK(gamma_nn_complete(n).gamma == exact[n - 1]);
  auto two = gamma_nn_complete(2);
  CHECK(two.pi == std::vector<cpp_rational>{cpp_rational(2, 3), cpp_rational(1, 3)});
  for (int n = 1; n <= 50; ++n) {
    auto r = gamma_nn_complete(n);
    auto c = nn_complete_chain(n);
    double solved = gamma_from_chain(c, stationary(c), n);
    CHECK(std::abs(r.closed_form - solved) < 1e-10);
    CHECK(std::abs(r.value - solved) < 1e-10);
  }
  double ratio = gamma_nn_complete(200).value / std::sqrt(200.0);
  CHECK(std::abs(ratio / std::sqrt(2 / M_PI) - 1) < 0.02);
  CHECK_THROWS_AS(gamma_nn_complete(0), DomainError);
}

TEST_CASE("asymptotic variance") {
  for (int n : {2, 3, 5}) {
    auto sc = build_truncated_surface_chain(complete(n), n + 4);
    CHECK(std::abs(sigma2_exact(sc.chain, stationary(sc.chain))) < 1e-12);
  }
  auto r = surface_gamma(star(3), 16, 4, true);
  CHECK(r.sigma2[2] > 0.01);
  CHECK(std::abs(r.sigma2[1] - r.sigma2[2]) < 1e-4);
}

TEST_CASE("subgraph monotonicity on exact values") {
  double c4 = chain_gamma(cycle(4), 16);
  double chord = chain_gamma(theorem1_family(2, 1, 2), 16);
  double k4 = chain_gamma(complete(4), 8);
  CHECK(c4 < chord);
  CHECK(chord < k4);
}
