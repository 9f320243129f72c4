#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Dense>

#include "bdg/errors.hpp"
#include "bdg/markov_chain.hpp"
#include "bdg/surface_chain.hpp"

using namespace bdg;

namespace {

ChainSpec random_chain(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::uniform_int_distribution<int> reward(0, 1);
  ChainBuilder b;
  for (int s = 0; s < n; ++s) {
    b.begin_row();
    std::vector<double> w(n);
    double total = 0;
    for (auto& x : w) total += x = u(rng);
    for (int t = 0; t < n; ++t) b.add(t, w[t] / total, reward(rng));
  }
  return b.finish();
}

// sparse chain on a ring with random jumps, large enough for the iterative paths
ChainSpec ring_chain(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::uniform_int_distribution<int> far(0, n - 1);
  ChainBuilder b;
  for (int s = 0; s < n; ++s) {
    b.begin_row();
    double w[3] = {u(rng), u(rng), 0.05 * u(rng)};
    double total = w[0] + w[1] + w[2];
    b.add((s + 1) % n, w[0] / total, 1);
    b.add((s + n - 1) % n, w[1] / total, 0);
    b.add(far(rng), w[2] / total, s % 3 == 0);
  }
  return b.finish();
}

// Var[Y_1] + 2 sum_k Cov[Y_1, Y_{1+k}] by explicit matrix powers
double sigma2_by_series(const ChainSpec& c, const std::vector<double>& pi, int terms) {
  const int n = c.state_count;
  Eigen::VectorXd rbar = Eigen::VectorXd::Zero(n), r2 = Eigen::VectorXd::Zero(n);
  for (int s = 0; s < n; ++s)
    for (int i = c.row_begin(s); i < c.row_end(s); ++i) {
      rbar(s) += c.probabilities[i] * c.rewards[i];
      r2(s) += c.probabilities[i] * c.rewards[i] * c.rewards[i];
    }
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(pi.data(), n);
  const double mu = p.dot(rbar);
  double var = p.dot(r2) - mu * mu;
  // E[Y_1 g(X_2)] with g = P^{k-1} rbar
  Eigen::VectorXd g = rbar;
  double cov = 0;
  for (int k = 1; k <= terms; ++k) {
    double e = 0;
    for (int s = 0; s < n; ++s)
      for (int i = c.row_begin(s); i < c.row_end(s); ++i)
        e += p(s) * c.probabilities[i] * c.rewards[i] * g(c.targets[i]);
    cov += e - mu * mu;
    Eigen::VectorXd next = Eigen::VectorXd::Zero(n);
    for (int s = 0; s < n; ++s)
      for (int i = c.row_begin(s); i < c.row_end(s); ++i) next(s) += c.probabilities[i] * g(c.targets[i]);
    g = next;
  }
  return var + 2 * cov;
}

}  // namespace

TEST_CASE("two-state chain") {
  ChainBuilder b;
  b.begin_row();
  b.add(0, 0.5);
  b.add(1, 0.5);
  b.begin_row();
  b.add(0, 0.5);
  b.add(1, 0.5);
  auto pi = stationary(b.finish());
  CHECK(pi.distribution[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(pi.distribution[1] == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("nearest-neighbour chain on K3") {
  auto pi = stationary(nn_complete_chain(3));
  CHECK(pi.distribution[0] == doctest::Approx(9.0 / 17).epsilon(1e-13));
  CHECK(pi.distribution[1] == doctest::Approx(6.0 / 17).epsilon(1e-13));
  CHECK(pi.distribution[2] == doctest::Approx(2.0 / 17).epsilon(1e-13));
}

TEST_CASE("solvers agree on random chains") {
  std::mt19937_64 rng(9);
  for (int n : {2, 5, 17, 60}) {
    auto c = random_chain(n, rng);
    auto d = stationary(c, 1e-12, SolveMethod::dense);
    auto s = stationary(c, 1e-12, SolveMethod::sparse);
    auto p = stationary(c, 1e-12, SolveMethod::power);
    double sum = 0;
    for (int i = 0; i < n; ++i) {
      sum += d.distribution[i];
      CHECK(d.distribution[i] >= 0);
      CHECK(std::abs(d.distribution[i] - s.distribution[i]) < 1e-12);
      CHECK(std::abs(d.distribution[i] - p.distribution[i]) < 1e-10);
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.residual < 1e-12);
  }
}

TEST_CASE("sigma2 matches the covariance series") {
  std::mt19937_64 rng(4);
  for (int n : {2, 4, 9}) {
    auto c = random_chain(n, rng);
    auto pi = stationary(c);
    CHECK(sigma2_exact(c, pi) == doctest::Approx(sigma2_by_series(c, pi.distribution, 400)).epsilon(1e-9));
  }
  auto s3 = s3_reduced_chain(30);
  auto pi = stationary(s3);
  CHECK(sigma2_exact(s3, pi) == doctest::Approx(sigma2_by_series(s3, pi.distribution, 3000)).epsilon(1e-8));
}

TEST_CASE("large chains take the iterative paths") {
  std::mt19937_64 rng(12);
  auto c = ring_chain(3000, rng);
  auto automatic = stationary(c);
  auto lu = stationary(c, 1e-12, SolveMethod::sparse);
  CHECK(automatic.method == "power");
  double diff = 0;
  for (int s = 0; s < c.state_count; ++s)
    diff = std::max(diff, std::abs(automatic.distribution[s] - lu.distribution[s]));
  CHECK(diff < 1e-12);
  CHECK(sigma2_exact(c, lu) == doctest::Approx(sigma2_by_series(c, lu.distribution, 20000)).epsilon(1e-8));
}

TEST_CASE("gamma from rewards") {
  auto c = nn_complete_chain(4);
  auto pi = stationary(c);
  CHECK(gamma_from_chain(c, pi, 4) == doctest::Approx(gamma_nn_complete(4).value).epsilon(1e-13));
  c.has_rewards = false;
  CHECK_THROWS_AS(gamma_from_chain(c, pi, 4), DomainError);
}

TEST_CASE("builder validation") {
  ChainBuilder b;
  b.begin_row();
  b.add(0, 0.6);
  CHECK_THROWS_AS(b.finish(), DomainError);

  ChainBuilder c;
  c.begin_row();
  c.add(3, 1.0);
  CHECK_THROWS_AS(c.finish(), DomainError);
}

TEST_CASE("irreducibility") {
  ChainBuilder b;
  b.begin_row();
  b.add(0, 1.0);
  b.begin_row();
  b.add(0, 0.5);
  b.add(1, 0.5);
  CHECK_FALSE(is_irreducible(b.finish()));
  CHECK(is_irreducible(s3_reduced_chain(10)));
}

TEST_CASE("triplet export") {
  auto c = s3_reduced_chain(3);
  std::ostringstream out;
  write_triplets(out, c);
  std::istringstream in(out.str());
  std::string line;
  int rows = 0, legend = 0;
  while (std::getline(in, line)) {
    if (line.rfind("# ", 0) == 0 && line.find(':') != std::string::npos) ++legend;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream f(line);
    int a, b;
    double p, r;
    REQUIRE(static_cast<bool>(f >> a >> b >> p >> r));
    ++rows;
  }
  CHECK(rows == static_cast<int>(c.targets.size()));
  CHECK(legend == c.state_count);
}
