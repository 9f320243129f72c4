#include "doctest.h"

#include <cmath>

#include "bdg/errors.hpp"
#include "bdg/star_exact.hpp"
#include "oracles.hpp"

using namespace bdg;

namespace {
const double kS3 = 2 + 1 / std::sqrt(5.0);
}

TEST_CASE("max load counts against enumeration") {
  for (int bins = 1; bins <= 4; ++bins)
    for (int balls = 0; balls <= 7; ++balls) {
      INFO(bins, " bins, ", balls, " balls");
      CHECK(max_load_count(bins, balls) == oracle::max_load_bruteforce(bins, balls));
    }
  CHECK(max_load_expectation(2, 2) == BigRational(3, 2));
  auto t = max_load_table(3, 6);
  REQUIRE(t.values.size() == 7);
  for (int k = 0; k <= 6; ++k) CHECK(t.values[k] == max_load_expectation(3, k));
}

TEST_CASE("star series") {
  auto s3 = gamma_star_series(3, 1e-13);
  CHECK(std::abs(s3.value - kS3) < 1e-9);
  CHECK(s3.error_bound < 1e-12);
  CHECK(std::abs(gamma_star_series(4, 1e-13).value - 2.72446357391224888) < 1e-10);
  CHECK(gamma_star_series(2).value == doctest::Approx(2).epsilon(1e-12));
  CHECK_THROWS_AS(gamma_star_series(1), DomainError);
  CHECK_THROWS_AS(gamma_star_series(3, 0), DomainError);
  CHECK_THROWS_AS(gamma_star_series(40, 1e-12, 10), ResourceError);
}

TEST_CASE("Poisson representation agrees with the series") {
  for (int n = 2; n <= 12; ++n) {
    INFO("n = ", n);
    CHECK(std::abs(gamma_star_poisson(n) - gamma_star_series(n, 1e-11).value) < 1e-6);
  }
  CHECK(poisson_max_mean(1, 2.5) == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("two-bin counts") {
  for (int k = 1; k <= 30; ++k) CHECK(a2_closed_form(k) == max_load_count(2, k));
  CHECK(a2_recurrence_check(50));
  const auto& fixture = a2_fixture();
  REQUIRE(fixture.size() >= 10);
  for (std::size_t k = 1; k <= fixture.size(); ++k)
    CHECK(BigInt(fixture[k - 1]) == max_load_count(2, static_cast<int>(k)));
}

TEST_CASE("generating function") {
  CHECK(1 + generating_function_g_prime(1.0 / 3) / 9 == doctest::Approx(kS3).epsilon(1e-15));
  CHECK(1 + 2 * generating_function_g_prime(0.4) / 25 == doctest::Approx(11.0 / 3).epsilon(1e-15));
  CHECK(gamma_via_g(1.0 / 9, 1.0 / 3) == doctest::Approx(kS3).epsilon(1e-15));

  // g(s) = sum_k a_{2,k} s^k / k
  auto c = g_series_coefficients(40);
  REQUIRE(c.size() == 40);
  for (int k = 1; k <= 40; ++k) CHECK(c[k - 1] * k == BigRational(max_load_count(2, k)));
  double s = 0.1, partial = 0;
  for (int k = 40; k >= 1; --k) partial = (partial + static_cast<double>(c[k - 1])) * s;
  CHECK(generating_function_g(s) == doctest::Approx(partial).epsilon(1e-14));
  // derivative by central difference
  double h = 1e-5, x = 0.3;
  double fd = (generating_function_g(x + h) - generating_function_g(x - h)) / (2 * h);
  CHECK(generating_function_g_prime(x) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("large-star trend") {
  auto rows = gonnet_trend({3, 10, 30, 100, 1000});
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].gamma > rows[i - 1].gamma);
  CHECK(std::abs(rows[0].gamma - kS3) < 1e-6);
  for (const auto& r : rows) CHECK(r.ratio == doctest::Approx(r.gamma * std::log(std::log(r.n)) / std::log(r.n)));
  CHECK_THROWS_AS(gonnet_trend({2}), DomainError);
}
