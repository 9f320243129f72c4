#include "bdg/star_exact.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bdg/errors.hpp"

namespace bdg {

namespace {

std::vector<std::vector<BigInt>> binomials(int k_max) {
  std::vector<std::vector<BigInt>> c(k_max + 1);
  for (int j = 0; j <= k_max; ++j) {
    c[j].resize(j + 1);
    c[j][0] = c[j][j] = 1;
    for (int i = 1; i < j; ++i) c[j][i] = c[j - 1][i - 1] + c[j - 1][i];
  }
  return c;
}

// a_{bins,k} for k = 0..k_max. For every threshold m the DP over bins counts
// placements with all loads < m; a_{b,k} = sum_m (b^k - count_m(k)).
std::vector<BigInt> max_load_counts(int bins, int k_max) {
  if (bins < 1) throw DomainError("bins must be >= 1");
  if (k_max < 0) throw DomainError("balls must be >= 0");
  auto choose = binomials(k_max);
  std::vector<BigInt> power(k_max + 1);
  power[0] = 1;
  for (int k = 1; k <= k_max; ++k) power[k] = power[k - 1] * bins;

  std::vector<BigInt> a(k_max + 1, 0), cur(k_max + 1), next(k_max + 1);
  for (int m = 1; m <= k_max; ++m) {
    // cur[j]: placements of j labelled balls into the bins seen so far, all loads < m
    std::fill(cur.begin(), cur.end(), 0);
    cur[0] = 1;
    for (int t = 0; t < bins; ++t) {
      for (int j = 0; j <= k_max; ++j) {
        BigInt s = 0;
        for (int i = 0; i < m && i <= j; ++i) s += choose[j][i] * cur[j - i];
        next[j] = std::move(s);
      }
      std::swap(cur, next);
    }
    for (int k = m; k <= k_max; ++k) a[k] += power[k] - cur[k];
  }
  return a;
}

}  // namespace

BigInt max_load_count(int bins, int balls) { return max_load_counts(bins, balls)[balls]; }

BigRational max_load_expectation(int bins, int balls) {
  BigInt denom = boost::multiprecision::pow(BigInt(bins), static_cast<unsigned>(balls));
  return BigRational(max_load_count(bins, balls), denom);
}

MaxLoadTable max_load_table(int bins, int k_max) {
  MaxLoadTable t;
  t.bins = bins;
  t.k_max = k_max;
  auto a = max_load_counts(bins, k_max);
  BigInt denom = 1;
  for (int k = 0; k <= k_max; ++k) {
    t.values.emplace_back(a[k], denom);
    denom *= bins;
  }
  return t;
}

BigInt a2_closed_form(int k) {
  if (k < 0) throw DomainError("k must be >= 0");
  const int j = k / 2;
  BigInt central = 1;  // C(2j, j)
  for (int i = 1; i <= j; ++i) central = central * (j + i) / i;
  BigInt four_j = BigInt(1) << (2 * j);
  if (k % 2 == 0) return j * four_j + j * central;
  return k * four_j + k * central;
}

bool a2_recurrence_check(int k_max) {
  if (k_max < 3) throw DomainError("k_max must be >= 3");
  auto a = max_load_counts(2, k_max);
  for (int k = 3; k <= k_max; ++k) {
    // multiplied through by (k-1)(k-2)
    BigInt lhs = a[k] * (k - 1) * (k - 2);
    BigInt rhs = 2 * k * (k - 2) * a[k - 1] + 4 * (k - 3) * (k - 1) * a[k - 2] -
                 8 * (k - 1) * (k - 2) * a[k - 3];
    if (lhs != rhs) return false;
  }
  return true;
}

const std::vector<std::int64_t>& a2_fixture() {
  // prefix of A230137, transcribed from the closed forms for a_{2,k}
  static const std::vector<std::int64_t> v{2,      6,      18,      44,      110,     252,    588,
                                           1304,   2934,   6380,    14036,   30120,   65260,  138712,
                                           297240, 627248, 1332902, 2796876, 5904516, 12333320};
  return v;
}

SeriesValue gamma_star_series(int n, double tol, int k_budget) {
  if (n < 2) throw DomainError("gamma_star_series needs n >= 2");
  if (!(tol > 0)) throw DomainError("tol must be > 0");
  using ld = long double;
  const int b = n - 1;
  const ld r = static_cast<ld>(b) / n;

  // tail after K terms: sum_{k>K} (1/n) k r^k = (K + n) r^(K+1)
  int K = 0;
  ld rk1 = r;  // r^(K+1)
  while ((K + n) * rk1 >= tol) {
    if (++K > k_budget)
      throw ResourceError("gamma_star_series(" + std::to_string(n) + ") needs more than " +
                          std::to_string(k_budget) + " terms for tol " + std::to_string(tol));
    rk1 *= r;
  }

  std::vector<ld> weight(K + 1);
  weight[0] = 1.0L / n;
  for (int k = 1; k <= K; ++k) weight[k] = weight[k - 1] * r;

  ld total = 0;
  std::vector<ld> cur(K + 1), next(K + 1);
  for (int m = 1; m <= K; ++m) {
    // cur[j] = P(all of the first t bins hold < m | j balls uniform over t bins)
    for (int j = 0; j <= K; ++j) cur[j] = j < m ? 1.0L : 0.0L;
    for (int t = 2; t <= b; ++t) {
      const ld stay = 1.0L - 1.0L / t, odds = 1.0L / (t - 1);
      ld stay_pow = 1;  // stay^j
      for (int j = 0; j <= K; ++j) {
        ld p = stay_pow, s = 0;
        for (int i = 0; i < m && i <= j; ++i) {
          s += p * cur[j - i];
          p *= static_cast<ld>(j - i) / (i + 1) * odds;
        }
        next[j] = s;
        stay_pow *= stay;
      }
      std::swap(cur, next);
    }
    ld contrib = 0;
    for (int k = m; k <= K; ++k) contrib += weight[k] * (1.0L - cur[k]);
    total += contrib;
    if (contrib < 1e-22L) break;  // later thresholds contribute less
  }
  return {static_cast<double>(1.0L + total), static_cast<double>((K + n) * rk1), K};
}

double poisson_max_mean(int b, double lambda) {
  if (b < 1) throw DomainError("b must be >= 1");
  if (lambda < 0) throw DomainError("lambda must be >= 0");
  if (lambda == 0) return 0;
  double sum = 0;
  for (int m = 1;; ++m) {
    const double upper = boost::math::gamma_p(static_cast<double>(m), lambda);  // P(X >= m)
    const double term = upper >= 1.0 ? 1.0 : -std::expm1(b * std::log1p(-upper));
    sum += term;
    if (m > lambda && term < 1e-17 * std::max(1.0, sum)) break;
  }
  return sum;
}

double gamma_star_poisson(int n, double tol) {
  if (n < 2) throw DomainError("gamma_star_poisson needs n >= 2");
  const int b = n - 1;
  auto f = [b](double lambda) { return std::exp(-lambda) * poisson_max_mean(b, lambda); };
  double err = 0;
  double value = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
      f, 0.0, std::numeric_limits<double>::infinity(), 20, tol * 1e-2, &err);
  if (!(err <= tol)) throw NumericError("Poisson integral did not converge", err);
  return 1.0 + value;
}

double generating_function_g(double s) {
  if (!(s >= 0 && s < 0.5)) throw DomainError("g(s) needs 0 <= s < 1/2");
  return (4 * s - 1 + std::sqrt(1 - 4 * s * s)) / (2 - 4 * s);
}

double generating_function_g_prime(double s) {
  if (!(s >= 0 && s < 0.5)) throw DomainError("g'(s) needs 0 <= s < 1/2");
  const double root = std::sqrt(1 - 4 * s * s);
  const double num = 4 * s - 1 + root, den = 2 - 4 * s;
  const double dnum = 4 - 4 * s / root;
  return (dnum * den + 4 * num) / (den * den);
}

double gamma_via_g(double w, double p) { return 1 + w * generating_function_g_prime(p); }

std::vector<BigRational> g_series_coefficients(int k_max) {
  if (k_max < 1) throw DomainError("k_max must be >= 1");
  // numerator 4s - 1 + sqrt(1 - 4s^2), sqrt via binom(1/2, j) (-4)^j s^(2j)
  std::vector<BigRational> num(k_max + 1, 0);
  BigRational binom = 1;  // binom(1/2, j)
  for (int j = 0; 2 * j <= k_max; ++j) {
    if (j > 0) binom = binom * (BigRational(1, 2) - (j - 1)) / j;
    BigRational term = binom;
    for (int i = 0; i < j; ++i) term *= -4;
    num[2 * j] += term;
  }
  num[0] -= 1;
  if (k_max >= 1) num[1] += 4;
  // times 1/(2 - 4s) = sum (1/2) 2^k s^k
  std::vector<BigRational> out(k_max);
  for (int k = 1; k <= k_max; ++k) {
    BigRational c = 0, geo = BigRational(1, 2);
    for (int i = k; i >= 0; --i) {
      c += num[i] * geo;
      geo *= 2;
    }
    out[k - 1] = c;
  }
  return out;
}

std::vector<GonnetRow> gonnet_trend(const std::vector<int>& n_list) {
  std::vector<GonnetRow> rows;
  for (int n : n_list) {
    if (n < 3) throw DomainError("gonnet_trend needs n >= 3");
    GonnetRow row;
    row.n = n;
    row.gamma = gamma_star_poisson(n, 1e-10);
    const double ln = std::log(static_cast<double>(n));
    row.ratio = row.gamma * std::log(ln) / ln;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace bdg
