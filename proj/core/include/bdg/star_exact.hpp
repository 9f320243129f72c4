#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace bdg {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// a_{n,k} = sum over placements of k labelled balls into n bins of the
/// maximal bin load, i.e. n^k E[Z_{n,k}]. Exact.
BigInt max_load_count(int bins, int balls);
/// E[Z_{n,k}] = a_{n,k} / n^k.
BigRational max_load_expectation(int bins, int balls);

struct MaxLoadTable {
  int bins = 0;
  int k_max = 0;
  std::vector<BigRational> values;  // E[Z_{bins,k}], k = 0..k_max
};
MaxLoadTable max_load_table(int bins, int k_max);

/// a_{2,k} from the closed forms
///   a_{2,2j} = j 4^j + j C(2j, j),  a_{2,2j+1} = (2j+1) 4^j + (2j+1) C(2j, j).
BigInt a2_closed_form(int k);

/// True iff a_{2,k} = 2 k/(k-1) a_{2,k-1} + 4 (k-3)/(k-2) a_{2,k-2} - 8 a_{2,k-3}
/// holds exactly for 3 <= k <= k_max.
bool a2_recurrence_check(int k_max);

/// First terms a_{2,1..} of OEIS A230137, stored as a fixture.
const std::vector<std::int64_t>& a2_fixture();

struct SeriesValue {
  double value = 0;
  double error_bound = 0;  // certified truncation bound
  int terms = 0;           // number of k terms summed
};

/// gamma(S_n) = 1 + (1/n) sum_k ((n-1)/n)^k E[Z_{n-1,k}], summed to k = K with
/// K the smallest index whose tail majorant (K + n) ((n-1)/n)^(K+1) is below
/// tol (from E[Z] <= k). Long double accumulation. Throws ResourceError when
/// K would exceed k_budget, DomainError for n < 2 or tol <= 0.
SeriesValue gamma_star_series(int n, double tol = 1e-12, int k_budget = 200'000);

/// E[max of b i.i.d. Poisson(lambda)].
double poisson_max_mean(int b, double lambda);

/// 1 + int_0^inf e^-lambda f_{n-1}(lambda) d lambda by Gauss-Kronrod.
/// Throws NumericError if the quadrature error estimate exceeds tol.
double gamma_star_poisson(int n, double tol = 1e-10);

/// g(s) = (4s - 1 + sqrt(1 - 4s^2)) / (2 - 4s), 0 <= s < 1/2.
double generating_function_g(double s);
double generating_function_g_prime(double s);
/// 1 + w g'(p).
double gamma_via_g(double w, double p);
/// Exact Taylor coefficients of g at 0: c_1..c_{k_max}.
std::vector<BigRational> g_series_coefficients(int k_max);

struct GonnetRow {
  int n = 0;
  double gamma = 0;
  double ratio = 0;  // gamma log log n / log n
};
/// n >= 3 each (log log n must be positive). Strictly increasing gamma is
/// checked by the caller.
std::vector<GonnetRow> gonnet_trend(const std::vector<int>& n_list);

}  // namespace bdg
