#pragma once

#include <cstddef>
#include <span>

namespace bdg::stats {

struct Summary {
  double mean = 0;
  double variance = 0;  // unbiased; 0 when n < 2
  std::size_t n = 0;
};

Summary summarize(std::span<const double> x);

/// Two-sided Student-t quantile: t with P(|T_df| <= t) = level.
double t_quantile(double df, double level = 0.95);

/// Survival function of the Kolmogorov distribution, P(K > x).
double kolmogorov_sf(double x);

struct KsResult {
  double statistic = 0;
  double p_value = 1;
};

/// One-sample KS test of x against N(mean, sd^2). The p-value uses the
/// asymptotic distribution with Stephens' small-sample correction.
KsResult ks_normal(std::span<const double> x, double mean, double sd);

struct FTestResult {
  double statistic = 0;  // var_a / var_b
  double p_value = 1;    // two-sided
};

FTestResult f_test(const Summary& a, const Summary& b);

}  // namespace bdg::stats
