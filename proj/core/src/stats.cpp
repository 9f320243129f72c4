#include "bdg/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>

#include "bdg/errors.hpp"

namespace bdg::stats {

Summary summarize(std::span<const double> x) {
  Summary s;
  s.n = x.size();
  if (x.empty()) return s;
  // Welford
  double mean = 0, m2 = 0;
  std::size_t k = 0;
  for (double v : x) {
    ++k;
    double d = v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (v - mean);
  }
  s.mean = mean;
  s.variance = s.n > 1 ? m2 / static_cast<double>(s.n - 1) : 0.0;
  return s;
}

double t_quantile(double df, double level) {
  if (!(df > 0)) throw DomainError("t_quantile needs df > 0");
  if (!(level > 0 && level < 1)) throw DomainError("t_quantile needs level in (0,1)");
  boost::math::students_t dist(df);
  return boost::math::quantile(dist, 0.5 + level / 2);
}

double kolmogorov_sf(double x) {
  if (x <= 0) return 1.0;
  if (x < 0.2) return 1.0;  // series below is 1 to double precision
  double sum = 0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? term : -term);
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_normal(std::span<const double> x, double mean, double sd) {
  if (x.empty()) throw DomainError("ks_normal needs a non-empty sample");
  if (!(sd > 0)) throw DomainError("ks_normal needs sd > 0");
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  boost::math::normal dist(mean, sd);
  const double n = static_cast<double>(v.size());
  double d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    double f = boost::math::cdf(dist, v[i]);
    d = std::max({d, (static_cast<double>(i) + 1) / n - f, f - static_cast<double>(i) / n});
  }
  const double rn = std::sqrt(n);
  return {d, kolmogorov_sf((rn + 0.12 + 0.11 / rn) * d)};
}

FTestResult f_test(const Summary& a, const Summary& b) {
  if (a.n < 2 || b.n < 2) throw DomainError("f_test needs two samples of size >= 2");
  if (!(a.variance > 0 && b.variance > 0)) throw DomainError("f_test needs positive variances");
  FTestResult r;
  r.statistic = a.variance / b.variance;
  boost::math::fisher_f dist(static_cast<double>(a.n - 1), static_cast<double>(b.n - 1));
  double lower = boost::math::cdf(dist, r.statistic);
  r.p_value = std::min(1.0, 2.0 * std::min(lower, 1.0 - lower));
  return r;
}

}  // namespace bdg::stats
