#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "bdg/errors.hpp"
#include "bdg/surface_chain.hpp"

namespace bdg {

using boost::multiprecision::cpp_rational;

void check_theorem1(int N, int n, int m) {
  if (N < 0 || n < 1 || m < 2 || m % 2)
    throw DomainError("theorem1_family parameters need N >= 0, n >= 1 and even m >= 2 (got " +
                      std::to_string(N) + "," + std::to_string(n) + "," + std::to_string(m) + ")");
  if (m == 2 && N < 1) throw DomainError("theorem1_family parameters need N >= 1 when m = 2");
}

Theorem1Stationary theorem1_stationary(int N, int n, int m) {
  check_theorem1(N, n, m);
  const double v = N + static_cast<double>(n) * m;
  Theorem1Stationary t;
  t.kappa = v / (2.0 * n);
  const double root = std::sqrt(t.kappa * t.kappa - 1.0);
  t.tau = 1.0 / (root - t.kappa + 1.0);
  t.ratio = t.kappa - root;
  t.c1 = (n * static_cast<double>(m) / v) / (t.tau + 1.0 / (2.0 * t.kappa));
  t.pi0 = 1.0 - t.c1 * t.tau;
  return t;
}

double gamma_theorem1(int N, int n, int m) {
  auto t = theorem1_stationary(N, n, m);
  const double v = N + static_cast<double>(n) * m;
  return v - (static_cast<double>(n) * n * m / v) * t.tau / (t.tau + 1.0 / (2.0 * t.kappa));
}

ChainSpec delta_chain_theorem1(int N, int n, int m, int M) {
  check_theorem1(N, n, m);
  if (M < 3) throw DomainError("delta chain truncation needs M >= 3");
  const double v = N + static_cast<double>(n) * m;
  const double pN = N / v, pn = n / v, pcross = n * (m - 2.0) / v;
  ChainBuilder b;
  // state 0: every vertex of maximal excess grows the max
  b.begin_row();
  b.add(0, pN, 1);
  b.add(1, n * static_cast<double>(m) / v, 1);
  for (int k = 1; k <= M; ++k) {
    b.begin_row();
    b.add(0, pN, 1);
    b.add(k == M ? M : k + 1, pn, 1);
    b.add(k - 1 == 0 ? 0 : k - 1, pn, 0);  // partner of the top clone class
    if (pcross > 0) b.add(1, pcross, 1);
  }
  ChainSpec c = b.finish(M);
  c.boundary[M] = 1;
  c.legend.reserve(M + 1);
  for (int k = 0; k <= M; ++k) c.legend.push_back(std::to_string(k));
  return c;
}

ChainSpec s3_reduced_chain(int M) {
  if (M < 3) throw DomainError("reduced star chain needs M >= 3");
  const double third = 1.0 / 3.0, two_thirds = 2.0 / 3.0;
  auto id = [](int k) { return k + 1; };  // z is index 0
  ChainBuilder b;
  b.begin_row();  // z
  b.add(0, third, 1);
  b.add(id(1), two_thirds, 1);
  b.begin_row();  // 0
  b.add(id(1), two_thirds, 1);
  b.add(0, third, 1);
  for (int k = 1; k <= M; ++k) {
    b.begin_row();
    b.add(id(k == M ? M : k + 1), third, 1);
    b.add(id(k - 1), third, 0);
    b.add(0, third, 1);
  }
  ChainSpec c = b.finish(M);
  c.boundary[id(M)] = 1;
  c.legend.push_back("z");
  for (int k = 0; k <= M; ++k) c.legend.push_back(std::to_string(k));
  return c;
}

ChainSpec nn_complete_chain(int n) {
  if (n < 1) throw DomainError("nn chain needs n >= 1");
  ChainBuilder b;
  for (int k = 1; k <= n; ++k) {
    b.begin_row();
    b.add(0, static_cast<double>(k) / n, 1);  // a maximal vertex grows
    if (k < n) b.add(k, static_cast<double>(n - k) / n, 0);
  }
  ChainSpec c = b.finish();
  for (int k = 1; k <= n; ++k) c.legend.push_back(std::to_string(k));
  return c;
}

double gamma_nn_closed_form(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  const double x = n;
  const double scale = std::exp(x - x * std::log(x) + std::lgamma(x + 1.0));
  return x / (scale * boost::math::gamma_q(x + 1.0, x) - 1.0);
}

NnExact gamma_nn_complete(int n) {
  if (n < 1) throw DomainError("n must be >= 1");
  NnExact r;
  r.pi.resize(n);
  cpp_rational w = 1, total = 0;
  for (int k = 1; k <= n; ++k) {
    if (k > 1) w *= cpp_rational(n - (k - 1), n);
    r.pi[k - 1] = w;
    total += w;
  }
  r.gamma = 0;
  for (int k = 1; k <= n; ++k) {
    r.pi[k - 1] /= total;
    r.gamma += r.pi[k - 1] * k;
  }
  r.value = static_cast<double>(r.gamma);
  r.closed_form = gamma_nn_closed_form(n);
  return r;
}

}  // namespace bdg
