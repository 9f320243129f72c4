#include "bdg/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bdg/errors.hpp"
#include "bdg/star_exact.hpp"

namespace bdg {

using boost::multiprecision::cpp_rational;

SpectralResult spectral_radius_A_plus_I(const Graph& graph, double tol, int max_iterations) {
  const Graph g = graph.has_unit_intensities() ? graph : expand_intensities(graph);
  const int n = g.vertex_count();
  std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n))), y(n);
  SpectralResult r;
  double previous = 0;
  for (int it = 1; it <= max_iterations; ++it) {
    for (int v = 0; v < n; ++v) {
      double s = x[v];
      for (Vertex w : g.neighbours(v)) s += x[w];
      y[v] = s;
    }
    double dot = 0, norm2 = 0;
    for (int v = 0; v < n; ++v) {
      dot += x[v] * y[v];
      norm2 += y[v] * y[v];
    }
    const double lambda = dot;  // x has unit norm
    const double scale = 1.0 / std::sqrt(norm2);
    for (int v = 0; v < n; ++v) x[v] = y[v] * scale;
    r.iterations = it;
    r.last_change = std::abs(lambda - previous);
    r.rho = lambda;
    if (it > 1 && r.last_change < tol) return r;
    previous = lambda;
  }
  throw NumericError("power iteration did not converge", r.last_change);
}

double upper_bound(const Graph& g) { return std::numbers::e * spectral_radius_A_plus_I(g).rho; }

double lower_bound_constant() {
  const double e = std::numbers::e;
  return (2 * e - 1) / ((e - 1) * (e - 1));
}

LowerChain lower_bound_chain(int M) {
  if (M < 2) throw DomainError("lower_bound_chain needs M >= 2");
  LowerChain c;
  cpp_rational w = 1, total = 0;
  for (int k = 1; k <= M; ++k) {
    w /= k;  // 1/k!
    c.p.push_back(w);
    total += w;
  }
  for (auto& p : c.p) p /= total;
  c.first = c.second = 0;
  for (int k = 1; k < M; ++k) {
    c.first += c.p[k - 1] * (k + 1);
    c.second += c.p[k - 1] * cpp_rational(k, k + 1);
  }
  c.value = static_cast<double>(c.first * c.second);
  return c;
}

LowerChain finite_m_lower_chain(int m, int M) {
  if (M < 2 || m <= M) throw DomainError("finite_m_lower_chain needs m > M >= 2");
  LowerChain c;
  // balance of the jump chain: p(k+1) = p(k) * P(k -> k+1)
  cpp_rational w = 1, total = 0;
  for (int k = 1; k <= M; ++k) {
    if (k > 1) w *= cpp_rational(m - (k - 1), (k - 1) * m + m - (k - 1));
    c.p.push_back(w);
    total += w;
  }
  for (auto& p : c.p) p /= total;
  c.first = c.p[M - 1] * M * m;
  c.second = c.p[M - 1];
  for (int k = 1; k < M; ++k) {
    c.first += c.p[k - 1] * ((k + 1) * m - k);
    c.second += c.p[k - 1] * cpp_rational(k * m, k * m + m - k);
  }
  c.value = static_cast<double>(c.first * c.second);
  return c;
}

SlowModelBound slow_model_bound(int degree, int M) {
  if (degree < 2 || M < 1 || M > degree - 1)
    throw DomainError("slow_model_bound needs degree >= 2 and 1 <= M <= degree - 1");
  SlowModelBound b;
  auto up = [&](int k) { return k < M ? degree - 1 - k : 0; };
  auto reset = [&](int k) { return k * (degree - 1); };
  // time balance across the cut between k-1 and k
  cpp_rational w = 1, total = 0;
  for (int k = 1; k <= M; ++k) {
    if (k > 1) w *= cpp_rational(up(k - 1), reset(k) + up(k));
    b.pi.push_back(w);
    total += w;
  }
  for (auto& p : b.pi) p /= total;
  for (int k = 1; k <= M; ++k) b.rate += b.pi[k - 1] * reset(k);
  b.value = static_cast<double>(b.rate);
  return b;
}

std::optional<double> regular_girth5_lower_bound(const Graph& graph) {
  const Graph g = graph.has_unit_intensities() ? graph : expand_intensities(graph);
  auto met = metrics(g);
  if (!met.is_regular || met.girth < 5 || met.girth == kInfiniteGirth || met.max_degree < 2)
    return std::nullopt;
  double best = 0;
  for (int M = 1; M <= std::min(met.max_degree - 1, 12); ++M)
    best = std::max(best, slow_model_bound(met.max_degree, M).value);
  return best;
}

BoundReport corollary1_sandwich(const Graph& graph, std::optional<double> gamma_ref,
                                double gamma_ref_stderr) {
  const Graph g = graph.has_unit_intensities() ? graph : expand_intensities(graph);
  BoundReport rep;
  auto spec = spectral_radius_A_plus_I(g);
  rep.rho = spec.rho;
  rep.upper = std::numbers::e * rep.rho;
  rep.witnesses.push_back("upper: e * rho(A+I), power iteration, " + std::to_string(spec.iterations) +
                          " iterations");

  const int delta = metrics(g).max_degree;
  if (delta == 0) {
    rep.lower = 1;
    rep.witnesses.push_back("lower: single vertex grows at rate 1");
  } else {
    auto s = gamma_star_series(delta + 1, 1e-12);
    rep.lower = s.value - s.error_bound;
    rep.witnesses.push_back("lower: gamma(S_" + std::to_string(delta + 1) +
                            ") by the star series, closed star of a max-degree vertex");
  }
  if (auto chain = regular_girth5_lower_bound(g); chain && *chain > rep.lower) {
    rep.lower = *chain;
    rep.witnesses.push_back("lower: slowed growth model on a regular girth >= 5 graph");
  }

  rep.consistent = rep.lower <= rep.upper;
  if (gamma_ref) {
    rep.gamma_ref = gamma_ref;
    rep.gamma_ref_stderr = gamma_ref_stderr;
    const double slack = 3 * gamma_ref_stderr;
    rep.consistent = rep.consistent && rep.lower - slack <= *gamma_ref && *gamma_ref <= rep.upper + slack;
  }
  return rep;
}

}  // namespace bdg
