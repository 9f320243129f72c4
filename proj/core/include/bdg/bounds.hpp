#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bdg/graph.hpp"

namespace bdg {

struct SpectralResult {
  double rho = 0;
  int iterations = 0;
  double last_change = 0;
};

/// Perron root of A + I by power iteration from the all-ones vector, stopped
/// when successive Rayleigh quotients differ by less than tol. Intensities are
/// expanded to clones first. Throws NumericError after max_iterations.
SpectralResult spectral_radius_A_plus_I(const Graph& g, double tol = 1e-12,
                                        int max_iterations = 100'000);

/// e * rho(A + I).
double upper_bound(const Graph& g);

struct LowerChain {
  std::vector<boost::multiprecision::cpp_rational> p;  // p(1..M)
  boost::multiprecision::cpp_rational first;   // sum_{k<M} p(k)(k+1)
  boost::multiprecision::cpp_rational second;  // sum_{k<M} p(k) k/(k+1)
  double value = 0;                            // first * second
};

/// Limit chain on 1..M: from k < M jump to 1 w.p. k/(k+1), else to k+1;
/// M always returns to 1. Stationary law p(k) = 1/(k! sum_{j<=M} 1/j!).
/// The product tends to (2e-1)/(e-1)^2. Throws DomainError for M < 2.
LowerChain lower_bound_chain(int M);

/// (2e - 1)/(e - 1)^2.
double lower_bound_constant();

/// Jump chain of the rate diagram with m = degree + 1: from k < M rates km
/// back to 1 and m - k up to k+1; M returns to 1. Returns the stationary law
/// and the product
///   (sum_{k<M} p(k){(k+1)m - k} + p(M) Mm) (sum_{k<M} p(k) km/(km+m-k) + p(M)).
/// As m grows p tends to lower_bound_chain's law and product/m to its value.
/// The product is not a lower bound for small m (it exceeds gamma of the
/// Petersen graph at m = 4); slow_model_bound is the per-graph bound.
/// Throws DomainError unless m > M >= 2.
LowerChain finite_m_lower_chain(int m, int M);

struct SlowModelBound {
  std::vector<boost::multiprecision::cpp_rational> pi;  // time-stationary law on 1..M
  boost::multiprecision::cpp_rational rate;             // mean rate of max increments
  double value = 0;
};

/// Lower bound on gamma for a regular graph of the given degree d and girth
/// >= 5. The top of the surface is a path (x1, x2, x3); state k counts the
/// neighbours of x2 held one above it. Only neighbours y != x2 of those k
/// vertices (rate k(d-1)) and fresh neighbours of x2 (rate d-1-k, none at M)
/// are allowed to grow. Every growth of the first kind lifts the max by one
/// and restarts the path, so gamma >= sum_k pi(k) k(d-1).
/// Throws DomainError unless d >= 2 and 1 <= M <= d - 1.
SlowModelBound slow_model_bound(int degree, int M);

/// slow_model_bound maximised over M <= min(d - 1, 12) for a regular graph of
/// girth >= 5; nullopt for graphs outside that class.
std::optional<double> regular_girth5_lower_bound(const Graph& g);

struct BoundReport {
  double rho = 0;
  double upper = 0;
  double lower = 0;
  std::optional<double> gamma_ref;
  double gamma_ref_stderr = 0;
  bool consistent = true;  // lower <= upper, and gamma_ref inside (3 SE slack)
  std::vector<std::string> witnesses;
};

/// lower = gamma(S_{Delta+1}) by the star series (the closed star of a
/// max-degree vertex embeds in g), improved by the girth-5 chain where it
/// applies; upper = e rho.
BoundReport corollary1_sandwich(const Graph& g, std::optional<double> gamma_ref = std::nullopt,
                                double gamma_ref_stderr = 0);

}  // namespace bdg
