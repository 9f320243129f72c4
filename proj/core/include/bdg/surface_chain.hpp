#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bdg/graph.hpp"
#include "bdg/markov_chain.hpp"

namespace bdg {

/// Min-normalized heights: minimum entry 0 and adjacent vertices at distinct heights.
using SurfaceState = std::vector<int>;

bool in_state_space(const Graph& g, const SurfaceState& s);

/// One growth at y followed by renormalization:
///   m_y = min over x != y of h_x,  h~_x = h_x - m_y (x != y),
///   h~_y = 1 + max over [y] of h - m_y.
/// A single-vertex graph maps to (0). Throws DomainError if s is not in S.
SurfaceState surface_transition(const Graph& g, const SurfaceState& s, Vertex y);

/// Max-height increment of the step from s at y: 1 iff [y] contains a
/// globally maximal vertex.
int growth_reward(const Graph& g, const SurfaceState& s, Vertex y);

/// Max-height increment of the transition s -> s_next. Throws DomainError if
/// no single growth maps s to s_next.
int reward_g2(const Graph& g, const SurfaceState& s, const SurfaceState& s_next);

/// State reached from all-zero heights by growing 0, 1, ..., #V-1 once each.
SurfaceState start_state(const Graph& g);

/// Representative of s under an exact lumping. A set D of vertices whose
/// heights never attain the max of any closed neighbourhood meeting D can be
/// moved freely below that max: nothing depends on them until they grow, and
/// a grown vertex lands on 1 + max over its neighbourhood either way. Two such
/// sets are used: vertices below all of their neighbours (raised to one under
/// the lowest neighbour) and the lowest levels when each of their vertices
/// has a neighbour above them (recoloured just below the next level).
SurfaceState canonical_form(const Graph& g, SurfaceState s);

struct SurfaceChainOptions {
  std::int64_t max_states = 3'000'000;
  bool lump_hidden = true;  // apply canonical_form to every enumerated state
};

struct SurfaceChain {
  ChainSpec chain;
  std::vector<SurfaceState> states;
  double rate = 1;  // total intensity: P(grow y) = intensity(y) / rate
  int cap = 0;
  std::vector<char> overflow;  // per transition: the closure was applied
};

/// Enumerates the surface states with max <= M reachable from start_state.
/// A growth that would lift the max above M is closed by gap compression:
/// the largest gap between consecutive distinct heights (topmost on ties) is
/// narrowed by one until the max is M. This keeps the state in S and the chain
/// irreducible. States with max == M are flagged as boundary.
/// Throws DomainError if M < #V and ResourceError above opts.max_states.
SurfaceChain build_truncated_surface_chain(const Graph& g, int M,
                                           const SurfaceChainOptions& opts = {});

/// Stationary probability flow through closed transitions.
double closure_flux(const SurfaceChain& sc, const StationarySolution& pi);

struct SurfaceGammaResult {
  std::vector<int> levels;       // caps solved, ascending
  std::vector<double> values;    // gamma at each cap
  std::vector<double> sigma2;    // per-step variance at each cap (if requested)
  double gamma = 0;              // value at the largest cap
  double extrapolated = 0;       // Aitken delta-squared over the last three caps
  double successive_difference = 0;
  double tail_mass = 0;          // stationary mass at the largest cap
  double closure_flux = 0;
  double residual = 0;
  int states = 0;
};

/// Solves at caps M - 2*stride, M - stride, M (those >= #V).
SurfaceGammaResult surface_gamma(const Graph& g, int M, int stride = 2, bool with_sigma2 = false,
                                 const SurfaceChainOptions& opts = {});

/// Aitken extrapolation of three successive values; returns x2 unchanged when
/// the differences do not look geometric.
double aitken(double x0, double x1, double x2);

// Closed forms and hand-reduced chains.

/// Throws DomainError unless N >= 0, n >= 1, m even >= 2, and N >= 1 if m == 2.
void check_theorem1(int N, int n, int m);

/// #V - (n^2 m / #V) tau / (tau + 1/(2 kappa)),  kappa = #V/(2n),
/// tau = 1/(sqrt(kappa^2 - 1) - kappa + 1).
double gamma_theorem1(int N, int n, int m);

/// Stationary mass of state 0 of the excess chain and the geometric law of the
/// other states: Pi(k) = c1 (kappa - sqrt(kappa^2 - 1))^(k-1), k >= 1.
struct Theorem1Stationary {
  double kappa = 0;
  double tau = 0;
  double c1 = 0;
  double ratio = 0;
  double pi0 = 0;
};
Theorem1Stationary theorem1_stationary(int N, int n, int m);

/// Excess chain of the theorem-1 family truncated at M (states 0..M). The up
/// move at M becomes a self-loop. Rewards are max-height increments; the
/// chain's rate is #V.
ChainSpec delta_chain_theorem1(int N, int n, int m, int M);

/// Reduced star chain with states z, 0, 1, ..., M (indices 0, 1, ..., M+1).
/// Rate 3.
ChainSpec s3_reduced_chain(int M);

/// Nearest-neighbour chain on K_n: state k = number of vertices at the maximum
/// (index k-1). Rate n.
ChainSpec nn_complete_chain(int n);

struct NnExact {
  boost::multiprecision::cpp_rational gamma;
  std::vector<boost::multiprecision::cpp_rational> pi;  // Pi(1..n)
  double value = 0;
  double closed_form = 0;  // n / (e^n n^-n Gamma(n+1, n) - 1)
};

/// Throws DomainError for n < 1.
NnExact gamma_nn_complete(int n);
double gamma_nn_closed_form(int n);

}  // namespace bdg
