#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace bdg {

/// Finite Markov chain in CSR form with a reward on every transition. Rows may
/// list the same target more than once; such entries act additively.
struct ChainSpec {
  int state_count = 0;
  std::vector<int> row_offsets{0};
  std::vector<int> targets;
  std::vector<double> probabilities;
  std::vector<double> rewards;
  bool has_rewards = true;
  /// Height cap or level of a truncated countable chain, -1 when not truncated.
  int truncation_level = -1;
  /// States whose stationary mass is reported as tail_bound (e.g. states at the cap).
  std::vector<char> boundary;
  /// Human-readable state names for export; optional.
  std::vector<std::string> legend;

  int row_begin(int s) const { return row_offsets[s]; }
  int row_end(int s) const { return row_offsets[s + 1]; }
};

/// Incremental row-by-row construction; rows must be added in state order.
class ChainBuilder {
 public:
  /// Starts the row of the next state.
  void begin_row();
  void add(int target, double probability, double reward = 0.0);
  /// Checks row sums (1e-12), target ranges and finiteness.
  ChainSpec finish(int truncation_level = -1);

 private:
  ChainSpec c_;
};

struct StationarySolution {
  std::vector<double> distribution;
  double residual = 0;  // max |pi P - pi|
  double gamma_value = 0;
  double tail_bound = 0;  // stationary mass on boundary states
  std::string method;
  int iterations = 0;
};

enum class SolveMethod { automatic, dense, sparse, power };

/// Solves pi P = pi, sum pi = 1. automatic: dense LU up to 2000 states, sparse
/// LU above, falling back to power iteration on (P + I)/2 if the factorization
/// fails. Throws NumericError if the residual stays above tol.
StationarySolution stationary(const ChainSpec& chain, double tol = 1e-12,
                              SolveMethod method = SolveMethod::automatic);

/// rate * sum_s pi(s) sum_t P(s,t) r(s,t). rate is #V for uniform vertex choice
/// or the total intensity for weighted graphs. Throws DomainError without rewards.
double gamma_from_chain(const ChainSpec& chain, const StationarySolution& pi, double rate);

/// Asymptotic variance per step of sum_k r(X_k, X_{k+1}) under the stationary
/// chain, from the Poisson equation (I - P) u = rbar - mu. Equals the series
/// Var[Y_1] + 2 sum_k Cov[Y_1, Y_{1+k}].
double sigma2_exact(const ChainSpec& chain, const StationarySolution& pi);

/// Strongly connected check (iterative Tarjan).
bool is_irreducible(const ChainSpec& chain);

/// Triplet text format: "from to probability reward" lines, then a legend
/// section "# state index: name".
void write_triplets(std::ostream& out, const ChainSpec& chain);

}  // namespace bdg
