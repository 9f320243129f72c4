#include "bdg/markov_chain.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <ostream>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "bdg/errors.hpp"

namespace bdg {

void ChainBuilder::begin_row() {
  if (c_.state_count > 0) c_.row_offsets.push_back(static_cast<int>(c_.targets.size()));
  ++c_.state_count;
}

void ChainBuilder::add(int target, double probability, double reward) {
  if (c_.state_count == 0) throw DomainError("ChainBuilder::add before begin_row");
  c_.targets.push_back(target);
  c_.probabilities.push_back(probability);
  c_.rewards.push_back(reward);
}

ChainSpec ChainBuilder::finish(int truncation_level) {
  ChainSpec c = std::move(c_);
  c_ = ChainSpec{};
  if (c.state_count == 0) throw DomainError("chain has no states");
  c.row_offsets.push_back(static_cast<int>(c.targets.size()));
  if (static_cast<int>(c.row_offsets.size()) != c.state_count + 1)
    throw DomainError("chain row layout is inconsistent");
  c.truncation_level = truncation_level;
  c.boundary.assign(c.state_count, 0);
  for (int s = 0; s < c.state_count; ++s) {
    double sum = 0;
    for (int i = c.row_begin(s); i < c.row_end(s); ++i) {
      if (c.targets[i] < 0 || c.targets[i] >= c.state_count)
        throw DomainError("transition target out of range in row " + std::to_string(s));
      if (!(c.probabilities[i] >= 0) || !std::isfinite(c.rewards[i]))
        throw DomainError("bad probability or reward in row " + std::to_string(s));
      sum += c.probabilities[i];
    }
    if (std::abs(sum - 1.0) > 1e-12)
      throw DomainError("row " + std::to_string(s) + " sums to " + std::to_string(sum));
  }
  return c;
}

namespace {

using SpMat = Eigen::SparseMatrix<double>;

// (I - P)^T with row 0 replaced by ones: the row-replacement system for pi.
std::vector<Eigen::Triplet<double>> balance_triplets(const ChainSpec& c) {
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(c.targets.size() + 2 * c.state_count);
  for (int s = 0; s < c.state_count; ++s) {
    if (s != 0) t.emplace_back(s, s, 1.0);
    t.emplace_back(0, s, 1.0);
    for (int i = c.row_begin(s); i < c.row_end(s); ++i) {
      int j = c.targets[i];
      if (j != 0) t.emplace_back(j, s, -c.probabilities[i]);
    }
  }
  return t;
}

std::vector<double> times_p(const ChainSpec& c, const std::vector<double>& x) {
  std::vector<double> y(c.state_count, 0.0);
  for (int s = 0; s < c.state_count; ++s) {
    const double xs = x[s];
    if (xs == 0) continue;
    for (int i = c.row_begin(s); i < c.row_end(s); ++i) y[c.targets[i]] += xs * c.probabilities[i];
  }
  return y;
}

double residual_of(const ChainSpec& c, const std::vector<double>& pi) {
  auto y = times_p(c, pi);
  double r = 0;
  for (int s = 0; s < c.state_count; ++s) r = std::max(r, std::abs(y[s] - pi[s]));
  return r;
}

bool clean(std::vector<double>& pi) {
  double sum = 0;
  for (double& p : pi) {
    if (!std::isfinite(p)) return false;
    if (p < 0) {
      if (p < -1e-12) return false;
      p = 0;
    }
    sum += p;
  }
  if (!(sum > 0)) return false;
  for (double& p : pi) p /= sum;
  return true;
}

std::vector<double> solve_dense(const ChainSpec& c) {
  const int n = c.state_count;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (const auto& t : balance_triplets(c)) a(t.row(), t.col()) += t.value();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = 1;
  Eigen::VectorXd x = a.partialPivLu().solve(b);
  return {x.data(), x.data() + n};
}

bool solve_sparse(const ChainSpec& c, std::vector<double>& out) {
  const int n = c.state_count;
  auto t = balance_triplets(c);
  SpMat a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  a.makeCompressed();
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) return false;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
  b(0) = 1;
  Eigen::VectorXd x = lu.solve(b);
  if (lu.info() != Eigen::Success) return false;
  out.assign(x.data(), x.data() + n);
  return true;
}

// Lazy chain (P + I)/2 is aperiodic, so plain iteration converges for any
// irreducible chain.
std::vector<double> solve_power(const ChainSpec& c, double tol, int& iterations, double& residual,
                                int cap = 2'000'000) {
  const int n = c.state_count;
  std::vector<double> x(n, 1.0 / n);
  for (iterations = 1; iterations <= cap; ++iterations) {
    auto y = times_p(c, x);
    residual = 0;
    for (int s = 0; s < n; ++s) {
      residual = std::max(residual, std::abs(y[s] - x[s]));
      x[s] = 0.5 * (x[s] + y[s]);
    }
    if (residual < tol) break;
  }
  return x;
}

}  // namespace

StationarySolution stationary(const ChainSpec& chain, double tol, SolveMethod method) {
  if (chain.state_count < 1) throw DomainError("empty chain");
  StationarySolution sol;
  bool ok = false;
  if (method == SolveMethod::automatic && chain.state_count > 2000) {
    // LU fill-in grows fast on surface chains; a short power run usually
    // settles first. The stricter stop leaves room for a small spectral gap.
    double r = 0;
    sol.distribution = solve_power(chain, tol * 1e-2, sol.iterations, r, 50'000);
    sol.method = "power";
    ok = r < tol * 1e-2 && clean(sol.distribution);
    if (!ok) method = SolveMethod::sparse;
  } else if (method == SolveMethod::automatic) {
    method = SolveMethod::dense;
  }

  if (!ok && method == SolveMethod::dense) {
    sol.distribution = solve_dense(chain);
    sol.method = "dense-lu";
    ok = clean(sol.distribution);
  } else if (!ok && method == SolveMethod::sparse) {
    sol.method = "sparse-lu";
    ok = solve_sparse(chain, sol.distribution) && clean(sol.distribution);
  }
  if (ok) {
    sol.residual = residual_of(chain, sol.distribution);
    ok = sol.residual < tol;
  }
  if (!ok) {
    double r = 0;
    sol.distribution = solve_power(chain, tol, sol.iterations, r);
    sol.method = "power";
    clean(sol.distribution);
    sol.residual = residual_of(chain, sol.distribution);
    if (!(sol.residual < tol))
      throw NumericError("stationary solve did not reach tolerance", sol.residual);
  }
  for (int s = 0; s < chain.state_count; ++s)
    if (!chain.boundary.empty() && chain.boundary[s]) sol.tail_bound += sol.distribution[s];
  return sol;
}

double gamma_from_chain(const ChainSpec& chain, const StationarySolution& pi, double rate) {
  if (!chain.has_rewards) throw DomainError("chain carries no rewards");
  if (static_cast<int>(pi.distribution.size()) != chain.state_count)
    throw DomainError("stationary vector does not match the chain");
  long double acc = 0;
  for (int s = 0; s < chain.state_count; ++s) {
    long double row = 0;
    for (int i = chain.row_begin(s); i < chain.row_end(s); ++i)
      row += static_cast<long double>(chain.probabilities[i]) * chain.rewards[i];
    acc += pi.distribution[s] * row;
  }
  return static_cast<double>(rate * acc);
}

namespace {

// u = sum_k Q^k f / 2 with Q = (I + P)/2, which solves (I - P) u = f for
// centred f. The pi-mean of each term is removed to stop constant drift.
std::optional<Eigen::VectorXd> poisson_series(const ChainSpec& c, const std::vector<double>& pi,
                                              const std::vector<double>& rbar, double mu) {
  const int n = c.state_count;
  std::vector<double> term(n), u(n, 0.0);
  for (int s = 0; s < n; ++s) term[s] = 0.5 * (rbar[s] - mu);
  for (int it = 0; it < 200'000; ++it) {
    double size = 0, mean = 0;
    for (int s = 0; s < n; ++s) {
      u[s] += term[s];
      size = std::max(size, std::abs(term[s]));
    }
    if (size < 1e-15) return Eigen::Map<Eigen::VectorXd>(u.data(), n);
    std::vector<double> next(n);
    for (int s = 0; s < n; ++s) {
      double acc = 0;
      for (int i = c.row_begin(s); i < c.row_end(s); ++i) acc += c.probabilities[i] * term[c.targets[i]];
      next[s] = 0.5 * (term[s] + acc);
      mean += pi[s] * next[s];
    }
    for (int s = 0; s < n; ++s) term[s] = next[s] - mean;
  }
  return std::nullopt;
}

}  // namespace

double sigma2_exact(const ChainSpec& chain, const StationarySolution& pi) {
  if (!chain.has_rewards) throw DomainError("chain carries no rewards");
  const int n = chain.state_count;
  const auto& p = pi.distribution;
  if (static_cast<int>(p.size()) != n) throw DomainError("stationary vector does not match the chain");

  std::vector<double> rbar(n, 0.0);
  double mu = 0;
  for (int s = 0; s < n; ++s) {
    for (int i = chain.row_begin(s); i < chain.row_end(s); ++i)
      rbar[s] += chain.probabilities[i] * chain.rewards[i];
    mu += p[s] * rbar[s];
  }

  // (I - P) u = rbar - mu with equation 0 replaced by u(0) = 0
  std::vector<Eigen::Triplet<double>> t;
  t.reserve(chain.targets.size() + n);
  Eigen::VectorXd f(n);
  for (int s = 0; s < n; ++s) {
    f(s) = rbar[s] - mu;
    t.emplace_back(s, s, 1.0);
    if (s == 0) continue;
    for (int i = chain.row_begin(s); i < chain.row_end(s); ++i)
      t.emplace_back(s, chain.targets[i], -chain.probabilities[i]);
  }
  f(0) = 0;
  Eigen::VectorXd u;
  if (n <= 2000) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (const auto& e : t) a(e.row(), e.col()) += e.value();
    u = a.partialPivLu().solve(f);
  } else if (auto series = poisson_series(chain, p, rbar, mu)) {
    u = std::move(*series);
  } else {
    SpMat a(n, n);
    a.setFromTriplets(t.begin(), t.end());
    a.makeCompressed();
    Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw NumericError("Poisson equation factorization failed", NAN);
    u = lu.solve(f);
  }
  if (!u.allFinite()) throw NumericError("Poisson equation solve produced non-finite values", NAN);

  // martingale increments D = r - rbar(s) + u(t) - (Pu)(s)
  long double acc = 0;
  for (int s = 0; s < n; ++s) {
    double pu = 0;
    for (int i = chain.row_begin(s); i < chain.row_end(s); ++i) pu += chain.probabilities[i] * u(chain.targets[i]);
    long double row = 0;
    for (int i = chain.row_begin(s); i < chain.row_end(s); ++i) {
      double d = chain.rewards[i] - rbar[s] + u(chain.targets[i]) - pu;
      row += chain.probabilities[i] * d * d;
    }
    acc += p[s] * row;
  }
  return static_cast<double>(acc);
}

bool is_irreducible(const ChainSpec& c) {
  const int n = c.state_count;
  std::vector<int> index(n, -1), low(n, 0), stack;
  std::vector<char> on_stack(n, 0);
  int counter = 0, components = 0;
  // explicit DFS frames: (vertex, next edge position)
  std::vector<std::pair<int, int>> frames;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    frames.emplace_back(root, c.row_begin(root));
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < c.row_end(v)) {
        int w = c.targets[pos++];
        if (c.probabilities[pos - 1] <= 0) continue;
        if (index[w] < 0) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.emplace_back(w, c.row_begin(w));
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      int done = v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
      if (low[done] == index[done]) {
        ++components;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
        } while (w != done);
        if (components > 1) return false;
      }
    }
  }
  return components == 1;
}

void write_triplets(std::ostream& out, const ChainSpec& c) {
  out << "# states " << c.state_count << "\n# from to probability reward\n";
  out.precision(17);
  for (int s = 0; s < c.state_count; ++s)
    for (int i = c.row_begin(s); i < c.row_end(s); ++i)
      out << s << ' ' << c.targets[i] << ' ' << c.probabilities[i] << ' ' << c.rewards[i] << '\n';
  if (!c.legend.empty()) {
    out << "# legend\n";
    for (int s = 0; s < c.state_count; ++s) out << "# " << s << ": " << c.legend[s] << '\n';
  }
}

}  // namespace bdg
