#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bdg/graph.hpp"
#include "bdg/rng.hpp"

namespace bdg {

using Height = std::int64_t;
using HeightConfig = std::vector<Height>;

enum class Rule { nnn, nn };
enum class IntensityMode { uniform, proportional };
enum class Extremum { max, min };

/// h with h_x := 1 + max over [x]. Throws DomainError on a bad vertex or size.
HeightConfig step(const Graph& g, HeightConfig h, Vertex x);
/// h with h_x := max(h_x + 1, max over the strict neighbours of x).
HeightConfig step_nn(const Graph& g, HeightConfig h, Vertex x);

/// Height process stored as (heights - offset) with offset = current minimum.
/// Heights only grow, so the stored values stay bounded by roughly the
/// surface width while offset carries the linear drift.
class Surface {
 public:
  explicit Surface(const Graph& g, Rule rule = Rule::nnn);
  Surface(const Graph& g, const HeightConfig& initial, Rule rule = Rule::nnn);

  /// Grows x; returns the increment of the maximum height.
  Height grow(Vertex x);

  Height max() const noexcept { return offset_ + max_; }
  Height min() const noexcept { return offset_; }
  Height offset() const noexcept { return offset_; }
  Height height(Vertex x) const { return offset_ + h_[x]; }
  /// Min-normalized state (minimum entry 0).
  std::span<const Height> normalized() const noexcept { return h_; }
  HeightConfig heights() const;

 private:
  void renormalize();

  const Graph* g_;
  Rule rule_;
  std::vector<Height> h_;
  Height offset_ = 0;
  Height max_ = 0;  // normalized
};

/// Draws vertices uniformly or proportionally to intensity.
class VertexSampler {
 public:
  VertexSampler(const Graph& g, IntensityMode mode);
  Vertex operator()(Rng& rng) const;
  /// Jump rate per discrete step: #V (uniform) or total intensity (proportional).
  double rate() const noexcept { return rate_; }

 private:
  IntensityMode mode_;
  int n_;
  double rate_;
  std::vector<std::int64_t> cumulative_;
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::int64_t steps = 0;  // discrete runs
  double horizon = 0;      // continuous runs
  int replicas = 1;
  IntensityMode intensity_mode = IntensityMode::uniform;
  int checkpoints = 0;  // trajectory rows per replica, 0 = final state only
  int threads = 1;
  int batches = 0;  // > 1 switches the variance estimate to batch means
};

/// Throws DomainError when neither steps nor horizon is positive or replicas < 1.
void validate(const SimConfig& cfg, bool continuous);

struct TrajectoryPoint {
  double time = 0;  // step count for discrete runs
  Height max = 0;
  Height min = 0;
  Height offset = 0;
};

struct Trajectory {
  std::vector<TrajectoryPoint> points;  // checkpoints, last entry is the final state
  std::int64_t steps = 0;
  double time = 0;
  Height max = 0;
  Height min = 0;
  std::vector<Height> batch_max;  // max at batch boundaries (batch-means mode)
};

/// One replica; the stream is stream_seed(cfg.seed, replica).
Trajectory run_discrete(const Graph& g, const SimConfig& cfg, Rule rule = Rule::nnn,
                        int replica = 0);
/// Single exponential clock of rate total_intensity plus a categorical vertex draw.
Trajectory run_continuous(const Graph& g, const SimConfig& cfg, Rule rule = Rule::nnn,
                          int replica = 0);

struct EstimateReport {
  double gamma_hat = 0;
  double std_error = 0;  // "stderr" in JSON; the bare name is a C macro
  double ci95_lo = 0;
  double ci95_hi = 0;
  double sigma2_hat = 0;  // per step (discrete) or per unit time (continuous)
  double sigma2_stderr = 0;
  bool has_stderr = false;
  std::int64_t n_effective = 0;
  std::uint64_t seed = 0;
  int replicas = 0;
  std::int64_t steps = 0;
  double horizon = 0;
};

/// Mean over replicas of rate * max / steps (or max / horizon when cfg.horizon > 0
/// and cfg.steps == 0). Replicas run on cfg.threads threads and are reduced in
/// replica order, so the report does not depend on the thread count.
EstimateReport estimate_gamma(const Graph& g, const SimConfig& cfg, Rule rule = Rule::nnn);

/// (H_n - n * gamma / rate) / sqrt(n) per replica, H the max or min height after
/// n = cfg.steps discrete steps.
std::vector<double> clt_sample(const Graph& g, const SimConfig& cfg, double gamma,
                               Extremum which = Extremum::max);

struct CoupledReport {
  double gamma_hat_g = 0;
  double gamma_hat_h = 0;
  std::int64_t jumps = 0;
  double time = 0;
  bool dominated = true;  // max on g <= max on h after every jump
  bool pointwise = true;  // h_x <= h'_{embedding(x)} after every jump
  std::int64_t first_violation = -1;
};

/// Runs g and its supergraph h on shared Poisson clocks: h's jump stream is
/// generated and a jump at embedding(x) is passed to x with probability
/// intensity_g(x) / intensity_h(embedding(x)). Runs cfg.steps jumps of h, or up
/// to cfg.horizon when steps is 0.
CoupledReport coupled_run(const Graph& g, const Graph& h, std::span<const Vertex> embedding,
                          const SimConfig& cfg, int replica = 0);

/// Two copies of the nnn process from different initial heights driven by the
/// same vertex sequence. Returns the sup-norm height difference after each step
/// (entry 0 is the initial difference).
std::vector<Height> contraction_run(const Graph& g, const HeightConfig& a, const HeightConfig& b,
                                    std::int64_t steps, std::uint64_t seed);

/// nn and nnn processes from zero on the same vertex sequence. Returns the first
/// step at which some nn height exceeds the nnn height, or nullopt.
std::optional<std::int64_t> nn_dominated_by_nnn(const Graph& g, std::int64_t steps,
                                                std::uint64_t seed);

}  // namespace bdg
