#include "bdg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "bdg/errors.hpp"
#include "bdg/stats.hpp"

namespace bdg {

namespace {

void check_config(const Graph& g, const HeightConfig& h, Vertex x) {
  if (!g.valid(x)) throw DomainError("invalid vertex id " + std::to_string(x));
  if (static_cast<int>(h.size()) != g.vertex_count())
    throw DomainError("height vector size does not match the graph");
}

Height closed_max(const Graph& g, const Height* h, Vertex x) {
  Height m = h[x];
  for (Vertex y : g.neighbours(x)) m = std::max(m, h[y]);
  return m;
}

Height open_max(const Graph& g, const Height* h, Vertex x) {
  Height m = std::numeric_limits<Height>::min();
  for (Vertex y : g.neighbours(x)) m = std::max(m, h[y]);
  return m;
}

// Runs f(replica) for every replica on up to `threads` workers. f must only
// write to its own replica's slot.
template <class F>
void for_replicas(int replicas, int threads, F&& f) {
  threads = std::clamp(threads, 1, replicas);
  if (threads == 1) {
    for (int r = 0; r < replicas; ++r) f(r);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (int r = t; r < replicas; r += threads) f(r);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

HeightConfig step(const Graph& g, HeightConfig h, Vertex x) {
  check_config(g, h, x);
  h[x] = 1 + closed_max(g, h.data(), x);
  return h;
}

HeightConfig step_nn(const Graph& g, HeightConfig h, Vertex x) {
  check_config(g, h, x);
  Height nb = g.degree(x) ? open_max(g, h.data(), x) : h[x];
  h[x] = std::max(h[x] + 1, nb);
  return h;
}

Surface::Surface(const Graph& g, Rule rule)
    : g_(&g), rule_(rule), h_(static_cast<std::size_t>(g.vertex_count()), 0) {}

Surface::Surface(const Graph& g, const HeightConfig& initial, Rule rule)
    : g_(&g), rule_(rule), h_(initial) {
  if (static_cast<int>(h_.size()) != g.vertex_count())
    throw DomainError("initial heights do not match the graph");
  for (Height v : h_)
    if (v < 0) throw DomainError("initial heights must be non-negative");
  renormalize();
}

void Surface::renormalize() {
  Height lo = *std::min_element(h_.begin(), h_.end());
  if (lo != 0) {
    for (Height& v : h_) v -= lo;
    offset_ += lo;
  }
  max_ = *std::max_element(h_.begin(), h_.end());
}

Height Surface::grow(Vertex x) {
  const Height old = h_[x];
  Height next;
  if (rule_ == Rule::nnn) {
    next = 1 + closed_max(*g_, h_.data(), x);
  } else {
    next = old + 1;
    for (Vertex y : g_->neighbours(x)) next = std::max(next, h_[y]);
  }
  h_[x] = next;
  const Height inc = next > max_ ? next - max_ : 0;
  max_ += inc;
  if (old == 0) renormalize();  // x may have been the only vertex at the minimum
  return inc;
}

HeightConfig Surface::heights() const {
  HeightConfig out(h_);
  for (Height& v : out) v += offset_;
  return out;
}

VertexSampler::VertexSampler(const Graph& g, IntensityMode mode)
    : mode_(mode), n_(g.vertex_count()) {
  if (mode_ == IntensityMode::uniform || g.has_unit_intensities()) {
    mode_ = IntensityMode::uniform;
    rate_ = n_;
    return;
  }
  cumulative_.resize(n_);
  std::int64_t acc = 0;
  for (int x = 0; x < n_; ++x) cumulative_[x] = acc += g.intensity(x);
  rate_ = static_cast<double>(acc);
}

Vertex VertexSampler::operator()(Rng& rng) const {
  if (mode_ == IntensityMode::uniform) return static_cast<Vertex>(rng.below(n_));
  auto u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(cumulative_.back())));
  return static_cast<Vertex>(std::upper_bound(cumulative_.begin(), cumulative_.end(), u) -
                             cumulative_.begin());
}

void validate(const SimConfig& cfg, bool continuous) {
  if (cfg.replicas < 1) throw DomainError("replicas must be >= 1");
  if (continuous ? !(cfg.horizon > 0) : cfg.steps < 1)
    throw DomainError(continuous ? "horizon must be > 0" : "steps must be >= 1");
  if (cfg.checkpoints < 0) throw DomainError("checkpoints must be >= 0");
  if (cfg.batches < 0 || cfg.batches == 1) throw DomainError("batches must be 0 or >= 2");
  if (!continuous && cfg.batches > cfg.steps) throw DomainError("more batches than steps");
}

Trajectory run_discrete(const Graph& g, const SimConfig& cfg, Rule rule, int replica) {
  validate(cfg, false);
  Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(replica)));
  VertexSampler draw(g, cfg.intensity_mode);
  Surface s(g, rule);
  Trajectory t;
  t.steps = cfg.steps;

  const std::int64_t every = cfg.checkpoints > 0 ? std::max<std::int64_t>(1, cfg.steps / cfg.checkpoints) : 0;
  const std::int64_t batch_len = cfg.batches > 1 ? cfg.steps / cfg.batches : 0;
  if (batch_len) t.batch_max.push_back(0);

  for (std::int64_t k = 1; k <= cfg.steps; ++k) {
    s.grow(draw(rng));
    if (every && k % every == 0 && k != cfg.steps)
      t.points.push_back({static_cast<double>(k), s.max(), s.min(), s.offset()});
    if (batch_len && k % batch_len == 0 && static_cast<int>(t.batch_max.size()) <= cfg.batches)
      t.batch_max.push_back(s.max());
  }
  t.time = static_cast<double>(cfg.steps);
  t.max = s.max();
  t.min = s.min();
  t.points.push_back({t.time, t.max, t.min, s.offset()});
  return t;
}

Trajectory run_continuous(const Graph& g, const SimConfig& cfg, Rule rule, int replica) {
  validate(cfg, true);
  Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(replica)));
  VertexSampler draw(g, IntensityMode::proportional);
  const double lambda = static_cast<double>(g.total_intensity());
  Surface s(g, rule);
  Trajectory t;
  const double every = cfg.checkpoints > 0 ? cfg.horizon / cfg.checkpoints : 0;
  double next_mark = every;
  double now = 0;
  std::int64_t jumps = 0;
  for (;;) {
    double dt = rng.exponential(lambda);
    while (every > 0 && next_mark < cfg.horizon && now + dt >= next_mark) {
      t.points.push_back({next_mark, s.max(), s.min(), s.offset()});
      next_mark += every;
    }
    if (now + dt > cfg.horizon) break;
    now += dt;
    s.grow(draw(rng));
    ++jumps;
  }
  t.steps = jumps;
  t.time = cfg.horizon;
  t.max = s.max();
  t.min = s.min();
  t.points.push_back({cfg.horizon, t.max, t.min, s.offset()});
  return t;
}

EstimateReport estimate_gamma(const Graph& g, const SimConfig& cfg, Rule rule) {
  const bool continuous = cfg.steps == 0 && cfg.horizon > 0;
  validate(cfg, continuous);
  std::vector<Trajectory> runs(static_cast<std::size_t>(cfg.replicas));
  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    runs[r] = continuous ? run_continuous(g, cfg, rule, r) : run_discrete(g, cfg, rule, r);
  });

  const double rate = continuous ? 1.0 : VertexSampler(g, cfg.intensity_mode).rate();
  const double length = continuous ? cfg.horizon : static_cast<double>(cfg.steps);

  std::vector<double> gamma(runs.size()), maxima(runs.size());
  for (std::size_t r = 0; r < runs.size(); ++r) {
    maxima[r] = static_cast<double>(runs[r].max);
    gamma[r] = rate * maxima[r] / length;
  }
  auto sg = stats::summarize(gamma);

  EstimateReport rep;
  rep.gamma_hat = sg.mean;
  rep.seed = cfg.seed;
  rep.replicas = cfg.replicas;
  rep.steps = cfg.steps;
  rep.horizon = continuous ? cfg.horizon : 0;
  rep.n_effective = cfg.replicas;
  rep.has_stderr = cfg.replicas >= 2;
  rep.ci95_lo = rep.ci95_hi = rep.gamma_hat;
  if (rep.has_stderr) {
    rep.std_error = std::sqrt(sg.variance / sg.n);
    double t = stats::t_quantile(static_cast<double>(sg.n - 1));
    rep.ci95_lo = rep.gamma_hat - t * rep.std_error;
    rep.ci95_hi = rep.gamma_hat + t * rep.std_error;
  }

  if (cfg.batches > 1 && !continuous) {
    // pooled batch means: increments of the max over consecutive batches
    const double len = static_cast<double>(cfg.steps / cfg.batches);
    std::vector<double> inc;
    for (const auto& t : runs)
      for (std::size_t b = 1; b < t.batch_max.size(); ++b)
        inc.push_back(static_cast<double>(t.batch_max[b] - t.batch_max[b - 1]));
    auto si = stats::summarize(inc);
    rep.sigma2_hat = si.variance / len;
    rep.n_effective = static_cast<std::int64_t>(inc.size());
    if (si.n > 1) rep.sigma2_stderr = rep.sigma2_hat * std::sqrt(2.0 / static_cast<double>(si.n - 1));
  } else if (rep.has_stderr) {
    auto sm = stats::summarize(maxima);
    rep.sigma2_hat = sm.variance / length;
    rep.sigma2_stderr = rep.sigma2_hat * std::sqrt(2.0 / static_cast<double>(sm.n - 1));
  }
  return rep;
}

std::vector<double> clt_sample(const Graph& g, const SimConfig& cfg, double gamma, Extremum which) {
  validate(cfg, false);
  const double rate = VertexSampler(g, cfg.intensity_mode).rate();
  const double n = static_cast<double>(cfg.steps);
  std::vector<double> out(static_cast<std::size_t>(cfg.replicas));
  for_replicas(cfg.replicas, cfg.threads, [&](int r) {
    Trajectory t = run_discrete(g, cfg, Rule::nnn, r);
    double h = static_cast<double>(which == Extremum::max ? t.max : t.min);
    out[r] = (h - n * gamma / rate) / std::sqrt(n);
  });
  return out;
}

CoupledReport coupled_run(const Graph& g, const Graph& h, std::span<const Vertex> embedding,
                          const SimConfig& cfg, int replica) {
  if (!is_subgraph(g, h, embedding)) throw DomainError("embedding does not map g into h");
  const bool by_time = cfg.steps == 0;
  validate(cfg, by_time);

  // preimage and thinning threshold per vertex of h
  std::vector<Vertex> pre(h.vertex_count(), -1);
  std::vector<double> keep(h.vertex_count(), 0.0);
  for (int x = 0; x < g.vertex_count(); ++x) {
    Vertex y = embedding[x];
    if (g.intensity(x) > h.intensity(y))
      throw DomainError("coupling needs intensity_g(x) <= intensity_h(embedding(x))");
    pre[y] = x;
    keep[y] = static_cast<double>(g.intensity(x)) / h.intensity(y);
  }

  Rng rng(stream_seed(cfg.seed, static_cast<std::uint64_t>(replica)));
  VertexSampler draw(h, IntensityMode::proportional);
  const double lambda = static_cast<double>(h.total_intensity());
  Surface sg(g), sh(h);
  CoupledReport rep;
  double now = 0;
  for (std::int64_t k = 1;; ++k) {
    double dt = rng.exponential(lambda);
    if (by_time ? now + dt > cfg.horizon : k > cfg.steps) break;
    now += dt;
    Vertex y = draw(rng);
    sh.grow(y);
    Vertex x = pre[y];
    // the thinning coin is always drawn so the h stream does not depend on g
    double u = rng.uniform();
    if (x >= 0 && u < keep[y]) sg.grow(x);
    ++rep.jumps;

    bool ok_max = sg.max() <= sh.max();
    bool ok_point = true;
    for (int v = 0; v < g.vertex_count() && ok_point; ++v)
      ok_point = sg.height(v) <= sh.height(embedding[v]);
    if ((!ok_max || !ok_point) && rep.first_violation < 0) rep.first_violation = k;
    rep.dominated = rep.dominated && ok_max;
    rep.pointwise = rep.pointwise && ok_point;
  }
  rep.time = by_time ? cfg.horizon : now;
  if (rep.time > 0) {
    rep.gamma_hat_g = static_cast<double>(sg.max()) / rep.time;
    rep.gamma_hat_h = static_cast<double>(sh.max()) / rep.time;
  }
  return rep;
}

std::vector<Height> contraction_run(const Graph& g, const HeightConfig& a, const HeightConfig& b,
                                    std::int64_t steps, std::uint64_t seed) {
  Surface sa(g, a), sb(g, b);
  Rng rng(seed);
  auto sup = [&] {
    Height d = 0;
    for (int x = 0; x < g.vertex_count(); ++x) d = std::max(d, std::abs(sa.height(x) - sb.height(x)));
    return d;
  };
  std::vector<Height> out{sup()};
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (std::int64_t k = 0; k < steps; ++k) {
    auto x = static_cast<Vertex>(rng.below(g.vertex_count()));
    sa.grow(x);
    sb.grow(x);
    out.push_back(sup());
  }
  return out;
}

std::optional<std::int64_t> nn_dominated_by_nnn(const Graph& g, std::int64_t steps,
                                                std::uint64_t seed) {
  Surface nnn(g, Rule::nnn), nn(g, Rule::nn);
  Rng rng(seed);
  for (std::int64_t k = 1; k <= steps; ++k) {
    auto x = static_cast<Vertex>(rng.below(g.vertex_count()));
    nnn.grow(x);
    nn.grow(x);
    for (int v = 0; v < g.vertex_count(); ++v)
      if (nn.height(v) > nnn.height(v)) return k;
  }
  return std::nullopt;
}

}  // namespace bdg
