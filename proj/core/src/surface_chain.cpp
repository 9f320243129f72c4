#include "bdg/surface_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>

#include "bdg/errors.hpp"

namespace bdg {

namespace {

int closed_max(const Graph& g, const SurfaceState& s, Vertex y) {
  int m = s[y];
  for (Vertex z : g.neighbours(y)) m = std::max(m, s[z]);
  return m;
}

std::string describe(const SurfaceState& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s[i]);
  }
  return out + ")";
}

SurfaceState transition_unchecked(const Graph& g, const SurfaceState& s, Vertex y) {
  const int n = g.vertex_count();
  if (n == 1) return {0};
  int m = std::numeric_limits<int>::max();
  for (int x = 0; x < n; ++x)
    if (x != y) m = std::min(m, s[x]);
  SurfaceState t(s);
  t[y] = 1 + closed_max(g, s, y);
  for (int& v : t) v -= m;
  return t;
}

// Narrow the largest gap between consecutive distinct heights by one; the
// topmost gap wins ties. Strict order is preserved, so S-membership is too.
void compress_once(SurfaceState& t, std::vector<int>& scratch) {
  scratch.assign(t.begin(), t.end());
  std::sort(scratch.begin(), scratch.end());
  scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
  int best = -1, upper = 0;
  for (std::size_t i = 1; i < scratch.size(); ++i) {
    int gap = scratch[i] - scratch[i - 1];
    if (gap >= best) {
      best = gap;
      upper = scratch[i];
    }
  }
  for (int& v : t)
    if (v >= upper) --v;
}

std::string key_of(const SurfaceState& s) {
  std::string k(s.size(), '\0');
  for (std::size_t i = 0; i < s.size(); ++i) k[i] = static_cast<char>(s[i]);
  return k;
}

}  // namespace

bool in_state_space(const Graph& g, const SurfaceState& s) {
  if (static_cast<int>(s.size()) != g.vertex_count()) return false;
  if (*std::min_element(s.begin(), s.end()) != 0) return false;
  for (auto [u, v] : g.edges())
    if (s[u] == s[v]) return false;
  return true;
}

SurfaceState surface_transition(const Graph& g, const SurfaceState& s, Vertex y) {
  if (!g.valid(y)) throw DomainError("invalid vertex id " + std::to_string(y));
  if (!in_state_space(g, s)) throw DomainError("state " + describe(s) + " is not a surface state");
  return transition_unchecked(g, s, y);
}

int growth_reward(const Graph& g, const SurfaceState& s, Vertex y) {
  if (!g.valid(y)) throw DomainError("invalid vertex id " + std::to_string(y));
  if (static_cast<int>(s.size()) != g.vertex_count()) throw DomainError("state size mismatch");
  return closed_max(g, s, y) == *std::max_element(s.begin(), s.end()) ? 1 : 0;
}

int reward_g2(const Graph& g, const SurfaceState& s, const SurfaceState& s_next) {
  if (!in_state_space(g, s)) throw DomainError("state " + describe(s) + " is not a surface state");
  int reward = -1;
  for (Vertex y = 0; y < g.vertex_count(); ++y) {
    if (transition_unchecked(g, s, y) != s_next) continue;
    int r = growth_reward(g, s, y);
    if (reward >= 0 && r != reward)
      throw DomainError("transition " + describe(s) + " -> " + describe(s_next) + " has an ambiguous reward");
    reward = r;
  }
  if (reward < 0)
    throw DomainError(describe(s_next) + " is not reachable from " + describe(s) + " in one step");
  return reward;
}

namespace {

// Vertices below all of their neighbours. They form an independent set, so
// they can be raised together.
bool raise_local_minima(const Graph& g, SurfaceState& s) {
  bool changed = false;
  for (int x = 0; x < g.vertex_count(); ++x) {
    int lowest = std::numeric_limits<int>::max();
    for (Vertex z : g.neighbours(x)) lowest = std::min(lowest, s[z]);
    if (s[x] < lowest - 1) {
      s[x] = lowest - 1;
      changed = true;
    }
  }
  return changed;
}

// Largest cut t such that every vertex at or below t has a neighbour above
// t. Nothing below the cut can be a maximum of any closed neighbourhood, so
// those heights are recoloured greedily just under the cut.
bool pack_lower_set(const Graph& g, SurfaceState& s, std::vector<int>& levels) {
  const int n = g.vertex_count();
  levels.assign(s.begin(), s.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  std::vector<int> nb_max(n, std::numeric_limits<int>::min());
  for (int x = 0; x < n; ++x)
    for (Vertex z : g.neighbours(x)) nb_max[x] = std::max(nb_max[x], s[z]);

  int cut = -1;
  for (int j = static_cast<int>(levels.size()) - 2; j >= 0 && cut < 0; --j) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      if (s[x] <= levels[j] && nb_max[x] <= levels[j]) ok = false;
    if (ok) cut = j;
  }
  if (cut < 0) return false;

  const int threshold = levels[cut], ceiling = levels[cut + 1];
  SurfaceState t(s);
  std::vector<char> lower(n, 0);
  for (int x = 0; x < n; ++x) lower[x] = s[x] <= threshold;
  std::vector<int> colour(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!lower[x]) continue;
    int c = 0;
    for (bool clash = true; clash; ) {
      clash = false;
      for (Vertex z : g.neighbours(x))
        if (colour[z] == c) {
          ++c;
          clash = true;
          break;
        }
    }
    colour[x] = c;
    t[x] = ceiling - 1 - c;
  }
  if (t == s) return false;
  s = std::move(t);
  return true;
}

}  // namespace

SurfaceState canonical_form(const Graph& g, SurfaceState s) {
  const int n = g.vertex_count();
  if (static_cast<int>(s.size()) != n) throw DomainError("state size mismatch");
  if (n == 1) return {0};
  std::vector<int> levels;
  for (int round = 0; round < 2 * n; ++round) {
    bool a = pack_lower_set(g, s, levels);
    bool b = raise_local_minima(g, s);
    if (!a && !b) break;
  }
  const int m = *std::min_element(s.begin(), s.end());
  for (int& v : s) v -= m;
  return s;
}

SurfaceState start_state(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<long long> h(n, 0);
  for (int y = 0; y < n; ++y) {
    long long m = h[y];
    for (Vertex z : g.neighbours(y)) m = std::max(m, h[z]);
    h[y] = m + 1;
  }
  long long lo = *std::min_element(h.begin(), h.end());
  SurfaceState s(n);
  for (int x = 0; x < n; ++x) s[x] = static_cast<int>(h[x] - lo);
  return s;
}

SurfaceChain build_truncated_surface_chain(const Graph& g, int M, const SurfaceChainOptions& opts) {
  const int n = g.vertex_count();
  if (M < n) throw DomainError("height cap M = " + std::to_string(M) + " is below #V = " + std::to_string(n));
  if (M > 250) throw DomainError("height cap above 250 is not supported");

  SurfaceChain sc;
  sc.cap = M;
  sc.rate = static_cast<double>(g.total_intensity());
  std::vector<double> prob(n);
  for (int y = 0; y < n; ++y) prob[y] = g.intensity(y) / sc.rate;

  std::unordered_map<std::string, int> index;
  auto intern = [&](SurfaceState&& s) {
    auto [it, inserted] = index.emplace(key_of(s), static_cast<int>(sc.states.size()));
    if (inserted) {
      if (static_cast<std::int64_t>(sc.states.size()) >= opts.max_states)
        throw ResourceError("surface chain exceeds the state budget of " +
                            std::to_string(opts.max_states) + " states at cap " + std::to_string(M));
      sc.states.push_back(std::move(s));
    }
    return it->second;
  };

  SurfaceState s0 = start_state(g);
  if (opts.lump_hidden) s0 = canonical_form(g, std::move(s0));
  if (*std::max_element(s0.begin(), s0.end()) > M)
    throw DomainError("start state exceeds the height cap");
  intern(std::move(s0));

  ChainBuilder b;
  std::vector<int> scratch;
  for (std::size_t i = 0; i < sc.states.size(); ++i) {
    b.begin_row();
    for (Vertex y = 0; y < n; ++y) {
      const SurfaceState& s = sc.states[i];
      int r = growth_reward(g, s, y);
      SurfaceState t = transition_unchecked(g, s, y);
      if (opts.lump_hidden) t = canonical_form(g, std::move(t));
      bool closed = false;
      while (*std::max_element(t.begin(), t.end()) > M) {
        compress_once(t, scratch);
        closed = true;
      }
      int j = intern(std::move(t));
      b.add(j, prob[y], r);
      sc.overflow.push_back(closed);
    }
  }
  sc.chain = b.finish(M);
  sc.chain.boundary.assign(sc.states.size(), 0);
  sc.chain.legend.reserve(sc.states.size());
  for (std::size_t i = 0; i < sc.states.size(); ++i) {
    const auto& s = sc.states[i];
    sc.chain.boundary[i] = *std::max_element(s.begin(), s.end()) == M;
    sc.chain.legend.push_back(describe(s));
  }
  return sc;
}

double closure_flux(const SurfaceChain& sc, const StationarySolution& pi) {
  double f = 0;
  const auto& c = sc.chain;
  for (int s = 0; s < c.state_count; ++s)
    for (int i = c.row_begin(s); i < c.row_end(s); ++i)
      if (sc.overflow[i]) f += pi.distribution[s] * c.probabilities[i];
  return f;
}

double aitken(double x0, double x1, double x2) {
  const double d1 = x1 - x0, d2 = x2 - x1;
  const double denom = d2 - d1;
  if (d1 == 0 || denom == 0) return x2;
  const double ratio = d2 / d1;
  if (!(ratio > 0 && ratio < 0.9)) return x2;
  return x2 - d2 * d2 / denom;
}

SurfaceGammaResult surface_gamma(const Graph& g, int M, int stride, bool with_sigma2,
                                 const SurfaceChainOptions& opts) {
  if (stride < 1) throw DomainError("stride must be >= 1");
  SurfaceGammaResult res;
  for (int level = M - 2 * stride; level <= M; level += stride)
    if (level >= g.vertex_count()) res.levels.push_back(level);
  if (res.levels.empty()) throw DomainError("height cap M is below #V");

  for (int level : res.levels) {
    SurfaceChain sc = build_truncated_surface_chain(g, level, opts);
    StationarySolution pi = stationary(sc.chain);
    res.values.push_back(gamma_from_chain(sc.chain, pi, sc.rate));
    if (with_sigma2) res.sigma2.push_back(sigma2_exact(sc.chain, pi));
    if (level == M) {
      res.tail_mass = pi.tail_bound;
      res.closure_flux = closure_flux(sc, pi);
      res.residual = pi.residual;
      res.states = sc.chain.state_count;
    }
  }
  const auto k = res.values.size();
  res.gamma = res.values.back();
  res.extrapolated = res.gamma;
  if (k >= 2) res.successive_difference = std::abs(res.values[k - 1] - res.values[k - 2]);
  if (k >= 3) res.extrapolated = aitken(res.values[k - 3], res.values[k - 2], res.values[k - 1]);
  return res;
}

}  // namespace bdg
