#include "bdg/graph.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "bdg/errors.hpp"

namespace bdg {

namespace {

void build_csr(int n, const std::vector<std::vector<Vertex>>& lists, std::vector<int>& offsets,
               std::vector<Vertex>& targets) {
  offsets.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int x = 0; x < n; ++x) offsets[x + 1] = offsets[x] + static_cast<int>(lists[x].size());
  targets.clear();
  targets.reserve(offsets.back());
  for (const auto& l : lists) targets.insert(targets.end(), l.begin(), l.end());
}

}  // namespace

Graph::Graph(int vertex_count, const EdgeList& edges, std::vector<int> intensities,
             std::vector<std::string> labels)
    : n_(vertex_count), intensities_(std::move(intensities)), labels_(std::move(labels)) {
  if (n_ < 1) throw DomainError("graph must have at least one vertex");
  if (intensities_.empty()) intensities_.assign(n_, 1);
  if (static_cast<int>(intensities_.size()) != n_)
    throw DomainError("intensity count does not match vertex count");
  for (int w : intensities_) {
    if (w < 1) throw DomainError("intensities must be >= 1");
    total_intensity_ += w;
  }
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw DomainError("label count does not match vertex count");

  adjacency_.assign(static_cast<std::size_t>(n_) * n_, 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n_ || v < 0 || v >= n_)
      throw DomainError("edge endpoint out of range: {" + std::to_string(u) + "," +
                        std::to_string(v) + "}");
    if (u == v) throw DomainError("self-loop at vertex " + std::to_string(u));
    adjacency_[static_cast<std::size_t>(u) * n_ + v] = 1;
    adjacency_[static_cast<std::size_t>(v) * n_ + u] = 1;
  }

  std::vector<std::vector<Vertex>> open(n_), closed(n_);
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      if (adjacency_[static_cast<std::size_t>(x) * n_ + y]) open[x].push_back(y);
      if (x == y || adjacency_[static_cast<std::size_t>(x) * n_ + y]) closed[x].push_back(y);
    }
  }
  build_csr(n_, open, open_offsets_, open_targets_);
  build_csr(n_, closed, closed_offsets_, closed_targets_);

  // connectivity
  std::vector<char> seen(n_, 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex x = stack.back();
    stack.pop_back();
    for (Vertex y : neighbours(x)) {
      if (!seen[y]) {
        seen[y] = 1;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  if (reached != n_)
    throw DomainError("graph is not connected (" + std::to_string(reached) + " of " +
                      std::to_string(n_) + " vertices reachable from 0)");
}

Vertex Graph::check(Vertex x) const {
  if (x < 0 || x >= n_) throw DomainError("invalid vertex id " + std::to_string(x));
  return x;
}

std::span<const Vertex> Graph::neighbours(Vertex x) const {
  check(x);
  return {open_targets_.data() + open_offsets_[x],
          static_cast<std::size_t>(open_offsets_[x + 1] - open_offsets_[x])};
}

std::span<const Vertex> Graph::closed(Vertex x) const {
  check(x);
  return {closed_targets_.data() + closed_offsets_[x],
          static_cast<std::size_t>(closed_offsets_[x + 1] - closed_offsets_[x])};
}

EdgeList Graph::edges() const {
  EdgeList out;
  out.reserve(open_targets_.size() / 2);
  for (int u = 0; u < n_; ++u)
    for (Vertex v : neighbours(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph Graph::with_intensities(std::vector<int> intensities) const {
  return Graph(n_, edges(), std::move(intensities), labels_);
}

std::vector<Vertex> closed_neighbourhood(const Graph& g, Vertex x) {
  auto c = g.closed(x);
  return {c.begin(), c.end()};
}

std::vector<int> distances_from(const Graph& g, Vertex root) {
  if (!g.valid(root)) throw DomainError("invalid root " + std::to_string(root));
  std::vector<int> dist(g.vertex_count(), kUnreachable);
  std::deque<Vertex> queue{root};
  dist[root] = 0;
  while (!queue.empty()) {
    Vertex x = queue.front();
    queue.pop_front();
    for (Vertex y : g.neighbours(x)) {
      if (dist[y] == kUnreachable) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

GraphMetrics metrics(const Graph& g) {
  const int n = g.vertex_count();
  GraphMetrics m;
  m.max_degree = 0;
  for (int x = 0; x < n; ++x) m.max_degree = std::max(m.max_degree, g.degree(x));
  m.is_regular = true;
  for (int x = 1; x < n; ++x) m.is_regular = m.is_regular && g.degree(x) == g.degree(0);

  m.distances.reserve(n);
  for (int r = 0; r < n; ++r) m.distances.push_back(distances_from(g, r));

  // A non-tree edge (u, w) found during BFS from r closes a walk of length
  // d(u) + d(w) + 1 that contains a cycle; equality holds when r lies on a
  // shortest cycle, so the minimum over all roots is the girth.
  m.girth = kInfiniteGirth;
  std::vector<int> dist(n), parent(n);
  for (int r = 0; r < n; ++r) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    std::deque<Vertex> queue{r};
    dist[r] = 0;
    while (!queue.empty()) {
      Vertex u = queue.front();
      queue.pop_front();
      if (2 * dist[u] + 1 >= m.girth) break;
      for (Vertex w : g.neighbours(u)) {
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          m.girth = std::min(m.girth, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return m;
}

std::vector<Vertex> non_decreasing_permutation(const Graph& g, Vertex root) {
  auto dist = distances_from(g, root);
  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
  return order;
}

Reduction reduce_with_map(const Graph& g) {
  const int n = g.vertex_count();
  std::map<std::vector<Vertex>, Vertex> class_id;
  std::vector<Vertex> class_of(n);
  std::vector<Vertex> representative;
  std::vector<int> weight;
  for (int x = 0; x < n; ++x) {
    auto key = closed_neighbourhood(g, x);
    auto [it, inserted] = class_id.emplace(std::move(key), static_cast<Vertex>(representative.size()));
    if (inserted) {
      representative.push_back(x);
      weight.push_back(0);
    }
    class_of[x] = it->second;
    weight[it->second] += g.intensity(x);
  }
  const int k = static_cast<int>(representative.size());
  EdgeList edges;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b)
      if (g.adjacent(representative[a], representative[b])) edges.emplace_back(a, b);

  std::vector<std::string> labels;
  if (!g.labels().empty()) {
    labels.reserve(k);
    for (Vertex r : representative) labels.push_back(g.labels()[r]);
  }
  return {Graph(k, edges, std::move(weight), std::move(labels)), std::move(class_of)};
}

Graph reduce_irreducible(const Graph& g) { return reduce_with_map(g).graph; }

Graph clone_vertices(const Graph& g, std::span<const int> copies) {
  const int n = g.vertex_count();
  if (static_cast<int>(copies.size()) != n)
    throw DomainError("clone_vertices: copies must have one entry per vertex");
  std::vector<int> first(n + 1, 0);
  for (int x = 0; x < n; ++x) {
    if (copies[x] < 1) throw DomainError("clone_vertices: copies must be >= 1");
    first[x + 1] = first[x] + copies[x];
  }
  EdgeList edges;
  std::vector<int> intensities(first[n]);
  for (int x = 0; x < n; ++x) {
    for (int i = first[x]; i < first[x + 1]; ++i) {
      intensities[i] = g.intensity(x);
      for (int j = i + 1; j < first[x + 1]; ++j) edges.emplace_back(i, j);
    }
    for (Vertex y : g.neighbours(x)) {
      if (y < x) continue;
      for (int i = first[x]; i < first[x + 1]; ++i)
        for (int j = first[y]; j < first[y + 1]; ++j) edges.emplace_back(i, j);
    }
  }
  return Graph(first[n], edges, std::move(intensities));
}

Graph expand_intensities(const Graph& g) {
  auto copies = g.intensities();
  std::vector<int> c(copies.begin(), copies.end());
  return clone_vertices(g.with_intensities({}), c);
}

bool is_subgraph(const Graph& g, const Graph& h, std::span<const Vertex> embedding) {
  if (static_cast<int>(embedding.size()) != g.vertex_count())
    throw DomainError("embedding must map every vertex of g");
  std::vector<char> used(h.vertex_count(), 0);
  for (Vertex image : embedding) {
    if (!h.valid(image)) throw DomainError("embedding target out of range");
    if (used[image]) throw DomainError("embedding is not injective");
    used[image] = 1;
  }
  for (auto [u, v] : g.edges())
    if (!h.adjacent(embedding[u], embedding[v])) return false;
  return true;
}

}  // namespace bdg
