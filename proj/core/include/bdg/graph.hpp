#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bdg {

/// Dense vertex id in [0, vertex_count).
using Vertex = int;
using EdgeList = std::vector<std::pair<Vertex, Vertex>>;

/// Finite connected simple graph with a positive integer intensity per vertex.
///
/// The intensity of a vertex is the rate multiplier of its Poisson clock; a
/// vertex of intensity k behaves like k mutually equivalent unit vertices.
/// Values are immutable after construction.
class Graph {
 public:
  /// Throws DomainError on self-loops, out-of-range endpoints, intensities
  /// below 1, a label count that does not match, or a disconnected graph.
  /// Duplicate edges (in either orientation) are merged.
  Graph(int vertex_count, const EdgeList& edges, std::vector<int> intensities = {},
        std::vector<std::string> labels = {});

  int vertex_count() const noexcept { return n_; }
  int edge_count() const noexcept { return static_cast<int>(open_targets_.size() / 2); }

  int intensity(Vertex x) const { return intensities_[check(x)]; }
  std::span<const int> intensities() const noexcept { return intensities_; }
  std::int64_t total_intensity() const noexcept { return total_intensity_; }
  bool has_unit_intensities() const noexcept { return total_intensity_ == n_; }

  /// Open neighbourhood of x in ascending id order.
  std::span<const Vertex> neighbours(Vertex x) const;
  /// Closed neighbourhood [x] = {x} plus neighbours, ascending.
  std::span<const Vertex> closed(Vertex x) const;

  int degree(Vertex x) const { return static_cast<int>(neighbours(x).size()); }
  bool adjacent(Vertex x, Vertex y) const {
    return adjacency_[static_cast<std::size_t>(check(x)) * n_ + check(y)] != 0;
  }
  bool valid(Vertex x) const noexcept { return x >= 0 && x < n_; }

  /// Edges {u, v} with u < v, sorted lexicographically.
  EdgeList edges() const;
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  Graph with_intensities(std::vector<int> intensities) const;

  /// Structural equality: same vertex count, edge set and intensities.
  /// Labels are ignored.
  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.adjacency_ == b.adjacency_ && a.intensities_ == b.intensities_;
  }

 private:
  Vertex check(Vertex x) const;

  int n_;
  std::vector<int> intensities_;
  std::int64_t total_intensity_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> open_offsets_;
  std::vector<Vertex> open_targets_;
  std::vector<int> closed_offsets_;
  std::vector<Vertex> closed_targets_;
};

inline constexpr int kInfiniteGirth = std::numeric_limits<int>::max();
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

struct GraphMetrics {
  int max_degree = 0;
  int girth = kInfiniteGirth;  // kInfiniteGirth for forests
  bool is_regular = true;
  std::vector<std::vector<int>> distances;  // hop counts
};

/// [x] as an owned vector. Throws DomainError for an invalid id.
std::vector<Vertex> closed_neighbourhood(const Graph& g, Vertex x);

GraphMetrics metrics(const Graph& g);

/// BFS distances from root.
std::vector<int> distances_from(const Graph& g, Vertex root);

/// Vertices sorted by (distance from root, id). The first entry is root.
std::vector<Vertex> non_decreasing_permutation(const Graph& g, Vertex root);

struct Reduction {
  Graph graph;
  std::vector<Vertex> class_of;  // original vertex -> vertex of the reduced graph
};

/// Merges every class of vertices with equal closed neighbourhoods into one
/// vertex carrying the summed intensity. Classes are numbered by their
/// smallest member.
Reduction reduce_with_map(const Graph& g);
Graph reduce_irreducible(const Graph& g);

/// Replaces vertex x by copies[x] mutually adjacent representatives that all
/// share x's closed neighbourhood. Each representative keeps x's intensity.
/// Representatives of x get consecutive ids, in the order of x.
Graph clone_vertices(const Graph& g, std::span<const int> copies);

/// Unit-intensity graph in which each vertex x of g is cloned to intensity(x)
/// representatives. Inverse of reduce_irreducible up to isomorphism.
Graph expand_intensities(const Graph& g);

/// True iff every edge of g maps to an edge of h under embedding.
/// Throws DomainError if the map is not injective or leaves h's range.
bool is_subgraph(const Graph& g, const Graph& h, std::span<const Vertex> embedding);

// Family constructors; all return unit-intensity graphs.
Graph cycle(int n);     // n >= 3, edges {i, i+1 mod n}
Graph path(int n);      // n >= 1
Graph star(int n);      // n >= 1 vertices, centre 0
Graph complete(int n);  // n >= 1
/// Complete graph on m vertices minus the perfect matching {2i, 2i+1}.
/// m even; m = 2 is disconnected and therefore rejected.
Graph cocktail_party(int m);
/// Centre 0 joined to two triangles' outer pairs (1,2) and (3,4).
Graph butterfly();
Graph petersen();
/// N dominant vertices (ids 0..N-1) joined to the cocktail-party graph R_m
/// whose vertices are each cloned to n copies. vertex_count = N + n*m.
Graph theorem1_family(int N, int n, int m);

/// Parses "cycle:7", "path:3", "star:5", "complete:4", "cocktail:6",
/// "butterfly", "petersen", "theorem1:1,2,2".
Graph parse_family(std::string_view spec);

}  // namespace bdg
