#include "bdg/catalog.hpp"

#include <algorithm>
#include <map>

#include "bdg/star_exact.hpp"
#include "bdg/surface_chain.hpp"

namespace bdg {

std::optional<Theorem1Params> detect_theorem1(const Graph& graph) {
  const Graph g = graph.has_unit_intensities() ? graph : expand_intensities(graph);
  const int total = g.vertex_count();
  int dominant = 0;
  for (int x = 0; x < total; ++x) dominant += g.degree(x) == total - 1;
  const int rest = total - dominant;
  if (rest == 0) return std::nullopt;  // complete graph

  auto red = reduce_with_map(g);
  std::map<Vertex, int> size;
  for (int x = 0; x < total; ++x)
    if (g.degree(x) != total - 1) ++size[red.class_of[x]];
  const int m = static_cast<int>(size.size());
  const int n = size.begin()->second;
  for (auto [cls, sz] : size)
    if (sz != n) return std::nullopt;
  if (m < 2 || m % 2 || (m == 2 && dominant == 0)) return std::nullopt;

  // each non-dominant class misses exactly one other class
  for (auto [a, sa] : size) {
    int missing = 0;
    for (auto [b, sb] : size)
      if (a != b && !red.graph.adjacent(a, b)) ++missing;
    if (missing != 1) return std::nullopt;
  }
  return Theorem1Params{dominant, n, m};
}

std::optional<KnownGamma> known_gamma(const Graph& graph) {
  const Graph g = graph.has_unit_intensities() ? graph : expand_intensities(graph);
  const int n = g.vertex_count();
  if (g.edge_count() == n * (n - 1) / 2) return KnownGamma{static_cast<double>(n), "complete graph"};
  if (auto p = detect_theorem1(g))
    return KnownGamma{gamma_theorem1(p->N, p->n, p->m),
                      "closed form theorem1(" + std::to_string(p->N) + "," + std::to_string(p->n) +
                          "," + std::to_string(p->m) + ")"};
  int centre = 0, leaves = 0;
  for (int x = 0; x < n; ++x) {
    centre += g.degree(x) == n - 1;
    leaves += g.degree(x) == 1;
  }
  if (n >= 3 && centre == 1 && leaves == n - 1)
    return KnownGamma{gamma_star_series(n, 1e-13).value, "star series S_" + std::to_string(n)};
  return std::nullopt;
}

}  // namespace bdg
