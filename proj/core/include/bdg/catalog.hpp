#pragma once

#include <optional>
#include <string>

#include "bdg/graph.hpp"

namespace bdg {

struct Theorem1Params {
  int N = 0, n = 0, m = 0;
};

/// Recognises graphs isomorphic to theorem1_family(N, n, m) by their clone
/// classes: N dominant vertices plus m classes of n equivalent vertices whose
/// quotient is a cocktail-party graph. Intensities are expanded first.
std::optional<Theorem1Params> detect_theorem1(const Graph& g);

struct KnownGamma {
  double value = 0;
  std::string source;
};

/// Exact gamma for complete graphs (total intensity), the theorem-1 family
/// (closed form) and stars (series). nullopt otherwise.
std::optional<KnownGamma> known_gamma(const Graph& g);

}  // namespace bdg
