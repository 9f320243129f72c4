#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>

#include "json.hpp"

#include "bdg/graph.hpp"

namespace bdg::cli {

/// Graph document:
///   {"vertices": 5, "edges": [[0,1], ...], "intensities": [1, ...], "labels": ["a", ...]}
/// intensities and labels are optional. Throws DomainError on a malformed document.
Graph graph_from_json(const nlohmann::json& doc);
nlohmann::json graph_to_json(const Graph& g);
Graph load_graph(const std::filesystem::path& path);

/// A readable file is loaded as a graph document, anything else goes to parse_family.
Graph resolve_graph(const std::string& spec);

/// Non-negative integer, optionally in scientific notation ("1e6", "2.5e3").
/// The value must be integral and fit in int64. Throws DomainError otherwise.
std::int64_t parse_count(std::string_view text);

/// "4..40" or a single "7". Inclusive. Throws DomainError on a bad or empty range.
std::pair<int, int> parse_range(std::string_view text);

}  // namespace bdg::cli
