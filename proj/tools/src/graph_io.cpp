#include "bdg_cli/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <regex>

#include "bdg/errors.hpp"

namespace bdg::cli {

using nlohmann::json;

Graph graph_from_json(const json& doc) {
  if (!doc.is_object()) throw DomainError("graph document must be a JSON object");
  if (!doc.contains("vertices") || !doc["vertices"].is_number_integer())
    throw DomainError("graph document needs an integer \"vertices\" field");
  const auto n = doc["vertices"].get<std::int64_t>();
  if (n < 1 || n > 1'000'000) throw DomainError("vertex count out of range");

  EdgeList edges;
  if (doc.contains("edges")) {
    if (!doc["edges"].is_array()) throw DomainError("\"edges\" must be an array of pairs");
    for (const auto& e : doc["edges"]) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw DomainError("edge entries must be [u, v] integer pairs");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
  }
  std::vector<int> intensities;
  if (doc.contains("intensities")) {
    if (!doc["intensities"].is_array()) throw DomainError("\"intensities\" must be an array");
    for (const auto& v : doc["intensities"]) {
      if (!v.is_number_integer()) throw DomainError("intensities must be integers");
      intensities.push_back(v.get<int>());
    }
    if (static_cast<std::int64_t>(intensities.size()) != n)
      throw DomainError("intensities has the wrong length");
  }
  std::vector<std::string> labels;
  if (doc.contains("labels")) {
    if (!doc["labels"].is_array()) throw DomainError("\"labels\" must be an array");
    for (const auto& v : doc["labels"]) {
      if (!v.is_string()) throw DomainError("labels must be strings");
      labels.push_back(v.get<std::string>());
    }
  }
  return Graph(static_cast<int>(n), edges, std::move(intensities), std::move(labels));
}

json graph_to_json(const Graph& g) {
  json doc;
  doc["vertices"] = g.vertex_count();
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  doc["edges"] = std::move(edges);
  doc["intensities"] = std::vector<int>(g.intensities().begin(), g.intensities().end());
  if (!g.labels().empty()) doc["labels"] = g.labels();
  return doc;
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open graph file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DomainError("malformed graph file " + path.string() + ": " + e.what());
  }
  return graph_from_json(doc);
}

Graph resolve_graph(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return load_graph(spec);
  return parse_family(spec);
}

std::int64_t parse_count(std::string_view text) {
  static const std::regex pattern(R"(^(\d+)(?:\.(\d*))?(?:[eE]\+?(\d+))?$)");
  std::string s(text);
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw DomainError("not a count: '" + s + "'");
  std::string digits = m[1].str() + m[2].str();
  long long exponent = 0;
  if (m[3].matched) {
    if (m[3].length() > 4) throw DomainError("count out of range: '" + s + "'");
    exponent = std::stoll(m[3].str());
  }
  exponent -= static_cast<long long>(m[2].length());
  // drop fractional digits, which must be zero
  while (exponent < 0) {
    if (digits.empty() || digits.back() != '0') throw DomainError("count is not an integer: '" + s + "'");
    digits.pop_back();
    ++exponent;
  }
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t value = 0;
  for (char c : digits) {
    int d = c - '0';
    if (value > (kMax - d) / 10) throw DomainError("count out of range: '" + s + "'");
    value = value * 10 + d;
  }
  for (long long i = 0; i < exponent && value != 0; ++i) {
    if (value > kMax / 10) throw DomainError("count out of range: '" + s + "'");
    value *= 10;
  }
  return value;
}

std::pair<int, int> parse_range(std::string_view text) {
  auto number = [&](std::string_view part) {
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || p != part.data() + part.size())
      throw DomainError("bad range '" + std::string(text) + "'");
    return v;
  };
  auto dots = text.find("..");
  int lo, hi;
  if (dots == std::string_view::npos) {
    lo = hi = number(text);
  } else {
    lo = number(text.substr(0, dots));
    hi = number(text.substr(dots + 2));
  }
  if (lo > hi) throw DomainError("empty range '" + std::string(text) + "'");
  return {lo, hi};
}

}  // namespace bdg::cli
