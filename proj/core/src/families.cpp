#include <charconv>
#include <string>

#include "bdg/errors.hpp"
#include "bdg/graph.hpp"

namespace bdg {

Graph cycle(int n) {
  if (n < 3) throw DomainError("cycle needs n >= 3, got " + std::to_string(n));
  EdgeList e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return Graph(n, e);
}

Graph path(int n) {
  if (n < 1) throw DomainError("path needs n >= 1");
  EdgeList e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph star(int n) {
  if (n < 1) throw DomainError("star needs n >= 1");
  EdgeList e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, e);
}

Graph complete(int n) {
  if (n < 1) throw DomainError("complete needs n >= 1");
  EdgeList e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph cocktail_party(int m) {
  if (m < 2 || m % 2) throw DomainError("cocktail party graph needs even m >= 2");
  if (m == 2) throw DomainError("cocktail party graph R_2 is disconnected");
  EdgeList e;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (i / 2 != j / 2) e.emplace_back(i, j);
  return Graph(m, e);
}

Graph butterfly() { return Graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {3, 4}}); }

Graph petersen() {
  EdgeList e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);          // outer
    e.emplace_back(i, i + 5);                // spoke
    e.emplace_back(5 + i, 5 + (i + 2) % 5);  // pentagram
  }
  return Graph(10, e);
}

Graph theorem1_family(int N, int n, int m) {
  if (N < 0 || n < 1) throw DomainError("theorem1 family needs N >= 0 and n >= 1");
  if (m < 2 || m % 2) throw DomainError("theorem1 family needs even m >= 2");
  if (m == 2 && N < 1) throw DomainError("theorem1 family needs N >= 1 when m = 2");
  const int total = N + n * m;
  auto id = [&](int j, int c) { return N + j * n + c; };
  EdgeList e;
  for (int d = 0; d < N; ++d)
    for (int y = d + 1; y < total; ++y) e.emplace_back(d, y);
  for (int j = 0; j < m; ++j) {
    for (int c = 0; c < n; ++c) {
      for (int c2 = c + 1; c2 < n; ++c2) e.emplace_back(id(j, c), id(j, c2));
      for (int j2 = j + 1; j2 < m; ++j2) {
        if (j / 2 == j2 / 2) continue;
        for (int c2 = 0; c2 < n; ++c2) e.emplace_back(id(j, c), id(j2, c2));
      }
    }
  }
  return Graph(total, e);
}

namespace {

int parse_int(std::string_view s, std::string_view whole) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DomainError("bad integer '" + std::string(s) + "' in graph spec '" + std::string(whole) +
                      "'");
  return v;
}

}  // namespace

Graph parse_family(std::string_view spec) {
  auto colon = spec.find(':');
  std::string_view name = spec.substr(0, colon);
  std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);

  auto need_arg = [&]() {
    if (arg.empty()) throw DomainError("graph spec '" + std::string(spec) + "' needs a parameter");
    return parse_int(arg, spec);
  };
  if (name == "cycle") return cycle(need_arg());
  if (name == "path") return path(need_arg());
  if (name == "star") return star(need_arg());
  if (name == "complete") return complete(need_arg());
  if (name == "cocktail") return cocktail_party(need_arg());
  if (name == "butterfly" && arg.empty()) return butterfly();
  if (name == "petersen" && arg.empty()) return petersen();
  if (name == "theorem1") {
    int v[3];
    std::string_view rest = arg;
    for (int i = 0; i < 3; ++i) {
      auto comma = rest.find(',');
      if ((i < 2) == (comma == std::string_view::npos))
        throw DomainError("theorem1 spec needs N,n,m: '" + std::string(spec) + "'");
      v[i] = parse_int(rest.substr(0, comma), spec);
      if (i < 2) rest = rest.substr(comma + 1);
    }
    return theorem1_family(v[0], v[1], v[2]);
  }
  throw DomainError("unknown graph family '" + std::string(spec) + "'");
}

}  // namespace bdg
