#include "thetaforge/graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <sstream>

#include "thetaforge/error.hpp"

namespace thetaforge {

namespace {

std::string vertex_message(Vertex u, Vertex v, int n) {
  std::ostringstream os;
  os << "pair (" << u << ", " << v << ") outside 0.." << n - 1;
  return os.str();
}

int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "cannot read integer '" + std::string(text) + "' for " + std::string(what));
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

Graph::Graph(int n, std::vector<Edge> edges, std::optional<bool> vertex_transitive,
             std::size_t max_vertices)
    : n_(n), edges_(std::move(edges)), vertex_transitive_(vertex_transitive) {
  if (n < 1 || static_cast<std::size_t>(n) > max_vertices) {
    throw Error(ErrorCode::ParameterOutOfRange,
                "vertex count " + std::to_string(n) + " outside 1.." + std::to_string(max_vertices));
  }
  for (auto& e : edges_) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw Error(ErrorCode::VertexOutOfRange, vertex_message(e.u, e.v, n));
    }
    if (e.u == e.v) throw Error(ErrorCode::SelfLoop, "self-loop at vertex " + std::to_string(e.u));
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw Error(ErrorCode::DuplicateEdge,
                "edge (" + std::to_string(dup->u) + ", " + std::to_string(dup->v) + ") repeated");
  }

  std::vector<std::size_t> degree(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges_) {
    ++degree[e.u];
    ++degree[e.v];
  }
  offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 0; v < n; ++v) offsets_[v + 1] = offsets_[v] + degree[v];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[fill[e.u]++] = e.v;
    adjacency_[fill[e.v]++] = e.u;
  }
  for (int v = 0; v < n; ++v) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]));
  }

  if (n <= kDenseAdjacencyLimit) {
    const auto bits = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
    dense_.assign((bits + 63) / 64, 0);
    for (const auto& e : edges_) {
      const auto a = static_cast<std::size_t>(e.u) * n + e.v;
      const auto b = static_cast<std::size_t>(e.v) * n + e.u;
      dense_[a / 64] |= std::uint64_t{1} << (a % 64);
      dense_[b / 64] |= std::uint64_t{1} << (b % 64);
    }
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  if (v < 0 || v >= n_) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
  return {adjacency_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw Error(ErrorCode::VertexOutOfRange, vertex_message(u, v, n_));
  }
  return adjacent_unchecked(u, v);
}

bool Graph::adjacent_unchecked(Vertex u, Vertex v) const {
  if (!dense_.empty()) {
    const auto a = static_cast<std::size_t>(u) * n_ + v;
    return (dense_[a / 64] >> (a % 64)) & 1U;
  }
  if (offsets_[u + 1] - offsets_[u] > offsets_[v + 1] - offsets_[v]) std::swap(u, v);
  auto first = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u]);
  auto last = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[u + 1]);
  return std::binary_search(first, last, v);
}

Graph Graph::with_vertex_transitive(std::optional<bool> flag) const {
  Graph copy = *this;
  copy.vertex_transitive_ = flag;
  return copy;
}

std::string_view to_string(ProductKind kind) noexcept {
  switch (kind) {
    case ProductKind::Strong: return "strong";
    case ProductKind::Disjunctive: return "disjunctive";
    case ProductKind::Lexicographic: return "lexicographic";
    case ProductKind::Cartesian: return "cartesian";
    case ProductKind::Hom: return "hom";
    case ProductKind::DisjointUnion: return "union";
  }
  return "?";
}

ProductKind parse_product_kind(std::string_view name) {
  if (name == "strong") return ProductKind::Strong;
  if (name == "disj" || name == "disjunctive") return ProductKind::Disjunctive;
  if (name == "lex" || name == "lexicographic") return ProductKind::Lexicographic;
  if (name == "cart" || name == "cartesian") return ProductKind::Cartesian;
  if (name == "hom") return ProductKind::Hom;
  if (name == "union" || name == "disjoint") return ProductKind::DisjointUnion;
  throw Error(ErrorCode::InvalidInput, "unknown product kind '" + std::string(name) + "'");
}

Graph complete_graph(int n) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "K_n needs n >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  return Graph(n, std::move(edges), true);
}

Graph cycle_graph(int n) {
  if (n < 3) throw Error(ErrorCode::ParameterOutOfRange, "C_n needs n >= 3");
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n});
  return Graph(n, std::move(edges), true);
}

Graph empty_graph(int n) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "E_n needs n >= 1");
  return Graph(n, {}, true);
}

Graph path_graph(int n) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "P_n needs n >= 1");
  std::vector<Edge> edges;
  for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
  return Graph(n, std::move(edges), n <= 2 ? std::optional<bool>(true) : std::optional<bool>(false));
}

Graph petersen_graph() {
  std::vector<Edge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back({i, (i + 1) % 5});
    edges.push_back({i, i + 5});
    edges.push_back({5 + i, 5 + (i + 2) % 5});
  }
  return Graph(10, std::move(edges), true);
}

Graph hamming_graph(int length, const std::vector<int>& distances) {
  if (length < 1 || length > 16) {
    throw Error(ErrorCode::ParameterOutOfRange, "Hamming length must lie in 1..16");
  }
  std::vector<bool> allowed(static_cast<std::size_t>(length) + 1, false);
  for (int d : distances) {
    if (d < 1 || d > length) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  "Hamming distance " + std::to_string(d) + " outside 1.." + std::to_string(length));
    }
    allowed[d] = true;
  }
  const int n = 1 << length;
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (allowed[std::popcount(static_cast<unsigned>(u ^ v))]) edges.push_back({u, v});
  // XOR translations act transitively.
  return Graph(n, std::move(edges), true);
}

Graph schrijver_graph() { return hamming_graph(6, {1, 2, 3}); }

Graph make_named(std::string_view spec) {
  spec = trim(spec);
  // Shorthand: "C5" means "C:5".
  if (spec.size() >= 2 && std::string_view("KCEP").find(spec[0]) != std::string_view::npos &&
      std::all_of(spec.begin() + 1, spec.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return make_named(std::string(1, spec[0]) + ":" + std::string(spec.substr(1)));
  }
  const auto parts = split(spec, ':');
  const auto family = parts.front();
  auto need_parts = [&](std::size_t count) {
    if (parts.size() != count) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  "family '" + std::string(family) + "' expects " + std::to_string(count - 1) +
                      " parameter(s)");
    }
  };
  if (family == "petersen" || family == "Petersen") {
    need_parts(1);
    return petersen_graph();
  }
  if (family == "schrijver") {
    need_parts(1);
    return schrijver_graph();
  }
  if (family == "K" || family == "C" || family == "E" || family == "P") {
    need_parts(2);
    const int n = parse_int(parts[1], family);
    if (family == "K") return complete_graph(n);
    if (family == "C") return cycle_graph(n);
    if (family == "E") return empty_graph(n);
    return path_graph(n);
  }
  if (family == "hamming") {
    need_parts(3);
    const int length = parse_int(parts[1], "hamming length");
    std::vector<int> distances;
    if (!parts[2].empty()) {
      for (auto d : split(parts[2], ',')) distances.push_back(parse_int(d, "hamming distance"));
    }
    return hamming_graph(length, distances);
  }
  throw Error(ErrorCode::UnknownFamily, "unknown graph family '" + std::string(family) + "'");
}

Graph random_graph(int n, double edge_probability, std::mt19937_64& rng) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "random graph needs n >= 1");
  if (!(edge_probability >= 0.0 && edge_probability <= 1.0)) {
    throw Error(ErrorCode::ParameterOutOfRange, "edge probability must lie in [0, 1]");
  }
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng) < edge_probability) edges.push_back({u, v});
  return Graph(n, std::move(edges));
}

Graph complement(const Graph& g) {
  const int n = g.order();
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2 - g.size());
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.adjacent(u, v)) edges.push_back({u, v});
  return Graph(n, std::move(edges), g.declared_vertex_transitive());
}

Graph product(const Graph& g, const Graph& h, ProductKind kind, std::size_t max_vertices) {
  const auto ng = static_cast<std::size_t>(g.order());
  const auto nh = static_cast<std::size_t>(h.order());
  const std::size_t total = kind == ProductKind::DisjointUnion ? ng + nh : ng * nh;
  if (total > max_vertices) {
    throw Error(ErrorCode::SizeOverflow, "product would have " + std::to_string(total) +
                                             " vertices, limit " + std::to_string(max_vertices));
  }

  std::vector<Edge> edges;
  if (kind == ProductKind::DisjointUnion) {
    edges = g.edges();
    const int shift = g.order();
    for (const auto& e : h.edges()) edges.push_back({e.u + shift, e.v + shift});
    return Graph(static_cast<int>(total), std::move(edges), std::nullopt, max_vertices);
  }

  const int n = static_cast<int>(total);
  const int m = h.order();
  auto linked = [&](int x1, int y1, int x2, int y2) {
    const bool xe = x1 == x2;
    const bool ye = y1 == y2;
    const bool xa = !xe && g.adjacent(x1, x2);
    const bool ya = !ye && h.adjacent(y1, y2);
    switch (kind) {
      case ProductKind::Strong: return (xe && ya) || (xa && ye) || (xa && ya);
      case ProductKind::Disjunctive: return xa || ya;
      case ProductKind::Lexicographic: return xa || (xe && ya);
      case ProductKind::Cartesian: return (xe && ya) || (xa && ye);
      case ProductKind::Hom: return !xe && (!xa || ya);
      case ProductKind::DisjointUnion: break;
    }
    return false;
  };
  for (int a = 0; a < n; ++a) {
    const int x1 = a / m;
    const int y1 = a % m;
    for (int b = a + 1; b < n; ++b) {
      if (linked(x1, y1, b / m, b % m)) edges.push_back({a, b});
    }
  }

  std::optional<bool> vt;
  if (g.declared_vertex_transitive() == true && h.declared_vertex_transitive() == true) vt = true;
  return Graph(n, std::move(edges), vt, max_vertices);
}

Graph parse_graph(std::string_view text) {
  int n = -1;
  std::vector<Edge> edges;
  std::vector<int> edge_lines;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::SyntaxError, "line " + std::to_string(line_no) + ": " + why);
    };
    if (n < 0) {
      if (line.substr(0, 2) != "n=") fail("expected 'n=<count>' header");
      auto count = trim(line.substr(2));
      int value = 0;
      auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), value);
      if (ec != std::errc{} || ptr != count.data() + count.size()) fail("bad vertex count");
      if (value < 1 || static_cast<std::size_t>(value) > kDefaultMaxVertices) {
        fail("vertex count out of range");
      }
      n = value;
    } else {
      std::istringstream is{std::string(line)};
      long long u = 0, v = 0;
      std::string extra;
      if (!(is >> u >> v) || (is >> extra)) fail("expected '<u> <v>'");
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw Error(ErrorCode::VertexOutOfRange,
                    "line " + std::to_string(line_no) + ": " +
                        vertex_message(static_cast<int>(u), static_cast<int>(v), n));
      }
      if (u == v) {
        throw Error(ErrorCode::SelfLoop, "line " + std::to_string(line_no) + ": vertex " +
                                             std::to_string(u));
      }
      edges.push_back({static_cast<int>(std::min(u, v)), static_cast<int>(std::max(u, v))});
      edge_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (n < 0) throw Error(ErrorCode::SyntaxError, "line 1: missing 'n=<count>' header");

  std::vector<std::size_t> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (edges[order[i]] == edges[order[i - 1]]) {
      const auto& e = edges[order[i]];
      throw Error(ErrorCode::DuplicateEdge, "line " + std::to_string(edge_lines[order[i]]) +
                                                ": edge (" + std::to_string(e.u) + ", " +
                                                std::to_string(e.v) + ") repeated");
    }
  }
  return Graph(n, std::move(edges));
}

std::string serialize_graph(const Graph& g) {
  std::ostringstream os;
  os << "n=" << g.order() << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << '\n';
  return os.str();
}

}  // namespace thetaforge
