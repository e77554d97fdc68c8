#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace thetaforge {

using Vertex = int;

/// Unordered vertex pair, stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline constexpr std::size_t kDefaultMaxVertices = 65536;

/// Finite simple graph on vertices 0..n-1.
///
/// Immutable after construction. Adjacency queries are O(1) for graphs of up
/// to kDenseAdjacencyLimit vertices and O(log deg) otherwise. The optional
/// vertex-transitivity flag is metadata carried by named families and the
/// operations that preserve the property; it does not take part in equality.
class Graph {
 public:
  static constexpr int kDenseAdjacencyLimit = 4096;

  /// Validates and canonicalizes the edge list. Pairs may be given in either
  /// order; self-loops, duplicates and out-of-range endpoints throw.
  Graph(int n, std::vector<Edge> edges, std::optional<bool> vertex_transitive = std::nullopt,
        std::size_t max_vertices = kDefaultMaxVertices);

  int order() const noexcept { return n_; }
  std::size_t size() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbors(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }

  /// False for u == v; throws VertexOutOfRange for invalid vertices.
  bool adjacent(Vertex u, Vertex v) const;

  std::optional<bool> declared_vertex_transitive() const noexcept { return vertex_transitive_; }
  Graph with_vertex_transitive(std::optional<bool> flag) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  bool adjacent_unchecked(Vertex u, Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> adjacency_;
  std::vector<std::uint64_t> dense_;
  std::optional<bool> vertex_transitive_;
};

enum class ProductKind { Strong, Disjunctive, Lexicographic, Cartesian, Hom, DisjointUnion };

std::string_view to_string(ProductKind kind) noexcept;
/// Accepts the long names and the CLI short forms (strong, disj, lex, cart, hom, union).
ProductKind parse_product_kind(std::string_view name);

// Named families.
Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph empty_graph(int n);
Graph path_graph(int n);
Graph petersen_graph();
/// Vertices are the 2^length bit strings; u ~ v iff popcount(u ^ v) is in `distances`.
Graph hamming_graph(int length, const std::vector<int>& distances);
/// Schrijver's graph: 6-bit strings adjacent when their Hamming distance is at most 3.
Graph schrijver_graph();

/// Family mini-language: `K:n`, `C:n`, `E:n`, `P:n`, `petersen`, `schrijver`,
/// `hamming:l:d1,d2,...`. `K5`, `C7`, ... are accepted as shorthand.
Graph make_named(std::string_view spec);

/// Erdos-Renyi G(n, p) driven by the caller's generator.
Graph random_graph(int n, double edge_probability, std::mt19937_64& rng);

Graph complement(const Graph& g);

/// Product vertex (x, y) is encoded as x * h.order() + y; DisjointUnion places
/// g's vertices first and shifts h's by g.order().
Graph product(const Graph& g, const Graph& h, ProductKind kind,
              std::size_t max_vertices = kDefaultMaxVertices);

/// Plain-text edge list: `n=<count>` then one `u v` pair per line, `#` comments.
Graph parse_graph(std::string_view text);
std::string serialize_graph(const Graph& g);

}  // namespace thetaforge
