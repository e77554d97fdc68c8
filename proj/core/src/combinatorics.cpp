#include "thetaforge/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>

#include "thetaforge/error.hpp"

namespace thetaforge {

namespace {

using Mask = std::uint64_t;

Mask bit(int v) { return Mask{1} << v; }

std::vector<Mask> neighbor_masks(const Graph& g) {
  std::vector<Mask> masks(static_cast<std::size_t>(g.order()), 0);
  for (const auto& e : g.edges()) {
    masks[e.u] |= bit(e.v);
    masks[e.v] |= bit(e.u);
  }
  return masks;
}

// Branch and bound with a greedy-colouring bound (Tomita and Seki's MCQ).
class CliqueSearch {
 public:
  explicit CliqueSearch(const Graph& g) : adj_(neighbor_masks(g)) {}

  int run(int n) {
    best_ = 0;
    const Mask all = n == 64 ? ~Mask{0} : bit(n) - 1;
    expand(all, 0);
    return best_;
  }

 private:
  void expand(Mask candidates, int size) {
    if (candidates == 0) {
      best_ = std::max(best_, size);
      return;
    }
    std::vector<std::pair<int, int>> order;  // (vertex, colour bound)
    Mask uncoloured = candidates;
    int colour = 0;
    while (uncoloured != 0) {
      ++colour;
      Mask q = uncoloured;
      while (q != 0) {
        const int v = std::countr_zero(q);
        q &= ~adj_[v] & ~bit(v);
        uncoloured &= ~bit(v);
        order.emplace_back(v, colour);
      }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      const auto [v, bound] = *it;
      if (size + bound <= best_) return;
      expand(candidates & adj_[v], size + 1);
      candidates &= ~bit(v);
    }
  }

  std::vector<Mask> adj_;
  int best_ = 0;
};

void require_clique_limit(const Graph& g) {
  if (g.order() > kCliqueSearchLimit) {
    throw Error(ErrorCode::TooLarge, "exact clique search limited to " +
                                         std::to_string(kCliqueSearchLimit) + " vertices");
  }
}

bool colourable(const Graph& g, int k) {
  const int n = g.order();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return g.degree(a) > g.degree(b); });
  std::vector<int> colour(n, -1);
  std::function<bool(int, int)> assign = [&](int idx, int used) {
    if (idx == n) return true;
    const int v = order[idx];
    const int limit = std::min(k, used + 1);
    for (int c = 0; c < limit; ++c) {
      bool ok = true;
      for (int w : g.neighbors(v)) {
        if (colour[w] == c) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      colour[v] = c;
      if (assign(idx + 1, std::max(used, c + 1))) return true;
      colour[v] = -1;
    }
    return false;
  };
  return assign(0, 0);
}

// Extends a partial vertex bijection a -> b that preserves adjacency.
bool extend_isomorphism(const Graph& a, const Graph& b, std::vector<int>& map, std::vector<bool>& used,
                        int next) {
  const int n = a.order();
  if (next == n) return true;
  for (int target = 0; target < n; ++target) {
    if (used[target] || a.degree(next) != b.degree(target)) continue;
    if (map[next] >= 0 && map[next] != target) continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      ok = a.adjacent(prev, next) == b.adjacent(map[prev], target);
    }
    if (!ok) continue;
    const int saved = map[next];
    map[next] = target;
    used[target] = true;
    if (extend_isomorphism(a, b, map, used, next + 1)) return true;
    used[target] = false;
    map[next] = saved;
  }
  return false;
}

}  // namespace

int clique_number(const Graph& g) {
  require_clique_limit(g);
  return CliqueSearch(g).run(g.order());
}

int independence_number(const Graph& g) {
  require_clique_limit(g);
  return clique_number(complement(g));
}

int chromatic_number(const Graph& g) {
  if (g.order() > kChromaticSearchLimit) {
    throw Error(ErrorCode::TooLarge, "exact colouring limited to " +
                                         std::to_string(kChromaticSearchLimit) + " vertices");
  }
  int k = std::max(1, clique_number(g));
  while (!colourable(g, k)) ++k;
  return k;
}

BruteInvariants brute_invariants(const Graph& g) {
  require_clique_limit(g);
  BruteInvariants out;
  out.omega = clique_number(g);
  out.alpha = independence_number(g);
  if (g.order() <= kChromaticSearchLimit) out.chi = chromatic_number(g);
  return out;
}

bool is_independent_set(const Graph& g, std::span<const Vertex> vertices) {
  for (Vertex v : vertices) {
    if (v < 0 || v >= g.order()) {
      throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
    }
  }
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (std::size_t j = i + 1; j < vertices.size(); ++j)
      if (g.adjacent(vertices[i], vertices[j])) return false;
  return true;
}

bool search_vertex_transitive(const Graph& g) {
  const int n = g.order();
  if (n > kAutomorphismSearchLimit) {
    throw Error(ErrorCode::TooLarge, "automorphism search limited to " +
                                         std::to_string(kAutomorphismSearchLimit) + " vertices");
  }
  // Orbit of vertex 0, grown as automorphisms are found.
  std::vector<bool> reached(n, false);
  reached[0] = true;
  for (int target = 1; target < n; ++target) {
    if (reached[target]) continue;
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    map[0] = target;
    if (!extend_isomorphism(g, g, map, used, 0)) return false;
    // Every power of the automorphism keeps vertex 0 inside its orbit.
    int v = 0;
    for (int step = 0; step < n; ++step) {
      v = map[v];
      reached[v] = true;
    }
  }
  return true;
}

bool is_vertex_transitive(const Graph& g) {
  if (auto declared = g.declared_vertex_transitive()) return *declared;
  return search_vertex_transitive(g);
}

std::optional<std::vector<Vertex>> find_homomorphism(const Graph& g, const Graph& h) {
  const int n = g.order();
  std::vector<Vertex> f(n, -1);
  std::function<bool(int)> assign = [&](int x) {
    if (x == n) return true;
    for (Vertex s = 0; s < h.order(); ++s) {
      bool ok = true;
      for (Vertex y : g.neighbors(x)) {
        if (y < x && !h.adjacent(f[y], s)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      f[x] = s;
      if (assign(x + 1)) return true;
    }
    f[x] = -1;
    return false;
  };
  if (assign(0)) return f;
  return std::nullopt;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.order() != b.order() || a.size() != b.size()) return false;
  if (a.order() > kIsomorphismSearchLimit) {
    throw Error(ErrorCode::TooLarge, "isomorphism search limited to " +
                                         std::to_string(kIsomorphismSearchLimit) + " vertices");
  }
  std::vector<int> map(a.order(), -1);
  std::vector<bool> used(a.order(), false);
  return extend_isomorphism(a, b, map, used, 0);
}

}  // namespace thetaforge
