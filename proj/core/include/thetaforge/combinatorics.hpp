#pragma once

#include <optional>
#include <span>
#include <vector>

#include "thetaforge/graph.hpp"

namespace thetaforge {

/// Exact search limits for the backtracking oracles.
inline constexpr int kCliqueSearchLimit = 64;
inline constexpr int kChromaticSearchLimit = 20;
inline constexpr int kAutomorphismSearchLimit = 16;
inline constexpr int kIsomorphismSearchLimit = 10;

struct BruteInvariants {
  int alpha = 0;
  int omega = 0;
  /// Absent when the graph exceeds kChromaticSearchLimit.
  std::optional<int> chi;
};

int clique_number(const Graph& g);
int independence_number(const Graph& g);
int chromatic_number(const Graph& g);

/// Throws TooLarge above kCliqueSearchLimit vertices.
BruteInvariants brute_invariants(const Graph& g);

bool is_independent_set(const Graph& g, std::span<const Vertex> vertices);

/// Uses the declared family flag when present, otherwise automorphism search
/// (TooLarge above kAutomorphismSearchLimit vertices).
bool is_vertex_transitive(const Graph& g);
/// Automorphism search only; ignores any declared flag.
bool search_vertex_transitive(const Graph& g);

/// A classical homomorphism f with x ~ y => f(x) ~ f(y), if one exists.
std::optional<std::vector<Vertex>> find_homomorphism(const Graph& g, const Graph& h);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace thetaforge
