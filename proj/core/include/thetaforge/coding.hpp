#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "thetaforge/graph.hpp"
#include "thetaforge/sdp.hpp"

namespace thetaforge {

/// Joint distribution P(x, u) of Alice's message x and Bob's side information u.
struct DualSource {
  int x_size = 0;
  int u_size = 0;
  std::vector<std::vector<double>> p;  // p[x][u]
};

/// Classical channel N(v | s), one row per input.
struct Channel {
  int s_size = 0;
  int v_size = 0;
  std::vector<std::vector<double>> n;  // n[s][v]
};

inline constexpr double kStochasticTol = 1e-9;

/// Throws InvalidInput naming the violated constraint.
void validate(const DualSource& src);
void validate(const Channel& ch);

/// {x_size, u_size, entries: [[x, u, p], ...]}; omitted entries are zero.
DualSource parse_source(const nlohmann::json& j);
/// {s_size, v_size, entries: [[s, v, p], ...]}; omitted entries are zero.
Channel parse_channel(const nlohmann::json& j);
nlohmann::json to_json(const DualSource& src);
nlohmann::json to_json(const Channel& ch);

/// x ~ y iff x != y and P(x,u) P(y,u) > 0 for some u.
Graph characteristic_graph(const DualSource& src);
/// s ~ t iff s != t and N(v|s) N(v|t) = 0 for every v.
Graph distinguishability_graph(const Channel& ch);

/// Two independent sources observed together; pairs indexed a * |b| + b.
DualSource product_source(const DualSource& a, const DualSource& b);
/// Two channel uses in parallel; pairs indexed the same way.
Channel parallel_channel(const Channel& a, const Channel& b);

struct CostRateBounds {
  double theta_bar_g = 0.0;
  double theta_bar_h = 0.0;
  double log_base = 2.0;
  double source_log = 0.0;   // log theta_bar(g)
  double channel_log = 0.0;  // log theta_bar(h): zero-error units per channel use bound
  double classical_bound = 0.0;
  double entangled_bound = 0.0;
  bool infinite = false;
};

/// Lower bounds log theta_bar(g) / log theta_bar(h) on the classical and
/// entanglement-assisted cost rates. When theta_bar(h) = 1 the bound is +inf
/// (flagged by `infinite`) unless theta_bar(g) = 1 too, in which case it is 0.
CostRateBounds cost_rate_bounds(const Graph& g, const Graph& h, double log_base = 2.0,
                                const SdpOptions& options = {});

}  // namespace thetaforge
