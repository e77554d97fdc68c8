#include "thetaforge/coding.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "thetaforge/error.hpp"
#include "thetaforge/theta.hpp"

namespace thetaforge {

namespace {

void validate_rows(const std::vector<std::vector<double>>& rows, int n_rows, int n_cols,
                   const char* what) {
  if (n_rows < 1 || n_cols < 1) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + ": alphabet sizes must be >= 1");
  }
  if (static_cast<int>(rows.size()) != n_rows) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + ": row count mismatch");
  }
  for (int i = 0; i < n_rows; ++i) {
    if (static_cast<int>(rows[i].size()) != n_cols) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + ": row " + std::to_string(i) +
                                               " has the wrong length");
    }
    for (int j = 0; j < n_cols; ++j) {
      const double v = rows[i][j];
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + ": entry (" + std::to_string(i) +
                                                 "," + std::to_string(j) + ") is not finite");
      }
      if (v < 0) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + ": entry (" + std::to_string(i) +
                                                 "," + std::to_string(j) + ") is negative");
      }
    }
  }
}

std::vector<std::vector<double>> parse_entries(const nlohmann::json& j, const char* rows_key,
                                               const char* cols_key, int& n_rows, int& n_cols,
                                               const char* what) {
  try {
    n_rows = j.at(rows_key).get<int>();
    n_cols = j.at(cols_key).get<int>();
    if (n_rows < 1 || n_cols < 1 || n_rows > 4096 || n_cols > 4096) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + ": alphabet sizes must lie in [1, 4096]");
    }
    std::vector<std::vector<double>> rows(n_rows, std::vector<double>(n_cols, 0.0));
    std::vector<std::vector<bool>> seen(n_rows, std::vector<bool>(n_cols, false));
    for (const auto& e : j.at("entries")) {
      if (!e.is_array() || e.size() != 3) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + ": entries must be [i, j, p] triples");
      }
      const int a = e[0].get<int>();
      const int b = e[1].get<int>();
      const double p = e[2].get<double>();
      if (a < 0 || a >= n_rows || b < 0 || b >= n_cols) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + ": entry index (" +
                                                 std::to_string(a) + "," + std::to_string(b) +
                                                 ") out of range");
      }
      if (seen[a][b]) {
        throw Error(ErrorCode::InvalidInput, std::string(what) + ": duplicate entry (" +
                                                 std::to_string(a) + "," + std::to_string(b) + ")");
      }
      seen[a][b] = true;
      rows[a][b] = p;
    }
    return rows;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " JSON: " + e.what());
  }
}

nlohmann::json entries_json(const std::vector<std::vector<double>>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      if (rows[i][j] != 0.0) out.push_back({i, j, rows[i][j]});
  return out;
}

}  // namespace

void validate(const DualSource& src) {
  validate_rows(src.p, src.x_size, src.u_size, "source");
  double total = 0.0;
  for (const auto& row : src.p)
    for (double v : row) total += v;
  if (std::abs(total - 1.0) > kStochasticTol) {
    throw Error(ErrorCode::InvalidInput, "source: probabilities sum to " + std::to_string(total) +
                                             ", not 1");
  }
}

void validate(const Channel& ch) {
  validate_rows(ch.n, ch.s_size, ch.v_size, "channel");
  for (int s = 0; s < ch.s_size; ++s) {
    double total = 0.0;
    for (double v : ch.n[s]) total += v;
    if (std::abs(total - 1.0) > kStochasticTol) {
      throw Error(ErrorCode::InvalidInput, "channel: row " + std::to_string(s) + " sums to " +
                                               std::to_string(total) + ", not 1");
    }
  }
}

DualSource parse_source(const nlohmann::json& j) {
  DualSource src;
  src.p = parse_entries(j, "x_size", "u_size", src.x_size, src.u_size, "source");
  validate(src);
  return src;
}

Channel parse_channel(const nlohmann::json& j) {
  Channel ch;
  ch.n = parse_entries(j, "s_size", "v_size", ch.s_size, ch.v_size, "channel");
  validate(ch);
  return ch;
}

nlohmann::json to_json(const DualSource& src) {
  return {{"x_size", src.x_size}, {"u_size", src.u_size}, {"entries", entries_json(src.p)}};
}

nlohmann::json to_json(const Channel& ch) {
  return {{"s_size", ch.s_size}, {"v_size", ch.v_size}, {"entries", entries_json(ch.n)}};
}

Graph characteristic_graph(const DualSource& src) {
  validate(src);
  std::vector<Edge> edges;
  for (int x = 0; x < src.x_size; ++x) {
    for (int y = x + 1; y < src.x_size; ++y) {
      for (int u = 0; u < src.u_size; ++u) {
        if (src.p[x][u] > 0 && src.p[y][u] > 0) {
          edges.push_back({x, y});
          break;
        }
      }
    }
  }
  return Graph(src.x_size, std::move(edges));
}

Graph distinguishability_graph(const Channel& ch) {
  validate(ch);
  std::vector<Edge> edges;
  for (int s = 0; s < ch.s_size; ++s) {
    for (int t = s + 1; t < ch.s_size; ++t) {
      bool disjoint = true;
      for (int v = 0; v < ch.v_size && disjoint; ++v) disjoint = !(ch.n[s][v] > 0 && ch.n[t][v] > 0);
      if (disjoint) edges.push_back({s, t});
    }
  }
  return Graph(ch.s_size, std::move(edges));
}

DualSource product_source(const DualSource& a, const DualSource& b) {
  DualSource out;
  out.x_size = a.x_size * b.x_size;
  out.u_size = a.u_size * b.u_size;
  out.p.assign(out.x_size, std::vector<double>(out.u_size, 0.0));
  for (int x1 = 0; x1 < a.x_size; ++x1)
    for (int x2 = 0; x2 < b.x_size; ++x2)
      for (int u1 = 0; u1 < a.u_size; ++u1)
        for (int u2 = 0; u2 < b.u_size; ++u2)
          out.p[x1 * b.x_size + x2][u1 * b.u_size + u2] = a.p[x1][u1] * b.p[x2][u2];
  return out;
}

Channel parallel_channel(const Channel& a, const Channel& b) {
  Channel out;
  out.s_size = a.s_size * b.s_size;
  out.v_size = a.v_size * b.v_size;
  out.n.assign(out.s_size, std::vector<double>(out.v_size, 0.0));
  for (int s1 = 0; s1 < a.s_size; ++s1)
    for (int s2 = 0; s2 < b.s_size; ++s2)
      for (int v1 = 0; v1 < a.v_size; ++v1)
        for (int v2 = 0; v2 < b.v_size; ++v2)
          out.n[s1 * b.s_size + s2][v1 * b.v_size + v2] = a.n[s1][v1] * b.n[s2][v2];
  return out;
}

CostRateBounds cost_rate_bounds(const Graph& g, const Graph& h, double log_base,
                                const SdpOptions& options) {
  if (!(log_base > 0) || log_base == 1.0) {
    throw Error(ErrorCode::ParameterOutOfRange, "log base must be positive and not 1");
  }
  CostRateBounds out;
  out.log_base = log_base;
  out.theta_bar_g = theta_bar(g, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  out.theta_bar_h = theta_bar(h, ThetaKind::Lovasz, ThetaForm::MinForm, options).value;
  const double lb = std::log(log_base);
  // theta_bar is exactly 1 for edgeless graphs and at least omega >= 2
  // otherwise, so a loose cut cannot misclassify.
  const bool g_trivial = out.theta_bar_g <= 1.0 + 1e-6;
  const bool h_trivial = out.theta_bar_h <= 1.0 + 1e-6;
  out.source_log = g_trivial ? 0.0 : std::log(out.theta_bar_g) / lb;
  out.channel_log = h_trivial ? 0.0 : std::log(out.theta_bar_h) / lb;
  double bound = 0.0;
  if (h_trivial) {
    out.infinite = !g_trivial;
    bound = out.infinite ? std::numeric_limits<double>::infinity() : 0.0;
  } else {
    bound = out.source_log / out.channel_log;
  }
  out.classical_bound = bound;
  out.entangled_bound = bound;
  return out;
}

}  // namespace thetaforge
