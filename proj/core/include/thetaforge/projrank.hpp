#pragma once

#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "thetaforge/graph.hpp"
#include "thetaforge/linalg.hpp"

namespace thetaforge {

/// Rank-r orthogonal projectors in R^d, one per vertex; adjacent vertices
/// must receive orthogonal projectors. Witnesses xi_f(g) <= d / r.
struct ProjectiveRepresentation {
  int d = 0;
  int r = 0;
  std::vector<SymMatrix> projectors;
};

struct RepresentationReport {
  bool passed = false;
  double ratio = 0.0;  // d / r
  double idempotence_error = 0.0;
  int idempotence_vertex = -1;
  double trace_error = 0.0;
  int trace_vertex = -1;
  double orthogonality_error = 0.0;
  std::pair<int, int> orthogonality_pair{-1, -1};
};

RepresentationReport verify_representation(const Graph& g, const ProjectiveRepresentation& rep,
                                           double tol = 1e-8);

/// Vertex i of C5 maps to span{e_i, e_(i+2) mod 5}.
ProjectiveRepresentation c5_representation();

/// Vertex i maps to e_i e_i^T in R^n (the K_n witness).
ProjectiveRepresentation basis_representation(int n);

/// Vertex (x, y) -> P_x (x) Q_y, indexed x * |b| + y. Throws InvalidInput when
/// either input is not a family of rank-r projectors.
ProjectiveRepresentation tensor_representation(const ProjectiveRepresentation& a,
                                               const ProjectiveRepresentation& b);

nlohmann::json representation_to_json(const ProjectiveRepresentation& rep);
/// Parses and verifies against g; throws CertificateInvalid when it fails.
ProjectiveRepresentation representation_from_json(const nlohmann::json& j, const Graph& g,
                                                   double tol = 1e-8);

}  // namespace thetaforge
