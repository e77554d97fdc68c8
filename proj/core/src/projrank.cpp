#include "thetaforge/projrank.hpp"

#include <cmath>
#include <string>

#include "thetaforge/error.hpp"

namespace thetaforge {

namespace {

void require_projector_family(const ProjectiveRepresentation& rep, double tol, const char* what) {
  if (rep.d < 1 || rep.r < 1 || rep.r > rep.d || rep.projectors.empty()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " has invalid d/r or no projectors");
  }
  for (std::size_t v = 0; v < rep.projectors.size(); ++v) {
    const auto& p = rep.projectors[v].dense();
    if (p.rows() != rep.d) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + ": projector " + std::to_string(v) +
                                               " has the wrong dimension");
    }
    if ((p * p - p).norm() > tol || std::abs(p.trace() - rep.r) > tol) {
      throw Error(ErrorCode::InvalidInput, std::string(what) + ": projector " + std::to_string(v) +
                                               " is not a rank-" + std::to_string(rep.r) + " projector");
    }
  }
}

SymMatrix span_projector(int d, std::initializer_list<int> basis) {
  SymMatrix p(d);
  for (int i : basis) p.set(i, i, 1.0);
  return p;
}

}  // namespace

RepresentationReport verify_representation(const Graph& g, const ProjectiveRepresentation& rep,
                                           double tol) {
  if (static_cast<int>(rep.projectors.size()) != g.order()) {
    throw Error(ErrorCode::SizeMismatch, std::to_string(rep.projectors.size()) +
                                             " projectors for " + std::to_string(g.order()) +
                                             " vertices");
  }
  for (const auto& p : rep.projectors) {
    if (p.dim() != rep.d) throw Error(ErrorCode::SizeMismatch, "projector dimension differs from d");
  }
  RepresentationReport out;
  out.ratio = rep.r > 0 ? static_cast<double>(rep.d) / rep.r : 0.0;
  for (int v = 0; v < g.order(); ++v) {
    const auto& p = rep.projectors[v].dense();
    const double idem = (p * p - p).norm();
    if (idem > out.idempotence_error) {
      out.idempotence_error = idem;
      out.idempotence_vertex = v;
    }
    const double tr = std::abs(p.trace() - rep.r);
    if (tr > out.trace_error) {
      out.trace_error = tr;
      out.trace_vertex = v;
    }
  }
  for (const auto& e : g.edges()) {
    const double o = (rep.projectors[e.u].dense() * rep.projectors[e.v].dense()).norm();
    if (o > out.orthogonality_error) {
      out.orthogonality_error = o;
      out.orthogonality_pair = {e.u, e.v};
    }
  }
  out.passed = rep.r >= 1 && out.idempotence_error <= tol && out.trace_error <= tol &&
               out.orthogonality_error <= tol;
  return out;
}

ProjectiveRepresentation c5_representation() {
  ProjectiveRepresentation rep{5, 2, {}};
  for (int i = 0; i < 5; ++i) rep.projectors.push_back(span_projector(5, {i, (i + 2) % 5}));
  return rep;
}

ProjectiveRepresentation basis_representation(int n) {
  if (n < 1) throw Error(ErrorCode::ParameterOutOfRange, "basis representation needs n >= 1");
  ProjectiveRepresentation rep{n, 1, {}};
  for (int i = 0; i < n; ++i) rep.projectors.push_back(span_projector(n, {i}));
  return rep;
}

ProjectiveRepresentation tensor_representation(const ProjectiveRepresentation& a,
                                               const ProjectiveRepresentation& b) {
  require_projector_family(a, 1e-8, "first representation");
  require_projector_family(b, 1e-8, "second representation");
  ProjectiveRepresentation rep{a.d * b.d, a.r * b.r, {}};
  rep.projectors.reserve(a.projectors.size() * b.projectors.size());
  for (const auto& p : a.projectors)
    for (const auto& q : b.projectors) rep.projectors.push_back(kron(p, q));
  return rep;
}

nlohmann::json representation_to_json(const ProjectiveRepresentation& rep) {
  nlohmann::json projectors = nlohmann::json::array();
  for (const auto& p : rep.projectors) {
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < p.dim(); ++i) {
      std::vector<double> row(p.dim());
      for (int j = 0; j < p.dim(); ++j) row[j] = p(i, j);
      rows.push_back(row);
    }
    projectors.push_back(rows);
  }
  return {{"d", rep.d}, {"r", rep.r}, {"projectors", projectors}};
}

ProjectiveRepresentation representation_from_json(const nlohmann::json& j, const Graph& g,
                                                   double tol) {
  ProjectiveRepresentation rep;
  try {
    rep.d = j.at("d").get<int>();
    rep.r = j.at("r").get<int>();
    for (const auto& pj : j.at("projectors")) {
      const auto rows = pj.get<std::vector<std::vector<double>>>();
      Eigen::MatrixXd m(rows.size(), rows.size());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw Error(ErrorCode::InvalidInput, "projector is not square");
        for (std::size_t k = 0; k < rows.size(); ++k) m(i, k) = rows[i][k];
      }
      rep.projectors.push_back(SymMatrix::from_dense(m, 1e-9));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("representation JSON: ") + e.what());
  }
  const auto report = verify_representation(g, rep, tol);
  if (!report.passed) throw Error(ErrorCode::CertificateInvalid, "representation fails verification");
  return rep;
}

}  // namespace thetaforge
