#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reproduce.hpp"
#include "thetaforge/thetaforge.hpp"

namespace thetaforge::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct RunReport {
  std::string command;
  json inputs = json::object();
  json results = json::object();
  json timings = json::object();
  json tolerances = json::object();

  json to_json() const {
    return {{"command", command},       {"inputs", inputs},
            {"results", results},       {"timings", timings},
            {"version", std::string(kVersion)}, {"tolerances", tolerances}};
  }
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolverFailure:
    case ErrorCode::InfeasibleInput:
      return kExitSolver;
    case ErrorCode::PreconditionFailed:
    case ErrorCode::DegenerateLambda:
    case ErrorCode::NotVerified:
    case ErrorCode::CertificateInvalid:
      return kExitCertificate;
    default:
      return kExitInput;
  }
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SyntaxError, path + ": " + e.what());
  }
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

std::string fmt(double v) {
  std::ostringstream s;
  s << std::setprecision(10) << v;
  return s.str();
}

json graph_summary(const Graph& g) { return {{"vertices", g.order()}, {"edges", g.size()}}; }

json sdp_tolerances(const SdpOptions& o) {
  return {{"sdp_gap", o.gap_tol}, {"sdp_feasibility", o.feas_tol}};
}

json matrix_json(const SymMatrix& m) {
  std::vector<double> lower;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j <= i; ++j) lower.push_back(m(i, j));
  return {{"dim", m.dim()}, {"entries", lower}};
}

// --family/--file plus optional product and complement; product first.
struct GraphSource {
  std::string family;
  std::string file;
  std::vector<std::string> product;
  bool complement = false;

  Graph build() const {
    Graph g = file.empty() ? make_named(family) : parse_graph(read_file(file));
    if (!product.empty()) g = thetaforge::product(g, make_named(product[1]), parse_product_kind(product[0]));
    if (complement) g = thetaforge::complement(g);
    return g;
  }

  json describe() const {
    json j = json::object();
    if (!family.empty()) j["family"] = family;
    if (!file.empty()) j["file"] = file;
    if (!product.empty()) j["product"] = {{"kind", product[0]}, {"other", product[1]}};
    j["complement"] = complement;
    return j;
  }
};

void emit(const RunReport& report, bool as_json, const std::string& text, std::ostream& out) {
  if (as_json) {
    out << report.to_json().dump(2) << '\n';
  } else {
    out << text;
  }
}

// theta -------------------------------------------------------------------

struct ThetaArgs {
  GraphSource source;
  std::string kind = "lovasz";
  std::string form = "min";
  std::string witness;
  bool json = false;
};

int cmd_theta(const ThetaArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const Graph g = a.source.build();
  const ThetaKind kind = parse_theta_kind(a.kind);
  const ThetaForm form = parse_theta_form(a.form);
  const SdpOptions options;
  const auto r = theta_bar(g, kind, form, options);

  RunReport report;
  report.command = "theta";
  report.inputs = a.source.describe();
  report.inputs["kind"] = a.kind;
  report.inputs["form"] = a.form;
  report.results = {{"graph", graph_summary(g)}, {"value", r.value},
                    {"iterations", r.iterations}, {"gap", r.gap},
                    {"status", std::string(to_string(r.status))}};
  report.tolerances = sdp_tolerances(options);
  if (!a.witness.empty()) {
    json w = matrix_json(r.witness);
    w["kind"] = a.kind;
    w["form"] = a.form;
    w["value"] = r.value;
    write_json(a.witness, w);
    report.results["witness"] = a.witness;
  }
  report.timings["total_seconds"] = seconds_since(start);

  std::ostringstream text;
  text << "graph: " << g.order() << " vertices, " << g.size() << " edges\n"
       << "theta_bar[" << a.kind << "/" << a.form << "] = " << fmt(r.value) << '\n';
  if (!a.witness.empty()) text << "witness written to " << a.witness << '\n';
  emit(report, a.json, text.str(), out);
  return kExitOk;
}

// hom ---------------------------------------------------------------------

struct HomArgs {
  std::string g_family, g_file, h_family, h_file;
  std::string variant = "B";
  std::optional<std::string> certify;
  double tol = 1e-6;
  double verify_tol = 1e-8;
  bool search = false;
  bool json = false;
};

Graph load_side(const std::string& family, const std::string& file, const char* which) {
  if (family.empty() == file.empty()) {
    throw Error(ErrorCode::InvalidInput,
                std::string("give exactly one of --") + which + " and --" + which + "-file");
  }
  return file.empty() ? make_named(family) : parse_graph(read_file(file));
}

std::optional<HomCertificate> build_certificate(const Graph& g, const Graph& h, HomVariant v,
                                                const HomDecision& d) {
  if (d.answer != HomAnswer::Yes) return std::nullopt;
  if (d.certificate) return d.certificate;
  if (g == h) {
    std::vector<Vertex> id(g.order());
    std::iota(id.begin(), id.end(), 0);
    return certificate_from_homomorphism(g, h, id, v);
  }
  if (v == HomVariant::B) return construct_certificate_B(g, h);
  // A V certificate also meets every "plus" condition.
  auto cert = construct_certificate_V(g, h);
  cert.variant = v;
  return cert;
}

int cmd_hom(const HomArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  const Graph g = load_side(a.g_family, a.g_file, "g");
  const Graph h = load_side(a.h_family, a.h_file, "h");
  const HomVariant variant = parse_hom_variant(a.variant);
  const SdpOptions options;

  RunReport report;
  report.command = "hom";
  report.inputs = {{"g", a.g_file.empty() ? a.g_family : a.g_file},
                   {"h", a.h_file.empty() ? a.h_family : a.h_file},
                   {"variant", std::string(to_string(variant))}};
  report.tolerances = sdp_tolerances(options);
  report.tolerances["decision"] = a.tol;

  HomDecision d = decide(g, h, variant, a.tol, options);
  bool searched = false;
  if (d.answer == HomAnswer::Unknown && (a.search || a.certify) &&
      g.order() * h.order() <= kGramFeasibilityLimit) {
    auto direct = gram_feasibility(g, h, variant, options);
    direct.values.insert(d.values.begin(), d.values.end());
    d = std::move(direct);
    searched = true;
    report.tolerances["gram_verification"] = 1e-6;
  }
  report.results = {{"answer", std::string(to_string(d.answer))},
                    {"reason", d.reason},
                    {"values", d.values},
                    {"direct_search", searched}};

  std::ostringstream text;
  text << "g: " << g.order() << " vertices, h: " << h.order() << " vertices\n"
       << "answer: " << to_string(d.answer) << '\n'
       << "reason: " << d.reason << '\n';
  for (const auto& [k, v] : d.values) text << "  " << k << " = " << fmt(v) << '\n';

  if (a.certify) {
    const std::string path = a.certify->empty() ? "certificate.json" : *a.certify;
    const auto cert = build_certificate(g, h, variant, d);
    if (!cert) {
      report.results["certificate"] = nullptr;
      text << "no certificate: answer is " << to_string(d.answer) << '\n';
    } else {
      write_json(path, certificate_to_json(*cert));
      // Re-read from disk so the file itself is what gets verified.
      const double tol = searched ? std::max(a.verify_tol, 1e-6) : a.verify_tol;
      report.tolerances["certificate"] = tol;
      const auto loaded = certificate_from_json(read_json(path), g, h, tol);
      const auto rep = verify_certificate(loaded, g, h, tol);
      json conditions = json::object();
      for (const auto& c : rep.conditions) conditions[c.name] = {{"passed", c.passed}, {"worst", c.worst}};
      report.results["certificate"] = {{"path", path},
                                       {"dim", loaded.C.dim()},
                                       {"verified", rep.passed},
                                       {"min_eigenvalue", rep.min_eigenvalue},
                                       {"conditions", conditions}};
      text << "certificate: " << path << " (" << loaded.C.dim() << "x" << loaded.C.dim()
           << ", min eigenvalue " << fmt(rep.min_eigenvalue) << ") verified\n";
    }
  }
  report.timings["total_seconds"] = seconds_since(start);
  emit(report, a.json, text.str(), out);
  return kExitOk;
}

// bounds ------------------------------------------------------------------

struct BoundsArgs {
  std::string source;
  std::string channel;
  double log_base = 2.0;
  bool json = false;
};

int cmd_bounds(const BoundsArgs& a, std::ostream& out) {
  const auto start = Clock::now();
  if (!(a.log_base > 0.0) || a.log_base == 1.0) {
    throw Error(ErrorCode::InvalidInput, "log base must be positive and different from 1");
  }
  const DualSource src = parse_source(read_json(a.source));
  const Channel ch = parse_channel(read_json(a.channel));
  const Graph g = characteristic_graph(src);
  const Graph h = distinguishability_graph(ch);
  const SdpOptions options;
  const auto b = cost_rate_bounds(g, h, a.log_base, options);

  auto bound = [&](double v) -> json { return b.infinite ? json("+inf") : json(v); };
  RunReport report;
  report.command = "bounds";
  report.inputs = {{"source", a.source}, {"channel", a.channel}, {"log_base", a.log_base}};
  report.results = {{"G", graph_summary(g)},
                    {"H", graph_summary(h)},
                    {"theta_bar_G", b.theta_bar_g},
                    {"theta_bar_H", b.theta_bar_h},
                    {"source_log", b.source_log},
                    {"channel_log", b.channel_log},
                    {"classical_bound", bound(b.classical_bound)},
                    {"entangled_bound", bound(b.entangled_bound)},
                    {"infinite", b.infinite}};
  report.tolerances = sdp_tolerances(options);
  report.tolerances["stochastic"] = kStochasticTol;
  report.timings["total_seconds"] = seconds_since(start);

  std::ostringstream text;
  text << "G (characteristic): " << g.order() << " vertices, " << g.size() << " edges, theta_bar "
       << fmt(b.theta_bar_g) << '\n'
       << "H (distinguishability): " << h.order() << " vertices, " << h.size()
       << " edges, theta_bar " << fmt(b.theta_bar_h) << '\n';
  if (b.infinite) {
    text << "InfiniteBound: the channel carries no zero-error information\n"
         << "classical cost rate >= +inf\nentangled cost rate >= +inf\n";
  } else {
    text << "classical cost rate >= " << fmt(b.classical_bound) << '\n'
         << "entangled cost rate >= " << fmt(b.entangled_bound) << '\n';
  }
  emit(report, a.json, text.str(), out);
  return kExitOk;
}

// reproduce ---------------------------------------------------------------

int thread_count() {
  const char* env = std::getenv("THETA_FORGE_THREADS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 256) {
    throw Error(ErrorCode::InvalidInput, "THETA_FORGE_THREADS must be an integer in 1..256");
  }
  return static_cast<int>(n);
}

std::string show(const json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

int cmd_reproduce(const std::string& section, bool as_json, std::ostream& out, std::ostream& err) {
  const auto start = Clock::now();
  std::vector<std::string> tags;
  if (section == "all") {
    tags = harness::section_tags();
  } else if (harness::is_section(section)) {
    tags.push_back(section);
  } else {
    throw Error(ErrorCode::InvalidInput, "unknown section '" + section + "'");
  }
  const int threads = thread_count();
  const auto results = harness::run_sections(tags, threads);

  RunReport report;
  report.command = "reproduce";
  report.inputs = {{"section", section}};
  report.results["sections"] = json::array();
  report.tolerances = sdp_tolerances(SdpOptions{});
  std::ostringstream text;
  std::vector<std::string> failed;
  for (const auto& s : results) {
    report.results["sections"].push_back(harness::to_json(s));
    report.timings[s.tag] = s.seconds;
    text << "== " << s.tag << " ==\n";
    for (const auto& c : s.checks) {
      text << (c.passed ? "  PASS  " : "  FAIL  ") << c.name << ": " << show(c.value) << ' '
           << c.relation << ' ' << show(c.expected);
      if (c.tolerance > 0) text << " (tol " << c.tolerance << ")";
      if (!c.detail.empty()) text << " [" << c.detail << "]";
      text << '\n';
      if (!c.passed) failed.push_back(s.tag + ": " + c.name);
    }
  }
  report.results["passed"] = failed.empty();
  report.timings["total_seconds"] = seconds_since(start);
  report.timings["threads"] = threads;
  emit(report, as_json, text.str(), out);
  if (!failed.empty()) {
    err << failed.size() << " check(s) failed:\n";
    for (const auto& f : failed) err << "  " << f << '\n';
    return kExitReproduction;
  }
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"theta_forge: theta-family invariants, relaxed homomorphisms and coding bounds"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  ThetaArgs ta;
  auto* theta_cmd = app.add_subcommand("theta", "Compute theta_bar of a graph");
  auto* fam = theta_cmd->add_option("--family", ta.source.family, "Named graph, e.g. C:5, C5, petersen");
  auto* file = theta_cmd->add_option("--file", ta.source.file, "Edge-list file");
  fam->excludes(file);
  theta_cmd->add_flag("--complement", ta.source.complement, "Use the complement graph");
  theta_cmd->add_option("--product", ta.source.product, "Product with a named graph: KIND OTHER")
      ->expected(2);
  theta_cmd->add_option("--kind", ta.kind, "lovasz | schrijver | szegedy")->capture_default_str();
  theta_cmd->add_option("--form", ta.form, "min | max")->capture_default_str();
  theta_cmd->add_option("--witness", ta.witness, "Write the optimal witness matrix as JSON");
  theta_cmd->add_flag("--json", ta.json, "Print the run report as JSON");

  HomArgs ha;
  auto* hom_cmd = app.add_subcommand("hom", "Decide a relaxed homomorphism g -> h");
  hom_cmd->set_help_flag("--help", "Print this help message and exit");  // frees --h
  hom_cmd->add_option("--g", ha.g_family, "Named source graph");
  hom_cmd->add_option("--g-file", ha.g_file, "Source graph file");
  hom_cmd->add_option("--h", ha.h_family, "Named target graph");
  hom_cmd->add_option("--h-file", ha.h_file, "Target graph file");
  hom_cmd->add_option("--variant", ha.variant, "B | plus | V")->capture_default_str();
  hom_cmd->add_option("--tol", ha.tol, "Decision tolerance")->capture_default_str();
  hom_cmd->add_option("--verify-tol", ha.verify_tol, "Certificate verification tolerance")
      ->capture_default_str();
  hom_cmd->add_option("--certify", ha.certify, "Write and verify a certificate (default certificate.json)")
      ->expected(0, 1);
  hom_cmd->add_flag("--search", ha.search, "Run the direct Gram search when the answer is Unknown");
  hom_cmd->add_flag("--json", ha.json, "Print the run report as JSON");

  BoundsArgs ba;
  auto* bounds_cmd = app.add_subcommand("bounds", "Cost-rate lower bounds for a source and channel");
  bounds_cmd->add_option("source", ba.source, "Source JSON")->required();
  bounds_cmd->add_option("channel", ba.channel, "Channel JSON")->required();
  bounds_cmd->add_option("--log-base", ba.log_base, "Logarithm base")->capture_default_str();
  bounds_cmd->add_flag("--json", ba.json, "Print the run report as JSON");

  std::string section;
  bool repro_json = false;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run a reproduction section or 'all'");
  repro_cmd->add_option("section", section, "Section tag")->required();
  repro_cmd->add_flag("--json", repro_json, "Print the run report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (theta_cmd->parsed()) {
      if (ta.source.family.empty() && ta.source.file.empty()) {
        throw Error(ErrorCode::InvalidInput, "give --family or --file");
      }
      return cmd_theta(ta, out);
    }
    if (hom_cmd->parsed()) return cmd_hom(ha, out);
    if (bounds_cmd->parsed()) return cmd_bounds(ba, out);
    return cmd_reproduce(section, repro_json, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace thetaforge::cli
