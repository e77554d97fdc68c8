#include "reproduce.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <random>
#include <thread>
#include <utility>

#include "thetaforge/thetaforge.hpp"

namespace thetaforge::harness {

namespace {

const double kSqrt5 = std::sqrt(5.0);

class Table {
 public:
  explicit Table(std::vector<Check>& rows) : rows_(rows) {}

  void near(std::string name, double value, double expected, double tol) {
    push(std::move(name), value, expected, "~", tol, std::abs(value - expected) <= tol);
  }
  void at_most(std::string name, double value, double bound, double tol) {
    push(std::move(name), value, bound, "<=", tol, value <= bound + tol);
  }
  void below(std::string name, double value, double bound, double margin) {
    push(std::move(name), value, bound, "<", margin, value < bound - margin);
  }
  void at_least(std::string name, double value, double bound, double tol) {
    push(std::move(name), value, bound, ">=", tol, value >= bound - tol);
  }
  void equal(std::string name, const nlohmann::json& value, const nlohmann::json& expected) {
    push(std::move(name), value, expected, "==", 0.0, value == expected);
  }
  void holds(std::string name, bool ok, std::string detail = {}) {
    push(std::move(name), ok, true, "==", 0.0, ok);
    rows_.back().detail = std::move(detail);
  }

  // Runs `body`; an exception becomes a failed row named `name`.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      push(name, nullptr, nullptr, "==", 0.0, false);
      rows_.back().detail = e.what();
    }
  }

 private:
  void push(std::string name, nlohmann::json value, nlohmann::json expected, const char* rel,
            double tol, bool ok) {
    rows_.push_back({std::move(name), std::move(value), std::move(expected), rel, tol, ok, {}});
  }

  std::vector<Check>& rows_;
};

double lovasz_bar(const Graph& g) { return theta_bar(g, ThetaKind::Lovasz).value; }
double schrijver_bar(const Graph& g) { return theta_bar(g, ThetaKind::Schrijver).value; }
double szegedy_bar(const Graph& g) { return theta_bar(g, ThetaKind::Szegedy).value; }

Graph schrijver_complement() { return complement(schrijver_graph()); }

// Small random graphs; the seed is fixed per section so reruns agree.
Graph draw_graph(std::mt19937_64& rng, int lo, int hi) {
  std::uniform_int_distribution<int> order(lo, hi);
  std::uniform_real_distribution<double> density(0.2, 0.8);
  const int n = order(rng);
  return random_graph(n, density(rng), rng);
}

std::string label(const char* what, int i) { return std::string(what) + " #" + std::to_string(i); }

void section_basics(Table& t) {
  const Graph c5 = cycle_graph(5);
  const std::pair<ThetaKind, ThetaForm> forms[] = {
      {ThetaKind::Lovasz, ThetaForm::MinForm},    {ThetaKind::Lovasz, ThetaForm::MaxForm},
      {ThetaKind::Schrijver, ThetaForm::MinForm}, {ThetaKind::Schrijver, ThetaForm::MaxForm},
      {ThetaKind::Szegedy, ThetaForm::MinForm}};
  for (const auto& [kind, form] : forms) {
    const std::string name = "theta_bar(C5) " + std::string(to_string(kind)) + "/" +
                             std::string(to_string(form));
    t.guarded(name, [&] { t.near(name, theta_bar(c5, kind, form).value, kSqrt5, 1e-5); });
  }
  for (int n = 1; n <= 8; ++n) {
    const Graph k = complete_graph(n);
    for (auto kind : {ThetaKind::Lovasz, ThetaKind::Schrijver, ThetaKind::Szegedy}) {
      const std::string name =
          "theta_bar(K" + std::to_string(n) + ") " + std::string(to_string(kind));
      t.guarded(name, [&] { t.near(name, theta_bar(k, kind).value, n, 1e-6); });
    }
  }
}

void section_thm9(Table& t) {
  const Graph h = schrijver_complement();
  const Graph k5 = complete_graph(5);
  t.guarded("derived quantities of H", [&] {
    const auto dq = derived_quantities(h);
    t.near("theta_bar(H)", dq.theta_bar, 16.0 / 3.0, 1e-3);
    t.near("theta-_bar(H)", dq.theta_minus_bar, 4.0, 1e-3);
    t.equal("beta(H)", dq.beta, 5);
    t.equal("omega_vect(H)", dq.omega_vect, 4);
  });
  t.guarded("decide(K5, H, B)", [&] {
    t.equal("decide(K5, H, B)", std::string(to_string(decide(k5, h, HomVariant::B).answer)), "Yes");
  });
  t.guarded("certificate K5 ->B H", [&] {
    const auto cert = construct_certificate_B(k5, h);
    t.equal("certificate dimension", cert.C.dim(), 320);
    const auto rep = verify_certificate(cert, k5, h, 1e-8);
    t.holds("certificate K5 ->B H verifies", rep.passed,
            "min eigenvalue " + std::to_string(rep.min_eigenvalue));
  });
  t.guarded("decide(K5, H, plus)", [&] {
    t.equal("decide(K5, H, plus)", std::string(to_string(decide(k5, h, HomVariant::Plus).answer)),
            "No");
  });
}

void section_cert(Table& t) {
  std::mt19937_64 rng(0x5eed0001);
  for (int i = 0; i < 20; ++i) {
    Graph g = draw_graph(rng, 2, 8);
    Graph h = draw_graph(rng, 2, 8);
    const std::string name = label("pair", i);
    t.guarded(name, [&] {
      double tg = lovasz_bar(g);
      double th = lovasz_bar(h);
      if (tg > th) {
        std::swap(g, h);
        std::swap(tg, th);
      }
      const auto cert = construct_certificate_B(g, h);
      const auto rep = verify_certificate(cert, g, h, 1e-8);
      t.holds(name + " certificate verifies", rep.passed);
      const auto zh = theta_bar(h, ThetaKind::Lovasz).witness;
      const SymMatrix y = construct_Y(cert, zh);
      const auto feas = check_feasible(min_form_problem_at(g, ThetaKind::Lovasz, th), y, 1e-6);
      t.holds(name + " Y' feasible at theta_bar(h)", feas.passed,
              "worst violation " + std::to_string(feas.worst_violation));
    });
  }
}

void reciprocity(Table& t, bool lovasz) {
  const char* what = lovasz ? "theta(G) theta(G^c)" : "theta-(G) theta+(G^c)";
  auto pick = [&](const ReciprocityReport& r) {
    return lovasz ? r.lovasz_product : r.schrijver_szegedy_product;
  };
  const std::pair<const char*, Graph> named[] = {
      {"C5", cycle_graph(5)}, {"C7", cycle_graph(7)}, {"Petersen", petersen_graph()}};
  for (const auto& [gname, g] : named) {
    const std::string name = std::string(what) + " " + gname;
    t.guarded(name, [&] { t.near(name, pick(reciprocity_check(g)), g.order(), 1e-4); });
  }
  std::mt19937_64 rng(lovasz ? 0x5eed0002 : 0x5eed0003);
  for (int i = 0; i < 20; ++i) {
    const Graph g = draw_graph(rng, 3, 10);
    const std::string name = std::string(what) + " random #" + std::to_string(i);
    t.guarded(name, [&] { t.at_least(name, pick(reciprocity_check(g)), g.order(), 1e-6); });
  }
}

void section_lemma3(Table& t) {
  const Graph gs = schrijver_graph();
  const Graph gs_c = complement(gs);
  t.guarded("theta- product", [&] {
    // theta-(X) = theta-_bar(X^c)
    const double a = schrijver_bar(gs_c);
    const double b = schrijver_bar(gs);
    t.near("theta-(G_S)", a, 4.0, 1e-3);
    t.below("theta-(G_S) theta-(G_S^c)", a * b, 64.0, 1e-3);
  });
  t.guarded("diagonal independent set", [&] {
    const Graph prod = product(gs, gs_c, ProductKind::Strong);
    std::vector<Vertex> diag;
    for (int x = 0; x < gs.order(); ++x) diag.push_back(x * gs.order() + x);
    t.equal("|V(G_S x G_S^c)|", prod.order(), 4096);
    t.holds("diagonal of G_S x G_S^c independent", is_independent_set(prod, diag));
    t.equal("diagonal size", static_cast<int>(diag.size()), 64);
  });
}

void section_thm10(Table& t) {
  const Graph g = product(cycle_graph(5), complete_graph(3), ProductKind::Disjunctive);
  t.guarded("theta+_bar(C5 * K3)", [&] {
    const double v = szegedy_bar(g);
    t.at_most("theta+_bar(C5 * K3)", v, 3.0 * kSqrt5, 1e-6);
    t.equal("chi_vect(C5 * K3)", guarded_ceil(v), 7);
  });
  t.guarded("projective witness", [&] {
    const auto rep = tensor_representation(c5_representation(), basis_representation(3));
    const auto r = verify_representation(g, rep);
    t.holds("tensor representation verifies on C5 * K3", r.passed);
    t.near("representation ratio d/r", r.ratio, 7.5, 1e-12);
    t.below("chi_vect < d/r", 7.0, r.ratio, 0.0);
  });
}

void section_thm11(Table& t) {
  const Graph g = product(cycle_graph(5), cycle_graph(5), ProductKind::Strong);
  const Graph gc = complement(g);
  t.guarded("theta_bar(C5 x C5)", [&] { t.near("theta_bar(C5 x C5)", lovasz_bar(g), 5.0, 1e-4); });
  t.guarded("theta+(C5 x C5)", [&] { t.near("theta+(C5 x C5)", szegedy_bar(gc), 5.0, 1e-4); });
}

void section_thm13(Table& t) {
  const Graph c5 = cycle_graph(5);
  const Graph disj = product(c5, c5, ProductKind::Disjunctive);
  const Graph lex = product(c5, c5, ProductKind::Lexicographic);
  t.guarded("theta-(C5 * C5)",
            [&] { t.near("theta-(C5 * C5)", schrijver_bar(complement(disj)), 5.0, 1e-4); });
  t.guarded("theta-(C5[C5])",
            [&] { t.near("theta-(C5[C5])", schrijver_bar(complement(lex)), 5.0, 1e-4); });
}

void section_thm15(Table& t) {
  std::mt19937_64 rng(0x5eed0004);
  for (int i = 0; i < 10; ++i) {
    Graph g = draw_graph(rng, 2, 7);
    Graph h = draw_graph(rng, 2, 7);
    const std::string name = label("pair", i);
    t.guarded(name, [&] {
      if (schrijver_bar(g) > schrijver_bar(h)) std::swap(g, h);
      const auto iff = schrijver_iff(g, h);
      t.holds(name + " decision", iff.decision);
      if (!iff.certificate) throw Error(ErrorCode::NotVerified, "no certificate produced");
      const auto rep = verify_schrijver_certificate(*iff.certificate, g, h, 1e-8);
      t.holds(name + " certificate verifies", rep.passed);
    });
  }
  t.guarded("beta-(H)", [&] {
    t.equal("beta-(H)", guarded_floor(schrijver_bar(schrijver_complement())), 4);
  });
}

void section_thm16(Table& t) {
  const std::pair<const char*, Graph> named[] = {{"C5", cycle_graph(5)},
                                                 {"C7", cycle_graph(7)},
                                                 {"Petersen", petersen_graph()},
                                                 {"G_S", schrijver_graph()}};
  for (const auto& [gname, g] : named) {
    for (auto kind : {ThetaKind::Lovasz, ThetaKind::Schrijver}) {
      const std::string name = std::string(gname) + " " + std::string(to_string(kind));
      t.guarded(name, [&] {
        const bool nonneg = kind == ThetaKind::Schrijver;
        const auto r = theta_bar(g, kind, ThetaForm::MaxForm);
        const double objective = r.b_matrix->dense().sum();
        const SymMatrix tm = convert_B_to_T(*r.b_matrix, g, nonneg, 1e-6);
        const double lambda = max_eigenvalue(SymMatrix::identity(g.order()) + tm);
        t.near(name + " B->T", lambda, objective, 1e-5);
        const SymMatrix back = convert_T_to_B(tm, g, nonneg, 1e-6);
        t.near(name + " T->B", back.dense().sum(), lambda, 1e-5);
      });
    }
  }
}

void section_eq29(Table& t) {
  const Graph k2 = complete_graph(2);
  const Graph k3 = complete_graph(3);
  t.guarded("K2 o K3", [&] {
    t.near("theta_bar(K2 o K3)", lovasz_bar(product(k2, k3, ProductKind::Hom)), 2.0, 1e-4);
    t.equal("decide(K2, K3, B)", std::string(to_string(decide(k2, k3, HomVariant::B).answer)), "Yes");
  });
  t.guarded("K3 o K2", [&] {
    t.below("theta_bar(K3 o K2)", lovasz_bar(product(k3, k2, ProductKind::Hom)), 3.0, 1e-3);
    t.equal("decide(K3, K2, B)", std::string(to_string(decide(k3, k2, HomVariant::B).answer)), "No");
  });
  t.guarded("C5 o K3", [&] {
    const auto hp = hom_product_check(cycle_graph(5), k3);
    const bool fits = lovasz_bar(cycle_graph(5)) <= 3.0;
    t.holds("theta_bar(C5) <= 3", fits);
    t.near("theta_bar(C5 o K3)", hp.theta_of_homprod, 5.0, 1e-4);
    t.holds("hom-product consistent with decide", hp.consistent);
  });
}

void section_props(Table& t) {
  std::mt19937_64 rng(0x5eed0005);
  for (int i = 0; i < 50; ++i) {
    const Graph g = draw_graph(rng, 1, 10);
    const std::string name = label("sandwich", i);
    t.guarded(name, [&] {
      const auto s = sandwich_report(g);
      t.holds(name, s.monotone,
              "alpha " + std::to_string(s.alpha.value_or(-1)) + " theta- " +
                  std::to_string(s.theta_minus) + " theta " + std::to_string(s.theta) +
                  " theta+ " + std::to_string(s.theta_plus) + " chi " +
                  std::to_string(s.chi_of_complement.value_or(-1)));
    });
  }
  int found = 0;
  for (int i = 0; found < 12 && i < 200; ++i) {
    const Graph g = draw_graph(rng, 2, 6);
    const Graph h = draw_graph(rng, 2, 6);
    const auto f = find_homomorphism(g, h);
    if (!f) continue;
    const std::string name = label("classical hom", found++);
    for (auto v : {HomVariant::B, HomVariant::Plus, HomVariant::V}) {
      const std::string row = name + " " + std::string(to_string(v));
      t.guarded(row, [&] {
        const auto cert = certificate_from_homomorphism(g, h, *f, v);
        t.holds(row, verify_certificate(cert, g, h, 1e-8).passed);
      });
    }
  }
  t.equal("classical homomorphisms sampled", found, 12);
}

using Body = void (*)(Table&);

const std::vector<std::pair<std::string, Body>>& registry() {
  static const std::vector<std::pair<std::string, Body>> sections = {
      {"basics", section_basics},
      {"thm9", section_thm9},
      {"cert", section_cert},
      {"lemma1", [](Table& t) { reciprocity(t, true); }},
      {"lemma2", [](Table& t) { reciprocity(t, false); }},
      {"lemma3", section_lemma3},
      {"thm10", section_thm10},
      {"thm11", section_thm11},
      {"thm13", section_thm13},
      {"thm15", section_thm15},
      {"thm16", section_thm16},
      {"eq29", section_eq29},
      {"props", section_props},
  };
  return sections;
}

}  // namespace

bool SectionResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const std::vector<std::string>& section_tags() {
  static const std::vector<std::string> tags = [] {
    std::vector<std::string> out;
    for (const auto& [tag, body] : registry()) out.push_back(tag);
    return out;
  }();
  return tags;
}

bool is_section(std::string_view tag) {
  const auto& tags = section_tags();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

SectionResult run_section(std::string_view tag) {
  const auto& sections = registry();
  const auto it = std::find_if(sections.begin(), sections.end(),
                               [&](const auto& s) { return s.first == tag; });
  if (it == sections.end()) {
    throw Error(ErrorCode::InvalidInput, "unknown section '" + std::string(tag) + "'");
  }
  SectionResult out;
  out.tag = it->first;
  const auto start = std::chrono::steady_clock::now();
  Table table(out.checks);
  it->second(table);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::vector<SectionResult> run_sections(const std::vector<std::string>& tags, int threads) {
  for (const auto& tag : tags) {
    if (!is_section(tag)) throw Error(ErrorCode::InvalidInput, "unknown section '" + tag + "'");
  }
  std::vector<SectionResult> out(tags.size());
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(tags.size(), 1)));
  if (workers == 1) {
    for (std::size_t i = 0; i < tags.size(); ++i) out[i] = run_section(tags[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < tags.size(); i = next++) out[i] = run_section(tags[i]);
      });
    }
  }
  return out;
}

nlohmann::json to_json(const Check& c) {
  nlohmann::json j = {{"name", c.name},         {"value", c.value},
                      {"expected", c.expected}, {"relation", c.relation},
                      {"tolerance", c.tolerance}, {"passed", c.passed}};
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

nlohmann::json to_json(const SectionResult& s) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : s.checks) checks.push_back(to_json(c));
  return {{"section", s.tag}, {"passed", s.passed()}, {"checks", checks}};
}

}  // namespace thetaforge::harness
