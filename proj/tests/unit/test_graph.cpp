#include <gtest/gtest.h>

#include <random>

#include "thetaforge/error.hpp"
#include "thetaforge/graph.hpp"

namespace tf = thetaforge;

namespace {

tf::ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const tf::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return tf::ErrorCode::InvalidInput;
}

// Product adjacency written out from the definitions, independent of product().
bool oracle_adjacent(const tf::Graph& g, const tf::Graph& h, tf::ProductKind kind, int x, int s,
                     int y, int t) {
  if (x == y && s == t) return false;
  const bool gx = g.adjacent(x, y), hx = h.adjacent(s, t);
  const bool ge = x == y, he = s == t;
  switch (kind) {
    case tf::ProductKind::Strong: return (gx || ge) && (hx || he);
    case tf::ProductKind::Disjunctive: return gx || hx;
    case tf::ProductKind::Lexicographic: return gx || (ge && hx);
    case tf::ProductKind::Cartesian: return (ge && hx) || (gx && he);
    // distinct first coordinates, and x ~ y forces s ~ t
    case tf::ProductKind::Hom: return !ge && (!gx || hx);
    default: return false;
  }
}

}  // namespace

TEST(Graph, CanonicalizesEdges) {
  tf::Graph g(4, {{2, 1}, {0, 3}});
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.edges()[0], (tf::Edge{0, 3}));
  EXPECT_EQ(g.edges()[1], (tf::Edge{1, 2}));
  EXPECT_TRUE(g.adjacent(2, 1));
  EXPECT_FALSE(g.adjacent(1, 1));
  EXPECT_EQ(g.degree(0), 1);
}

TEST(Graph, RejectsBadEdges) {
  EXPECT_EQ(code_of([] { tf::Graph(3, {{0, 0}}); }), tf::ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { tf::Graph(3, {{0, 1}, {1, 0}}); }), tf::ErrorCode::DuplicateEdge);
  EXPECT_EQ(code_of([] { tf::Graph(3, {{0, 3}}); }), tf::ErrorCode::VertexOutOfRange);
  EXPECT_EQ(code_of([] { tf::Graph(2, {}).adjacent(0, 5); }), tf::ErrorCode::VertexOutOfRange);
}

TEST(Graph, NamedFamilies) {
  EXPECT_EQ(tf::complete_graph(6).size(), 15u);
  EXPECT_EQ(tf::cycle_graph(7).size(), 7u);
  EXPECT_EQ(tf::empty_graph(4).size(), 0u);
  EXPECT_EQ(tf::path_graph(5).size(), 4u);

  const auto p = tf::petersen_graph();
  EXPECT_EQ(p.order(), 10);
  EXPECT_EQ(p.size(), 15u);
  for (int v = 0; v < 10; ++v) EXPECT_EQ(p.degree(v), 3);

  // 6 + 15 + 20 strings within distance 3 of any vertex
  const auto gs = tf::schrijver_graph();
  EXPECT_EQ(gs.order(), 64);
  for (int v = 0; v < 64; ++v) EXPECT_EQ(gs.degree(v), 41);
  EXPECT_EQ(tf::make_named("hamming:6:1,2,3"), gs);
}

TEST(Graph, MiniLanguage) {
  EXPECT_EQ(tf::make_named("C:5"), tf::cycle_graph(5));
  EXPECT_EQ(tf::make_named("C5"), tf::cycle_graph(5));
  EXPECT_EQ(tf::make_named("K7"), tf::complete_graph(7));
  EXPECT_EQ(tf::make_named(" petersen "), tf::petersen_graph());
  EXPECT_EQ(tf::make_named("hamming:3:1").size(), 12u);  // the cube

  EXPECT_EQ(code_of([] { tf::make_named("Q:4"); }), tf::ErrorCode::UnknownFamily);
  EXPECT_EQ(code_of([] { tf::make_named("C:2"); }), tf::ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(code_of([] { tf::make_named("K"); }), tf::ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(code_of([] { tf::make_named("hamming:6:9"); }), tf::ErrorCode::ParameterOutOfRange);
}

TEST(Graph, ComplementIsAnInvolution) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    const auto g = tf::random_graph(1 + i % 9, 0.4, rng);
    const auto c = tf::complement(g);
    EXPECT_EQ(g.size() + c.size(), static_cast<std::size_t>(g.order()) * (g.order() - 1) / 2);
    EXPECT_EQ(tf::complement(c), g);
  }
  EXPECT_EQ(tf::complement(tf::complete_graph(5)), tf::empty_graph(5));
}

TEST(Graph, ProductsMatchDefinitions) {
  const tf::Graph g = tf::path_graph(3);
  const tf::Graph h = tf::cycle_graph(4);
  for (auto kind : {tf::ProductKind::Strong, tf::ProductKind::Disjunctive,
                    tf::ProductKind::Lexicographic, tf::ProductKind::Cartesian,
                    tf::ProductKind::Hom}) {
    const auto p = tf::product(g, h, kind);
    ASSERT_EQ(p.order(), 12);
    for (int x = 0; x < 3; ++x)
      for (int s = 0; s < 4; ++s)
        for (int y = 0; y < 3; ++y)
          for (int t = 0; t < 4; ++t)
            EXPECT_EQ(p.adjacent(x * 4 + s, y * 4 + t), oracle_adjacent(g, h, kind, x, s, y, t))
                << tf::to_string(kind) << " (" << x << "," << s << ") (" << y << "," << t << ")";
  }
}

TEST(Graph, DisjointUnionShiftsSecondFactor) {
  const auto u = tf::product(tf::complete_graph(2), tf::path_graph(3), tf::ProductKind::DisjointUnion);
  EXPECT_EQ(u.order(), 5);
  EXPECT_EQ(u.size(), 3u);
  EXPECT_TRUE(u.adjacent(0, 1));
  EXPECT_TRUE(u.adjacent(2, 3));
  EXPECT_TRUE(u.adjacent(3, 4));
  EXPECT_FALSE(u.adjacent(1, 2));
}

TEST(Graph, ProductSizeLimit) {
  EXPECT_EQ(code_of([] { tf::product(tf::complete_graph(10), tf::complete_graph(10), tf::ProductKind::Strong, 99); }),
            tf::ErrorCode::SizeOverflow);
}

TEST(Graph, ProductKindNames) {
  EXPECT_EQ(tf::parse_product_kind("strong"), tf::ProductKind::Strong);
  EXPECT_EQ(tf::parse_product_kind("disj"), tf::ProductKind::Disjunctive);
  EXPECT_EQ(tf::parse_product_kind("lex"), tf::ProductKind::Lexicographic);
  EXPECT_EQ(tf::parse_product_kind("cart"), tf::ProductKind::Cartesian);
  EXPECT_EQ(tf::parse_product_kind("hom"), tf::ProductKind::Hom);
  EXPECT_EQ(code_of([] { tf::parse_product_kind("tensor"); }), tf::ErrorCode::InvalidInput);
}

TEST(Graph, EdgeListRoundTrip) {
  const auto p = tf::petersen_graph();
  EXPECT_EQ(tf::parse_graph(tf::serialize_graph(p)), p);
  const auto g = tf::parse_graph("# triangle plus a pendant\nn=4\n0 1\n1 2\n\n2 0   # closing\n3 2\n");
  EXPECT_EQ(g.order(), 4);
  EXPECT_EQ(g.size(), 4u);
}

TEST(Graph, EdgeListErrors) {
  EXPECT_EQ(code_of([] { tf::parse_graph("0 1\n"); }), tf::ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { tf::parse_graph("n=3\n0 x\n"); }), tf::ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { tf::parse_graph("n=3\n0 1 2\n"); }), tf::ErrorCode::SyntaxError);
  EXPECT_EQ(code_of([] { tf::parse_graph("n=3\n0 3\n"); }), tf::ErrorCode::VertexOutOfRange);
  EXPECT_EQ(code_of([] { tf::parse_graph("n=3\n1 1\n"); }), tf::ErrorCode::SelfLoop);
  EXPECT_EQ(code_of([] { tf::parse_graph("n=3\n0 1\n1 0\n"); }), tf::ErrorCode::DuplicateEdge);
}

TEST(Graph, RandomGraphIsSeeded) {
  std::mt19937_64 a(99), b(99);
  EXPECT_EQ(tf::random_graph(9, 0.5, a), tf::random_graph(9, 0.5, b));
  std::mt19937_64 c(1);
  EXPECT_EQ(tf::random_graph(6, 0.0, c).size(), 0u);
  EXPECT_EQ(tf::random_graph(6, 1.0, c).size(), 15u);
  EXPECT_EQ(code_of([&] { tf::random_graph(3, 1.5, c); }), tf::ErrorCode::ParameterOutOfRange);
}

TEST(Graph, HomProductIntoCliqueIsCoCartesian) {
  // With edges as the constrained pairs, G o K_n is the complement of G [] K_n.
  for (const auto& g : {tf::cycle_graph(5), tf::path_graph(4), tf::petersen_graph()})
    for (int n = 1; n <= 4; ++n)
      EXPECT_EQ(tf::product(g, tf::complete_graph(n), tf::ProductKind::Hom),
                tf::complement(tf::product(g, tf::complete_graph(n), tf::ProductKind::Cartesian)));
}
