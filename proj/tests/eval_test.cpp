#include <gtest/gtest.h>

#include <random>

#include "optwb/eval.hpp"
#include "support/families.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace optwb;

namespace {

Triple t(const char* s, const char* p, const char* o) {
  return Triple{Iri(s), Iri(p), Iri(o)};
}

Mapping m(std::initializer_list<std::pair<const char*, const char*>> binds) {
  Mapping out;
  for (const auto& [v, i] : binds) out.bind(Var(v), Iri(i));
  return out;
}

BasicPattern bgp(const char* text) { return parse_pattern(text).basic(); }

}  // namespace

TEST(MatchBasic, EmptyPatternYieldsEmptyMapping) {
  EXPECT_EQ(match_basic(BasicPattern{}, Graph{}), SolutionSet{Mapping{}});
  EXPECT_EQ(match_basic(BasicPattern{}, Graph{t("a", "p", "b")}),
            SolutionSet{Mapping{}});
}

TEST(MatchBasic, Examples) {
  Graph g{t("a", "p", "b"), t("a", "q", "c")};
  EXPECT_EQ(match_basic(bgp("{ ?x p ?y }"), g),
            SolutionSet{m({{"x", "a"}, {"y", "b"}})});
  EXPECT_TRUE(match_basic(bgp("{ ?x p ?x }"), Graph{t("a", "p", "b")}).empty());
  EXPECT_EQ(match_basic(bgp("{ ?x ?p ?y }"), g).size(), 2u);
  EXPECT_EQ(match_basic(bgp("{ a p b }"), g), SolutionSet{Mapping{}});
  EXPECT_TRUE(match_basic(bgp("{ a p c }"), g).empty());
}

TEST(MatchBasic, JoinsAcrossTriples) {
  Graph g{t("a", "p", "b"), t("b", "p", "c"), t("c", "p", "a"),
          t("b", "q", "b")};
  EXPECT_EQ(match_basic(bgp("{ ?x p ?y . ?y p ?z }"), g).size(), 3u);
  EXPECT_EQ(match_basic(bgp("{ ?x p ?y . ?y q ?y }"), g),
            SolutionSet{m({{"x", "a"}, {"y", "b"}})});
}

TEST(LeftOuterJoin, Examples) {
  SolutionSet w1{m({{"x", "a"}})};
  EXPECT_EQ(left_outer_join(w1, {}), w1);
  EXPECT_EQ(left_outer_join({}, w1), SolutionSet{});
  SolutionSet w2{m({{"x", "a"}, {"y", "b"}}), m({{"x", "c"}})};
  EXPECT_EQ(left_outer_join(w1, w2),
            SolutionSet{m({{"x", "a"}, {"y", "b"}})});
}

TEST(LeftOuterJoin, AgreesWithFormulaOracle) {
  std::mt19937 rng(23);
  const std::vector<std::string> names = {"x", "y", "z"};
  const std::vector<std::string> iris = {"a", "b"};
  for (int i = 0; i < 300; ++i) {
    SolutionSet w1 = check::random_solutions(rng, 5, names, iris);
    SolutionSet w2 = check::random_solutions(rng, 5, names, iris);
    EXPECT_EQ(left_outer_join(w1, w2), check::oracle_left_outer_join(w1, w2));
  }
}

TEST(LeftOuterJoin, EveryInputMappingIsPreservedOrExtended) {
  std::mt19937 rng(29);
  const std::vector<std::string> names = {"x", "y", "z"};
  const std::vector<std::string> iris = {"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    SolutionSet w1 = check::random_solutions(rng, 4, names, iris);
    SolutionSet w2 = check::random_solutions(rng, 4, names, iris);
    const SolutionSet out = left_outer_join(w1, w2);
    for (const auto& m1 : w1) {
      bool extended = false;
      for (const auto& o : out) extended = extended || subsumed_mapping(m1, o);
      EXPECT_TRUE(extended);
    }
    for (const auto& o : out) {
      bool from_left = false;
      for (const auto& m1 : w1) from_left = from_left || subsumed_mapping(m1, o);
      EXPECT_TRUE(from_left);
    }
  }
}

TEST(Evaluate, Examples) {
  Graph g{t("a", "p", "b"), t("a", "q", "c"), t("d", "p", "e")};
  EXPECT_EQ(evaluate(parse_pattern("{ }"), g), SolutionSet{Mapping{}});
  EXPECT_EQ(evaluate(parse_pattern("({ ?x p ?y } OPT { ?x q ?z })"), g),
            (SolutionSet{m({{"x", "a"}, {"y", "b"}, {"z", "c"}}),
                         m({{"x", "d"}, {"y", "e"}})}));
  EXPECT_EQ(evaluate(parse_pattern("({ ?x p ?y } OPT { a q a })"),
                     Graph{t("a", "p", "b")}),
            SolutionSet{m({{"x", "a"}, {"y", "b"}})});
  EXPECT_EQ(evaluate(parse_pattern("({ } OPT { ?x p ?y })"), Graph{}),
            SolutionSet{Mapping{}});
}

TEST(EvaluateOracle, EmptyLeaf) {
  EXPECT_EQ(evaluate_oracle(parse_pattern("{ }"), Graph{t("a", "p", "b")}),
            SolutionSet{Mapping{}});
}

TEST(EvaluateOracle, BudgetIsEnforced) {
  Graph g;
  for (const char* s : {"a", "b", "c", "d", "e"}) g.insert(t(s, "p", s));
  EXPECT_THROW(evaluate_oracle(parse_pattern("{ ?x ?y ?z . ?w p ?v }"), g,
                               OracleBudget{100}),
               BudgetExceeded);
}

TEST(Evaluate, AgreesWithOracleOnSmallFamily) {
  const auto graphs = check::small_graphs();
  ASSERT_EQ(graphs.size(), 1u + 27u + 351u + 2925u);
  const auto patterns = check::small_patterns();
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    for (const auto& p : patterns) {
      ASSERT_EQ(evaluate(p, graphs[gi]), evaluate_oracle(p, graphs[gi]))
          << to_string(p) << "\n" << serialize_graph(graphs[gi]);
    }
  }
}

TEST(Evaluate, AgreesWithOracleOnRandomInputs) {
  std::mt19937 rng(31);
  const std::vector<std::string> iris = {"a", "b", "p", "c"};
  for (int i = 0; i < 200; ++i) {
    Pattern p = check::random_pattern(rng);
    Graph g = check::random_graph(rng, iris, 6);
    EXPECT_EQ(evaluate(p, g), evaluate_oracle(p, g))
        << to_string(p) << "\n" << serialize_graph(g);
  }
}

TEST(Evaluate, SolutionDomainsStayWithinPatternVariables) {
  std::mt19937 rng(37);
  const std::vector<std::string> iris = {"a", "b", "p"};
  for (int i = 0; i < 200; ++i) {
    Pattern p = check::random_pattern(rng);
    Graph g = check::random_graph(rng, iris, 8);
    const auto pv = vars(p);
    const SolutionSet out = evaluate(p, g);
    for (const auto& mu : out) {
      for (const auto& v : mu.domain()) EXPECT_TRUE(pv.count(v));
    }
    // A leftmost-leaf match always survives in some extended form.
    const Pattern* leftmost = &p;
    while (!leftmost->is_leaf()) leftmost = &leftmost->left();
    EXPECT_EQ(out.empty(), match_basic(leftmost->basic(), g).empty());
  }
}

TEST(Evaluate, BasicPatternsAreMonotone) {
  std::mt19937 rng(41);
  const std::vector<std::string> iris = {"a", "b", "p"};
  check::PatternShape shape;
  shape.max_nodes = 1;
  for (int i = 0; i < 200; ++i) {
    Pattern p = check::random_pattern(rng, shape);
    Graph g = check::random_graph(rng, iris, 6);
    Graph bigger = g;
    for (const auto& tr : check::random_graph(rng, iris, 4)) bigger.insert(tr);
    const SolutionSet small = evaluate(p, g);
    const SolutionSet large = evaluate(p, bigger);
    for (const auto& mu : small) EXPECT_TRUE(large.contains(mu));
  }
}

TEST(Rendering, JsonIsSortedBySerializedForm) {
  SolutionSet s{m({{"y", "b"}}), m({{"x", "c"}}), m({{"x", "a"}, {"y", "b"}}),
                Mapping{}};
  const auto j = solutions_to_json(s);
  ASSERT_EQ(j.size(), 4u);
  for (std::size_t i = 1; i < j.size(); ++i) {
    EXPECT_LT(j[i - 1].dump(), j[i].dump());
  }
  EXPECT_EQ(j[0].dump(), R"({"?x":"a","?y":"b"})");
  EXPECT_EQ(j[3].dump(), "{}");
  EXPECT_EQ(solutions_to_text(SolutionSet{Mapping{}}), "{}\n");
}
