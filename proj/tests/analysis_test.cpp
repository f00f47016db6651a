#include <gtest/gtest.h>

#include <random>

#include "optwb/analysis.hpp"
#include "optwb/eval.hpp"
#include "support/generators.hpp"

using namespace optwb;

namespace {

Triple t(const char* s, const char* p, const char* o) {
  return Triple{Iri(s), Iri(p), Iri(o)};
}

Pattern P(const char* text) { return parse_pattern(text); }

SearchBudget budget(std::size_t triples, std::size_t fresh,
                    std::uint64_t candidates = 1'000'000) {
  return SearchBudget{triples, fresh, candidates};
}

// Subsumption on one graph, computed with the reference evaluator.
bool oracle_subsumed_on(const Pattern& p, const Pattern& p2, const Graph& g) {
  const SolutionSet lhs = evaluate_oracle(p, g);
  const SolutionSet rhs = evaluate_oracle(p2, g);
  for (const auto& m : lhs) {
    bool extended = false;
    for (const auto& m2 : rhs) {
      bool agrees = true;
      for (const auto& [v, iri] : m) {
        const Iri* other = m2.find(v);
        agrees = agrees && other != nullptr && *other == iri;
      }
      extended = extended || agrees;
    }
    if (!extended) return false;
  }
  return true;
}

}  // namespace

TEST(CheckOnGraph, SubsumptionExamples) {
  Pattern p = P("{ ?x p ?y }");
  Graph g{t("a", "p", "b")};
  EXPECT_EQ(check_subsumed_on(p, p, g).status, VerdictStatus::HoldsOnGraph);
  Verdict v = check_subsumed_on(p, P("{ ?x p ?y . ?y p ?x }"), g);
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_EQ(v.witness->graph, g);
  EXPECT_EQ(v.witness->mapping, (Mapping{{Var("x"), Iri("a")}, {Var("y"), Iri("b")}}));
}

TEST(CheckOnGraph, ContainmentExamples) {
  Graph g{t("a", "p", "b")};
  Verdict v = check_contained_on(P("{ }"), P("{ ?x p ?y }"), g);
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_EQ(v.witness->mapping, Mapping{});
  EXPECT_EQ(check_contained_on(P("{ ?x p ?y }"),
                               P("({ ?x p ?y } OPT { a q a })"), g)
                .status,
            VerdictStatus::HoldsOnGraph);
}

TEST(CheckOnGraph, EquivalenceExamples) {
  Pattern opt = P("({ } OPT { ?x p ?y })");
  Pattern b = P("{ ?x p ?y }");
  Verdict v = check_equivalent_on(opt, b, Graph{});
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_EQ(v.witness->mapping, Mapping{});
  EXPECT_EQ(check_equivalent_on(opt, b, Graph{t("a", "p", "b")}).status,
            VerdictStatus::HoldsOnGraph);
}

TEST(CheckOnGraph, ContainmentImpliesSubsumption) {
  std::mt19937 rng(43);
  const std::vector<std::string> iris = {"a", "b", "p"};
  int violations = 0;
  for (int i = 0; i < 300; ++i) {
    Pattern p = check::random_pattern(rng);
    Pattern p2 = check::random_pattern(rng);
    Graph g = check::random_graph(rng, iris, 6);
    const bool contained =
        check_contained_on(p, p2, g).status == VerdictStatus::HoldsOnGraph;
    const bool subsumed =
        check_subsumed_on(p, p2, g).status == VerdictStatus::HoldsOnGraph;
    if (contained) {
      EXPECT_TRUE(subsumed);
    }
    EXPECT_EQ(subsumed, oracle_subsumed_on(p, p2, g));
    violations += subsumed ? 0 : 1;
  }
  EXPECT_GT(violations, 0);
}

TEST(EnumerateGraphs, Counts) {
  auto count = [](std::vector<Iri> vocab, std::size_t max) {
    GraphEnumerator s = enumerate_graphs(vocab, max);
    std::size_t n = 0;
    while (s.next()) ++n;
    return n;
  };
  EXPECT_EQ(count({Iri("a")}, 1), 2u);
  EXPECT_EQ(count({Iri("a"), Iri("b")}, 1), 1u + 8u);
  EXPECT_EQ(count({Iri("a"), Iri("b")}, 2), 1u + 8u + 28u);
  EXPECT_THROW(enumerate_graphs({}, 1), std::invalid_argument);
}

TEST(EnumerateGraphs, SingleIriStream) {
  GraphEnumerator s = enumerate_graphs({Iri("a")}, 1);
  ASSERT_TRUE(s.next());
  EXPECT_EQ(s.graph(), Graph{});
  ASSERT_TRUE(s.next());
  EXPECT_EQ(s.graph(), (Graph{t("a", "a", "a")}));
  EXPECT_FALSE(s.next());
  EXPECT_TRUE(s.exhausted());
}

TEST(EnumerateGraphs, DistinctAndSeekable) {
  GraphEnumerator s = enumerate_graphs({Iri("a"), Iri("b")}, 3);
  std::set<std::string> seen;
  std::vector<std::pair<EnumerationPosition, Graph>> samples;
  std::size_t i = 0;
  while (true) {
    EnumerationPosition pos = s.position();
    if (!s.next()) break;
    EXPECT_TRUE(seen.insert(serialize_graph(s.graph())).second);
    if (i++ % 37 == 0) samples.emplace_back(pos, s.graph());
  }
  EXPECT_EQ(seen.size(), 1u + 8u + 28u + 56u);
  for (const auto& [pos, g] : samples) {
    GraphEnumerator r = enumerate_graphs({Iri("a"), Iri("b")}, 3);
    r.seek(pos);
    ASSERT_TRUE(r.next());
    EXPECT_EQ(r.graph(), g);
  }
}

TEST(Rank, DecimalRoundTrip) {
  Rank big = static_cast<Rank>(1) << 100;
  big += 12345;
  EXPECT_EQ(rank_from_string(rank_to_string(big)), big);
  EXPECT_EQ(rank_to_string(0), "0");
  EXPECT_THROW(rank_from_string(""), std::invalid_argument);
  EXPECT_THROW(rank_from_string("12a"), std::invalid_argument);
}

TEST(Search, VocabularyPutsFreshIrisFirst) {
  EXPECT_EQ(search_vocabulary(P("{ ?x q f1 }"), P("{ ?x p a }"), 2),
            (std::vector<Iri>{Iri("_f1"), Iri("f2"), Iri("a"), Iri("f1"),
                              Iri("p"), Iri("q")}));
}

TEST(Search, SubsumptionFindsOneTripleWitness) {
  Pattern p = P("{ ?x p ?x }");
  Pattern p2 = P("{ ?x q ?y }");
  Verdict v = find_subsumption_counterexample(p, p2, budget(1, 1));
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_EQ(v.witness->graph, (Graph{t("f1", "p", "f1")}));
  EXPECT_EQ(v.witness->mapping, (Mapping{{Var("x"), Iri("f1")}}));

  Verdict defaults = find_subsumption_counterexample(p, p2, SearchBudget{});
  ASSERT_EQ(defaults.status, VerdictStatus::Violated);
  EXPECT_EQ(defaults.witness->graph.size(), 1u);
}

TEST(Search, ContainmentFindsEmptyGraph) {
  Verdict v = find_containment_counterexample(P("{ }"), P("{ ?x p ?y }"),
                                              SearchBudget{});
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_TRUE(v.witness->graph.empty());
  EXPECT_EQ(v.witness->mapping, Mapping{});
  EXPECT_EQ(v.candidates_examined, 1u);
}

TEST(Search, EquivalenceFindsEmptyGraph) {
  Verdict v = find_equivalence_counterexample(
      P("({ } OPT { ?x p ?y })"), P("{ ?x p ?y }"), SearchBudget{});
  ASSERT_EQ(v.status, VerdictStatus::Violated);
  EXPECT_TRUE(v.witness->graph.empty());
  EXPECT_EQ(v.witness->mapping, Mapping{});
}

TEST(Search, ReflexivePairsHaveNoCounterexample) {
  std::mt19937 rng(47);
  check::PatternShape shape;
  shape.var_names = {"x", "y"};
  shape.max_nodes = 5;
  for (int i = 0; i < 20; ++i) {
    Pattern p = check::random_pattern(rng, shape);
    for (std::size_t triples = 0; triples <= 2; ++triples) {
      const SearchBudget b = budget(triples, 2);
      EXPECT_EQ(find_subsumption_counterexample(p, p, b).status,
                VerdictStatus::NoCounterexampleWithinBudget);
      EXPECT_EQ(find_containment_counterexample(p, p, b).status,
                VerdictStatus::NoCounterexampleWithinBudget);
      EXPECT_EQ(find_equivalence_counterexample(p, p, b).status,
                VerdictStatus::NoCounterexampleWithinBudget);
    }
  }
}

// The pruned search finds a counterexample exactly when brute force over
// every graph on the same vocabulary does.
TEST(Search, AgreesWithBruteForceOverAllSmallGraphs) {
  std::mt19937 rng(53);
  check::PatternShape shape;
  shape.var_names = {"x", "y"};
  shape.constant_names = {"p"};
  shape.max_nodes = 5;
  int found = 0;
  for (int i = 0; i < 60; ++i) {
    Pattern p = check::random_pattern(rng, shape);
    Pattern p2 = check::random_pattern(rng, shape);
    const SearchBudget b = budget(2, 2);
    const Verdict v = find_subsumption_counterexample(p, p2, b);

    const std::vector<Iri> vocab = search_vocabulary(p, p2, 2);
    GraphEnumerator all = enumerate_graphs(vocab, 2);
    bool brute = false;
    while (!brute && all.next()) {
      brute = !oracle_subsumed_on(p, p2, all.graph());
    }
    EXPECT_EQ(v.status == VerdictStatus::Violated, brute)
        << to_string(p) << "\n" << to_string(p2);
    if (v.witness) {
      ++found;
      EXPECT_FALSE(oracle_subsumed_on(p, p2, v.witness->graph));
    }
  }
  EXPECT_GT(found, 0);
}

TEST(Search, WitnessesAreSelfCertifying) {
  std::mt19937 rng(59);
  check::PatternShape shape;
  shape.var_names = {"x", "y", "z"};
  shape.max_nodes = 5;
  for (int i = 0; i < 40; ++i) {
    Pattern p = check::random_pattern(rng, shape);
    Pattern p2 = check::random_pattern(rng, shape);
    const SearchBudget b = budget(2, 2, 20'000);
    Verdict s = find_subsumption_counterexample(p, p2, b);
    if (s.witness) {
      Verdict again = check_subsumed_on(p, p2, s.witness->graph);
      EXPECT_EQ(again.status, VerdictStatus::Violated);
      EXPECT_TRUE(evaluate(p, s.witness->graph).contains(s.witness->mapping));
    }
    Verdict c = find_containment_counterexample(p, p2, b);
    if (c.witness) {
      EXPECT_TRUE(evaluate(p, c.witness->graph).contains(c.witness->mapping));
      EXPECT_FALSE(evaluate(p2, c.witness->graph).contains(c.witness->mapping));
    }
    // A subsumption counterexample refutes containment as well.
    if (s.status == VerdictStatus::Violated && !c.budget_exhausted) {
      EXPECT_EQ(c.status, VerdictStatus::Violated);
    }
  }
}

TEST(Search, DeterministicAndMonotoneInBudget) {
  Pattern p = P("({ ?x p ?y } OPT { ?y q ?z })");
  Pattern p2 = P("({ ?x p ?y } OPT { ?y q ?x })");
  Verdict small = find_subsumption_counterexample(p, p2, budget(2, 3));
  Verdict again = find_subsumption_counterexample(p, p2, budget(2, 3));
  Verdict large = find_subsumption_counterexample(p, p2, budget(3, 3));
  ASSERT_EQ(small.status, VerdictStatus::Violated);
  EXPECT_EQ(small.witness, again.witness);
  EXPECT_EQ(small.candidates_examined, again.candidates_examined);
  // The larger stream has the smaller one as a prefix.
  EXPECT_EQ(small.witness, large.witness);
}

TEST(Search, ResumeContinuesWhereBudgetStopped) {
  Pattern p = P("({ ?x p ?y } OPT { ?y q ?z })");
  Pattern p2 = P("({ ?x p ?y } OPT { ?y q ?x })");
  Verdict full = find_subsumption_counterexample(p, p2, budget(2, 3));
  ASSERT_EQ(full.status, VerdictStatus::Violated);
  ASSERT_GT(full.candidates_examined, 3u);

  std::uint64_t total = 0;
  SearchOptions opts;
  Verdict step;
  for (int rounds = 0; rounds < 1000; ++rounds) {
    step = find_subsumption_counterexample(p, p2, budget(2, 3, 3), opts);
    total += step.candidates_examined;
    if (!step.budget_exhausted) break;
    EXPECT_EQ(step.status, VerdictStatus::NoCounterexampleWithinBudget);
    opts.resume_from = step.position;
  }
  EXPECT_EQ(step.status, VerdictStatus::Violated);
  EXPECT_EQ(step.witness, full.witness);
  EXPECT_EQ(total, full.candidates_examined);
}

TEST(Search, BudgetExhaustionIsReported) {
  Verdict v = find_subsumption_counterexample(P("{ ?x p ?y }"),
                                              P("{ ?x p ?y }"), budget(2, 2, 1));
  EXPECT_EQ(v.status, VerdictStatus::NoCounterexampleWithinBudget);
  EXPECT_TRUE(v.budget_exhausted);
  EXPECT_EQ(v.candidates_examined, 1u);
  const SearchBudget b = budget(2, 2, 1);
  const auto j = verdict_to_json(v, &b);
  EXPECT_EQ(j["status"], "no_counterexample_within_budget");
  EXPECT_EQ(j["budget_exhausted"], true);
  EXPECT_TRUE(j["graph"].is_null());
}

TEST(Rendering, VerdictJsonAndText) {
  Verdict v = find_subsumption_counterexample(P("{ ?x p ?x }"),
                                              P("{ ?x q ?y }"), budget(1, 1));
  const auto j = verdict_to_json(v);
  EXPECT_EQ(j["status"], "violated");
  EXPECT_EQ(j["graph"], "f1 p f1 .\n");
  EXPECT_EQ(j["mapping"], (nlohmann::json{{"?x", "f1"}}));
  EXPECT_FALSE(j.contains("budget"));
  const std::string text = verdict_to_text(v);
  EXPECT_NE(text.find("status: violated"), std::string::npos);
  EXPECT_NE(text.find("{?x: f1}"), std::string::npos);
  EXPECT_NE(text.find("f1 p f1 ."), std::string::npos);
}
