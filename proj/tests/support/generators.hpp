#pragma once

// Seeded random generators for property tests. Default bounds:
// pattern depth ≤ 4, ≤ 3 triples per leaf, ≤ 4 variables, ≤ 3 constants.

#include <random>
#include <string>
#include <vector>

#include "optwb/core.hpp"
#include "optwb/eval.hpp"
#include "optwb/pattern.hpp"

namespace optwb::check {

struct PatternShape {
  int max_depth = 4;
  int max_triples_per_leaf = 3;
  int max_nodes = 9;
  std::vector<std::string> var_names = {"x", "y", "z", "w"};
  std::vector<std::string> constant_names = {"a", "b", "p"};
  double var_probability = 0.6;
};

inline Term random_term(std::mt19937& rng, const PatternShape& shape) {
  std::bernoulli_distribution use_var(shape.var_probability);
  if (use_var(rng)) {
    std::uniform_int_distribution<std::size_t> pick(0, shape.var_names.size() - 1);
    return Var(shape.var_names[pick(rng)]);
  }
  std::uniform_int_distribution<std::size_t> pick(0,
                                                  shape.constant_names.size() - 1);
  return Iri(shape.constant_names[pick(rng)]);
}

inline BasicPattern random_basic(std::mt19937& rng, const PatternShape& shape) {
  std::uniform_int_distribution<int> count(0, shape.max_triples_per_leaf);
  BasicPattern out;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    Term s = random_term(rng, shape);
    Term p = random_term(rng, shape);
    Term o = random_term(rng, shape);
    out.insert(TriplePattern{s, p, o});
  }
  return out;
}

namespace detail {
inline Pattern random_pattern(std::mt19937& rng, const PatternShape& shape,
                              int depth, int max_nodes) {
  std::bernoulli_distribution split(0.6);
  if (depth >= shape.max_depth || max_nodes < 3 || !split(rng)) {
    return Pattern::leaf(random_basic(rng, shape));
  }
  std::uniform_int_distribution<int> left_share(1, max_nodes - 2);
  const int left_nodes = left_share(rng);
  Pattern left = random_pattern(rng, shape, depth + 1, left_nodes);
  Pattern right = random_pattern(rng, shape, depth + 1, max_nodes - 1 - left_nodes);
  return Pattern::opt(std::move(left), std::move(right));
}
}  // namespace detail

inline Pattern random_pattern(std::mt19937& rng, const PatternShape& shape = {}) {
  return detail::random_pattern(rng, shape, 0, shape.max_nodes);
}

inline Graph random_graph(std::mt19937& rng, const std::vector<std::string>& iris,
                          std::size_t max_triples) {
  std::uniform_int_distribution<std::size_t> count(0, max_triples);
  std::uniform_int_distribution<std::size_t> pick(0, iris.size() - 1);
  Graph g;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    g.insert(Triple{Iri(iris[pick(rng)]), Iri(iris[pick(rng)]),
                    Iri(iris[pick(rng)])});
  }
  return g;
}

inline Mapping random_mapping(std::mt19937& rng,
                              const std::vector<std::string>& var_names,
                              const std::vector<std::string>& iris) {
  std::bernoulli_distribution bound(0.5);
  std::uniform_int_distribution<std::size_t> pick(0, iris.size() - 1);
  Mapping m;
  for (const auto& v : var_names) {
    if (bound(rng)) m.bind(Var(v), Iri(iris[pick(rng)]));
  }
  return m;
}

inline SolutionSet random_solutions(std::mt19937& rng, std::size_t max_size,
                                    const std::vector<std::string>& var_names,
                                    const std::vector<std::string>& iris) {
  std::uniform_int_distribution<std::size_t> count(0, max_size);
  SolutionSet out;
  const std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    out.insert(random_mapping(rng, var_names, iris));
  }
  return out;
}

}  // namespace optwb::check
