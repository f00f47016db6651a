#include "optwb/analysis.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <set>
#include <stdexcept>

#include "optwb/eval.hpp"
#include "optwb/json_io.hpp"

namespace optwb {

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::HoldsOnGraph: return "holds_on_graph";
    case VerdictStatus::Violated: return "violated";
    case VerdictStatus::NoCounterexampleWithinBudget:
      return "no_counterexample_within_budget";
  }
  return "unknown";
}

std::string rank_to_string(Rank r) {
  if (r == 0) return "0";
  std::string out;
  while (r != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(r % 10)));
    r /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

Rank rank_from_string(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rank");
  Rank r = 0;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("rank must be a decimal numeral");
    }
    r = r * 10 + static_cast<unsigned>(c - '0');
  }
  return r;
}

namespace {

Rank binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  Rank r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

Rank rank_of(const std::vector<std::size_t>& comb, std::size_t n) {
  const std::size_t k = comb.size();
  Rank r = 0;
  std::size_t from = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = from; j < comb[i]; ++j) {
      r += binomial(n - 1 - j, k - 1 - i);
    }
    from = comb[i] + 1;
  }
  return r;
}

std::vector<std::size_t> unrank(Rank r, std::size_t n, std::size_t k) {
  std::vector<std::size_t> comb;
  std::size_t j = 0;
  for (std::size_t i = 0; i < k; ++i) {
    for (;; ++j) {
      if (j >= n) throw std::invalid_argument("rank beyond end of stream");
      Rank block = binomial(n - 1 - j, k - 1 - i);
      if (r < block) break;
      r -= block;
    }
    comb.push_back(j++);
  }
  if (r != 0) throw std::invalid_argument("rank beyond end of stream");
  return comb;
}

}  // namespace

GraphEnumerator::GraphEnumerator(std::vector<Triple> universe,
                                 std::size_t max_triples)
    : universe_(std::move(universe)), max_triples_(max_triples) {}

bool GraphEnumerator::next() {
  if (exhausted_) return false;
  current_ = pending_;

  const std::size_t n = universe_.size();
  const std::size_t k = pending_.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pending_[i] < n - k + i) {
      ++pending_[i];
      for (std::size_t j = i + 1; j < k; ++j) pending_[j] = pending_[j - 1] + 1;
      return true;
    }
  }
  if (k + 1 > max_triples_ || k + 1 > n) {
    exhausted_ = true;
  } else {
    pending_.resize(k + 1);
    for (std::size_t j = 0; j <= k; ++j) pending_[j] = j;
  }
  return true;
}

Graph GraphEnumerator::graph() const {
  Graph g;
  for (std::size_t i : current_) g.insert(universe_[i]);
  return g;
}

EnumerationPosition GraphEnumerator::position() const {
  if (exhausted_) {
    return {std::min(max_triples_, universe_.size()) + 1, 0};
  }
  return {pending_.size(), rank_of(pending_, universe_.size())};
}

void GraphEnumerator::seek(const EnumerationPosition& pos) {
  if (pos.triples > max_triples_ || pos.triples > universe_.size()) {
    exhausted_ = true;
    pending_.clear();
    return;
  }
  pending_ = unrank(pos.index, universe_.size(), pos.triples);
  exhausted_ = false;
}

GraphEnumerator enumerate_graphs(const std::vector<Iri>& vocabulary,
                                 std::size_t max_triples) {
  if (vocabulary.empty()) {
    throw std::invalid_argument("graph enumeration needs a vocabulary");
  }
  std::vector<Triple> universe;
  universe.reserve(vocabulary.size() * vocabulary.size() * vocabulary.size());
  for (const auto& s : vocabulary) {
    for (const auto& p : vocabulary) {
      for (const auto& o : vocabulary) universe.push_back(Triple{s, p, o});
    }
  }
  return GraphEnumerator(std::move(universe), max_triples);
}

// ---------------------------------------------------------------------------
// Per-graph checks

Verdict check_subsumed_on(const Pattern& p, const Pattern& p2,
                          const Graph& g) {
  const SolutionSet lhs = evaluate(p, g);
  const SolutionSet rhs = evaluate(p2, g);
  Verdict v;
  v.status = VerdictStatus::HoldsOnGraph;
  v.candidates_examined = 1;
  for (const auto& m : lhs) {
    bool extended = std::any_of(rhs.begin(), rhs.end(), [&m](const Mapping& m2) {
      return subsumed_mapping(m, m2);
    });
    if (!extended) {
      v.status = VerdictStatus::Violated;
      v.witness = Witness{g, m};
      break;
    }
  }
  return v;
}

Verdict check_contained_on(const Pattern& p, const Pattern& p2,
                           const Graph& g) {
  const SolutionSet lhs = evaluate(p, g);
  const SolutionSet rhs = evaluate(p2, g);
  Verdict v;
  v.status = VerdictStatus::HoldsOnGraph;
  v.candidates_examined = 1;
  for (const auto& m : lhs) {
    if (!rhs.contains(m)) {
      v.status = VerdictStatus::Violated;
      v.witness = Witness{g, m};
      break;
    }
  }
  return v;
}

Verdict check_equivalent_on(const Pattern& p, const Pattern& p2,
                            const Graph& g) {
  Verdict v = check_contained_on(p, p2, g);
  if (v.status == VerdictStatus::Violated) return v;
  return check_contained_on(p2, p, g);
}

// ---------------------------------------------------------------------------
// Bounded search

std::vector<Iri> search_vocabulary(const Pattern& p, const Pattern& p2,
                                   std::size_t fresh) {
  std::set<Iri> consts = constants(p);
  consts.merge(constants(p2));
  std::vector<Iri> out;
  for (std::size_t i = 1; i <= fresh; ++i) {
    std::string name = "f" + std::to_string(i);
    while (consts.count(Iri(name))) name = "_" + name;
    out.emplace_back(name);
  }
  out.insert(out.end(), consts.begin(), consts.end());
  return out;
}

namespace {

bool positions_unify(const TriplePattern& a, const TriplePattern& b) {
  const std::array<const Term*, 3> x{&a.subject, &a.predicate, &a.object};
  const std::array<const Term*, 3> y{&b.subject, &b.predicate, &b.object};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!x[i]->is_var() && !y[i]->is_var() && x[i]->iri() != y[i]->iri()) {
      return false;
    }
  }
  return true;
}

// Lower bound on |μ(B)| over all μ: pairwise non-unifiable triple patterns
// must land on distinct triples.
std::size_t image_size_lower_bound(const BasicPattern& b) {
  std::vector<const TriplePattern*> chosen;
  for (const auto& t : b) {
    if (std::none_of(chosen.begin(), chosen.end(),
                     [&t](const TriplePattern* c) {
                       return positions_unify(t, *c);
                     })) {
      chosen.push_back(&t);
    }
  }
  return chosen.size();
}

std::size_t answer_lower_bound(const Pattern& p) {
  const Pattern* cur = &p;
  while (!cur->is_leaf()) cur = &cur->left();
  return image_size_lower_bound(cur->basic());
}

// Triples over the vocabulary that some triple pattern of the given patterns
// can match. Other triples never take part in an evaluation.
std::vector<Triple> relevant_universe(const std::vector<Iri>& vocabulary,
                                      const Pattern& p, const Pattern& p2) {
  const std::size_t n = vocabulary.size();
  std::set<std::array<std::size_t, 3>> picked;
  auto index_of = [&vocabulary](const Iri& iri) {
    return static_cast<std::size_t>(
        std::find(vocabulary.begin(), vocabulary.end(), iri) -
        vocabulary.begin());
  };
  for (const Pattern* pat : {&p, &p2}) {
    for (const auto& leaf : leaves(*pat)) {
      for (const auto& tp : *leaf.basic) {
        const std::array<const Term*, 3> terms{&tp.subject, &tp.predicate,
                                               &tp.object};
        std::array<std::size_t, 3> lo{}, hi{};
        for (std::size_t i = 0; i < 3; ++i) {
          if (terms[i]->is_var()) {
            lo[i] = 0;
            hi[i] = n;
          } else {
            lo[i] = index_of(terms[i]->iri());
            hi[i] = lo[i] + 1;
          }
        }
        for (std::size_t s = lo[0]; s < hi[0]; ++s) {
          for (std::size_t pr = lo[1]; pr < hi[1]; ++pr) {
            for (std::size_t o = lo[2]; o < hi[2]; ++o) {
              const std::array<std::size_t, 3> idx{s, pr, o};
              bool consistent = true;
              for (std::size_t i = 0; i < 3 && consistent; ++i) {
                for (std::size_t j = i + 1; j < 3; ++j) {
                  if (terms[i]->is_var() && terms[j]->is_var() &&
                      terms[i]->var() == terms[j]->var() && idx[i] != idx[j]) {
                    consistent = false;
                    break;
                  }
                }
              }
              if (consistent) picked.insert(idx);
            }
          }
        }
      }
    }
  }
  std::vector<Triple> out;
  out.reserve(picked.size());
  for (const auto& [s, pr, o] : picked) {
    out.push_back(Triple{vocabulary[s], vocabulary[pr], vocabulary[o]});
  }
  return out;
}

// Fresh IRIs (vocabulary indices below `fresh`) must first appear in the
// order f1, f2, ... when the triples are read in stream order. Every
// renaming class of fresh IRIs keeps its least member, so skipping the rest
// loses no counterexample.
bool canonical_fresh_order(const std::vector<std::size_t>& comb,
                           const std::vector<std::array<std::size_t, 3>>& ids,
                           std::size_t fresh) {
  std::size_t next_fresh = 0;
  for (std::size_t c : comb) {
    for (std::size_t v : ids[c]) {
      if (v >= fresh) continue;
      if (v == next_fresh) {
        ++next_fresh;
      } else if (v > next_fresh) {
        return false;
      }
    }
  }
  return true;
}

using GraphCheck = std::function<Verdict(const Graph&)>;

Verdict run_search(const Pattern& p, const Pattern& p2,
                   std::size_t lower_bound, const SearchBudget& budget,
                   const SearchOptions& options, const GraphCheck& check) {
  std::set<Var> all_vars = vars(p);
  all_vars.merge(vars(p2));
  const std::size_t fresh = budget.max_fresh_iris.value_or(all_vars.size());
  const std::vector<Iri> vocabulary = search_vocabulary(p, p2, fresh);

  std::vector<Triple> universe = relevant_universe(vocabulary, p, p2);
  std::vector<std::array<std::size_t, 3>> ids;
  ids.reserve(universe.size());
  {
    auto index_of = [&vocabulary](const Iri& iri) {
      return static_cast<std::size_t>(
          std::find(vocabulary.begin(), vocabulary.end(), iri) -
          vocabulary.begin());
    };
    for (const auto& t : universe) {
      ids.push_back({index_of(t.subject), index_of(t.predicate),
                     index_of(t.object)});
    }
  }

  GraphEnumerator stream(std::move(universe), budget.max_triples);
  if (options.resume_from) stream.seek(*options.resume_from);

  Verdict result;
  while (true) {
    EnumerationPosition here = stream.position();
    // Graphs smaller than the bound cannot produce an answer to refute; the
    // empty graph is examined regardless.
    if (!stream.exhausted() && here.triples > 0 &&
        here.triples < lower_bound) {
      stream.seek({lower_bound, 0});
      continue;
    }
    if (result.candidates_examined >= budget.max_candidates) {
      if (stream.next()) {
        result.budget_exhausted = true;
        stream.seek(here);
      }
      break;
    }
    if (!stream.next()) break;
    if (!canonical_fresh_order(stream.combination(), ids, fresh)) continue;
    ++result.candidates_examined;
    Verdict v = check(stream.graph());
    if (v.status == VerdictStatus::Violated) {
      result.status = VerdictStatus::Violated;
      result.witness = std::move(v.witness);
      break;
    }
  }
  result.position = stream.position();
  return result;
}

}  // namespace

Verdict find_subsumption_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options) {
  return run_search(p, p2, answer_lower_bound(p), budget, options,
                    [&](const Graph& g) { return check_subsumed_on(p, p2, g); });
}

Verdict find_containment_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options) {
  return run_search(
      p, p2, answer_lower_bound(p), budget, options,
      [&](const Graph& g) { return check_contained_on(p, p2, g); });
}

Verdict find_equivalence_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options) {
  const std::size_t bound =
      std::min(answer_lower_bound(p), answer_lower_bound(p2));
  return run_search(
      p, p2, bound, budget, options,
      [&](const Graph& g) { return check_equivalent_on(p, p2, g); });
}

nlohmann::json verdict_to_json(const Verdict& v, const SearchBudget* budget) {
  nlohmann::json out;
  out["status"] = std::string(to_string(v.status));
  if (v.witness) {
    out["graph"] = serialize_graph(v.witness->graph);
    out["mapping"] = mapping_to_json(v.witness->mapping);
  } else {
    out["graph"] = nullptr;
    out["mapping"] = nullptr;
  }
  out["candidates_examined"] = v.candidates_examined;
  if (budget != nullptr) {
    nlohmann::json b;
    b["max_triples"] = budget->max_triples;
    if (budget->max_fresh_iris) {
      b["max_fresh_iris"] = *budget->max_fresh_iris;
    } else {
      b["max_fresh_iris"] = nullptr;
    }
    b["max_candidates"] = budget->max_candidates;
    out["budget"] = b;
    out["budget_exhausted"] = v.budget_exhausted;
    out["position"] = {{"triples", v.position.triples},
                       {"index", rank_to_string(v.position.index)}};
  }
  return out;
}

std::string verdict_to_text(const Verdict& v) {
  std::string out = "status: " + std::string(to_string(v.status)) + "\n";
  out += "candidates_examined: " + std::to_string(v.candidates_examined) + "\n";
  if (v.budget_exhausted) out += "budget_exhausted: true\n";
  if (v.witness) {
    out += "mapping: " + to_string(v.witness->mapping) + "\n";
    out += "graph:\n" + serialize_graph(v.witness->graph);
  }
  return out;
}

}  // namespace optwb
