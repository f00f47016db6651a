#include "optwb/eval.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "optwb/json_io.hpp"

namespace optwb {

namespace {

// The evaluator works on interned ids: IRIs of the graph are numbered, each
// variable of the pattern gets a slot, and a partial mapping is a row of
// slot values with kUnbound marking variables outside the domain.
constexpr std::uint32_t kUnbound = std::numeric_limits<std::uint32_t>::max();
constexpr std::uint32_t kMissing = kUnbound - 1;

using Row = std::vector<std::uint32_t>;

struct IdTriple {
  std::uint32_t s;
  std::uint32_t p;
  std::uint32_t o;
};

struct SlotTerm {
  bool is_var;
  std::uint32_t value;  // slot index or IRI id
};

struct SlotTriple {
  SlotTerm s;
  SlotTerm p;
  SlotTerm o;
};

class IndexedGraph {
 public:
  explicit IndexedGraph(const Graph& g) {
    for (const auto& t : g) {
      IdTriple it{intern(t.subject), intern(t.predicate), intern(t.object)};
      all_.push_back(it);
      by_predicate_[it.p].push_back(it);
    }
  }

  std::uint32_t id_of(const Iri& iri) const {
    auto it = ids_.find(iri.name());
    return it == ids_.end() ? kMissing : it->second;
  }

  const Iri& iri_of(std::uint32_t id) const { return names_[id]; }

  const std::vector<IdTriple>& all() const { return all_; }

  const std::vector<IdTriple>& with_predicate(std::uint32_t p) const {
    static const std::vector<IdTriple> kNone;
    auto it = by_predicate_.find(p);
    return it == by_predicate_.end() ? kNone : it->second;
  }

 private:
  std::uint32_t intern(const Iri& iri) {
    auto [it, inserted] = ids_.emplace(
        iri.name(), static_cast<std::uint32_t>(names_.size()));
    if (inserted) names_.push_back(iri);
    return it->second;
  }

  std::unordered_map<std::string, std::uint32_t> ids_;
  std::vector<Iri> names_;
  std::vector<IdTriple> all_;
  std::unordered_map<std::uint32_t, std::vector<IdTriple>> by_predicate_;
};

void sort_unique(std::vector<Row>& rows) {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
}

class Engine {
 public:
  Engine(const Graph& g, const std::set<Var>& variables) : graph_(g) {
    for (const auto& v : variables) {
      slot_of_.emplace(v, static_cast<std::uint32_t>(slots_.size()));
      slots_.push_back(v);
    }
  }

  std::vector<Row> eval(const Pattern& p) const {
    if (p.is_leaf()) return match(p.basic());
    return join(eval(p.left()), eval(p.right()));
  }

  std::vector<Row> match(const BasicPattern& b) const {
    std::vector<SlotTriple> triples;
    triples.reserve(b.size());
    for (const auto& t : b) {
      SlotTriple st{slot(t.subject), slot(t.predicate), slot(t.object)};
      for (const SlotTerm* term : {&st.s, &st.p, &st.o}) {
        if (!term->is_var && term->value == kMissing) return {};
      }
      triples.push_back(st);
    }
    std::vector<Row> out;
    Row row(slots_.size(), kUnbound);
    std::vector<bool> done(triples.size(), false);
    search(triples, done, triples.size(), row, out);
    sort_unique(out);
    return out;
  }

  std::vector<Row> join(const std::vector<Row>& w1,
                        const std::vector<Row>& w2) const {
    std::vector<Row> out;
    for (const auto& r1 : w1) {
      bool extended = false;
      for (const auto& r2 : w2) {
        if (!compatible_rows(r1, r2)) continue;
        extended = true;
        Row merged = r1;
        for (std::size_t i = 0; i < merged.size(); ++i) {
          if (merged[i] == kUnbound) merged[i] = r2[i];
        }
        out.push_back(std::move(merged));
      }
      if (!extended) out.push_back(r1);
    }
    sort_unique(out);
    return out;
  }

  SolutionSet to_solutions(const std::vector<Row>& rows) const {
    SolutionSet out;
    for (const auto& row : rows) {
      Mapping m;
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i] != kUnbound) m.bind(slots_[i], graph_.iri_of(row[i]));
      }
      out.insert(std::move(m));
    }
    return out;
  }

 private:
  SlotTerm slot(const Term& t) const {
    if (t.is_var()) return {true, slot_of_.at(t.var())};
    return {false, graph_.id_of(t.iri())};
  }

  static std::uint32_t resolve(const SlotTerm& t, const Row& row) {
    return t.is_var ? row[t.value] : t.value;
  }

  static bool compatible_rows(const Row& a, const Row& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != kUnbound && b[i] != kUnbound && a[i] != b[i]) return false;
    }
    return true;
  }

  const std::vector<IdTriple>& candidates(const SlotTriple& t,
                                          const Row& row) const {
    std::uint32_t p = resolve(t.p, row);
    return p == kUnbound ? graph_.all() : graph_.with_predicate(p);
  }

  // Backtracking over the remaining triple patterns, always expanding the
  // one with the fewest candidate triples under the current bindings.
  void search(const std::vector<SlotTriple>& triples, std::vector<bool>& done,
              std::size_t remaining, Row& row, std::vector<Row>& out) const {
    if (remaining == 0) {
      out.push_back(row);
      return;
    }
    std::size_t best = triples.size();
    std::size_t best_count = std::numeric_limits<std::size_t>::max();
    int best_bound = -1;
    for (std::size_t i = 0; i < triples.size(); ++i) {
      if (done[i]) continue;
      const auto& t = triples[i];
      std::size_t count = candidates(t, row).size();
      int bound = 0;
      for (const SlotTerm* term : {&t.s, &t.p, &t.o}) {
        if (resolve(*term, row) != kUnbound) ++bound;
      }
      if (count < best_count || (count == best_count && bound > best_bound)) {
        best = i;
        best_count = count;
        best_bound = bound;
      }
    }
    if (best_count == 0) return;

    const SlotTriple& t = triples[best];
    done[best] = true;
    std::uint32_t newly[3];
    for (const IdTriple& cand : candidates(t, row)) {
      std::size_t n_new = 0;
      bool ok = true;
      const std::pair<const SlotTerm*, std::uint32_t> positions[3] = {
          {&t.s, cand.s}, {&t.p, cand.p}, {&t.o, cand.o}};
      for (const auto& [term, value] : positions) {
        std::uint32_t current = resolve(*term, row);
        if (current == kUnbound) {
          row[term->value] = value;
          newly[n_new++] = term->value;
        } else if (current != value) {
          ok = false;
          break;
        }
      }
      if (ok) search(triples, done, remaining - 1, row, out);
      for (std::size_t k = 0; k < n_new; ++k) row[newly[k]] = kUnbound;
    }
    done[best] = false;
  }

  IndexedGraph graph_;
  std::vector<Var> slots_;
  std::map<Var, std::uint32_t> slot_of_;
};

// Literal instance of μ(B) ⊆ G for a total assignment of vars(B).
bool image_in_graph(const BasicPattern& b, const Mapping& m, const Graph& g) {
  auto apply = [&m](const Term& t) -> const Iri& {
    return t.is_var() ? *m.find(t.var()) : t.iri();
  };
  for (const auto& t : b) {
    if (!g.contains(Triple{apply(t.subject), apply(t.predicate),
                           apply(t.object)})) {
      return false;
    }
  }
  return true;
}

SolutionSet oracle_match(const BasicPattern& b, const Graph& g,
                         const std::vector<Iri>& universe,
                         std::uint64_t& spent, std::uint64_t cap) {
  const std::set<Var> var_set = vars(b);
  const std::vector<Var> leaf_vars(var_set.begin(), var_set.end());
  SolutionSet out;
  if (!leaf_vars.empty() && universe.empty()) return out;

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < leaf_vars.size(); ++i) {
    if (total > cap / universe.size()) {
      throw BudgetExceeded("oracle enumeration exceeds assignment budget");
    }
    total *= universe.size();
  }
  if (spent + total > cap) {
    throw BudgetExceeded("oracle enumeration exceeds assignment budget");
  }
  spent += total;

  std::vector<std::size_t> digits(leaf_vars.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    Mapping m;
    for (std::size_t i = 0; i < leaf_vars.size(); ++i) {
      m.bind(leaf_vars[i], universe[digits[i]]);
    }
    if (image_in_graph(b, m, g)) out.insert(std::move(m));
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] < universe.size()) break;
      digits[i] = 0;
    }
  }
  return out;
}

SolutionSet oracle_join(const SolutionSet& w1, const SolutionSet& w2) {
  SolutionSet out;
  // { μ1 ∪ μ2 | μ1 ∈ Ω1, μ2 ∈ Ω2, μ1 ∼ μ2 }
  for (const auto& m1 : w1) {
    for (const auto& m2 : w2) {
      if (compatible(m1, m2)) out.insert(merge(m1, m2));
    }
  }
  // { μ1 ∈ Ω1 | μ1 ≁ μ2 for all μ2 ∈ Ω2 }
  for (const auto& m1 : w1) {
    if (std::none_of(w2.begin(), w2.end(), [&m1](const Mapping& m2) {
          return compatible(m1, m2);
        })) {
      out.insert(m1);
    }
  }
  return out;
}

SolutionSet oracle_eval(const Pattern& p, const Graph& g,
                        const std::vector<Iri>& universe, std::uint64_t& spent,
                        std::uint64_t cap) {
  if (p.is_leaf()) return oracle_match(p.basic(), g, universe, spent, cap);
  return oracle_join(oracle_eval(p.left(), g, universe, spent, cap),
                     oracle_eval(p.right(), g, universe, spent, cap));
}

}  // namespace

SolutionSet match_basic(const BasicPattern& b, const Graph& g) {
  Engine engine(g, vars(b));
  return engine.to_solutions(engine.match(b));
}

SolutionSet left_outer_join(const SolutionSet& w1, const SolutionSet& w2) {
  SolutionSet out;
  for (const auto& m1 : w1) {
    bool extended = false;
    for (const auto& m2 : w2) {
      if (!compatible(m1, m2)) continue;
      extended = true;
      out.insert(merge(m1, m2));
    }
    if (!extended) out.insert(m1);
  }
  return out;
}

SolutionSet evaluate(const Pattern& p, const Graph& g) {
  Engine engine(g, vars(p));
  return engine.to_solutions(engine.eval(p));
}

SolutionSet evaluate_oracle(const Pattern& p, const Graph& g,
                            OracleBudget budget) {
  std::set<Iri> pool = g.iris();
  pool.merge(constants(p));
  const std::vector<Iri> universe(pool.begin(), pool.end());
  std::uint64_t spent = 0;
  return oracle_eval(p, g, universe, spent, budget.max_assignments);
}

nlohmann::json solutions_to_json(const SolutionSet& s) {
  std::vector<std::pair<std::string, nlohmann::json>> rows;
  for (const auto& m : s) {
    nlohmann::json j = mapping_to_json(m);
    rows.emplace_back(j.dump(), std::move(j));
  }
  std::sort(rows.begin(), rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  nlohmann::json out = nlohmann::json::array();
  for (auto& [key, j] : rows) out.push_back(std::move(j));
  return out;
}

std::string solutions_to_text(const SolutionSet& s) {
  std::vector<std::pair<std::string, std::string>> rows;
  for (const auto& m : s) {
    rows.emplace_back(mapping_to_json(m).dump(), to_string(m));
  }
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& [key, line] : rows) {
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace optwb
