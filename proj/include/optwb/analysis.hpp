#pragma once

// Static-analysis checks for OPT patterns. Subsumption, containment and
// equivalence are checked exactly on a given graph; over all graphs only
// the refuting direction is searchable, by enumerating candidate graphs
// within a budget.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "optwb/core.hpp"
#include "optwb/pattern.hpp"

namespace optwb {

enum class VerdictStatus { HoldsOnGraph, Violated, NoCounterexampleWithinBudget };

std::string_view to_string(VerdictStatus s);

struct Witness {
  Graph graph;
  Mapping mapping;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Lexicographic rank of a triple combination among those of equal size.
using Rank = unsigned __int128;

std::string rank_to_string(Rank r);
/// Throws std::invalid_argument on anything but a decimal numeral.
Rank rank_from_string(std::string_view text);

/// Point in a candidate stream: graphs are ordered by triple count, then by
/// rank of their triple combination.
struct EnumerationPosition {
  std::size_t triples = 0;
  Rank index = 0;

  friend bool operator==(const EnumerationPosition&,
                         const EnumerationPosition&) = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::NoCounterexampleWithinBudget;
  std::optional<Witness> witness;  // present iff status == Violated
  std::uint64_t candidates_examined = 0;
  /// Search stopped at max_candidates before the stream ended.
  bool budget_exhausted = false;
  /// Next candidate the search would have examined.
  EnumerationPosition position;
};

struct SearchBudget {
  std::size_t max_triples = 3;
  /// Defaults to |vars(p) ∪ vars(p2)|.
  std::optional<std::size_t> max_fresh_iris;
  std::uint64_t max_candidates = 1'000'000;
};

/// Every graph with at most `max_triples` triples drawn from `universe`,
/// each exactly once: by increasing size, then lexicographically by the
/// universe indices of the chosen triples.
class GraphEnumerator {
 public:
  GraphEnumerator(std::vector<Triple> universe, std::size_t max_triples);

  /// Moves to the next graph. Returns false once the stream is exhausted.
  bool next();

  /// Universe indices of the current graph, ascending.
  const std::vector<std::size_t>& combination() const { return current_; }
  Graph graph() const;

  /// Position of the graph the next call to next() yields.
  EnumerationPosition position() const;
  void seek(const EnumerationPosition& pos);
  bool exhausted() const { return exhausted_; }

  const std::vector<Triple>& universe() const { return universe_; }
  std::size_t max_triples() const { return max_triples_; }

 private:
  std::vector<Triple> universe_;
  std::size_t max_triples_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> pending_;
  bool exhausted_ = false;
};

/// Stream over all triples of `vocabulary`^3, ordered by vocabulary index.
/// Throws std::invalid_argument on an empty vocabulary.
GraphEnumerator enumerate_graphs(const std::vector<Iri>& vocabulary,
                                 std::size_t max_triples);

Verdict check_subsumed_on(const Pattern& p, const Pattern& p2, const Graph& g);
Verdict check_contained_on(const Pattern& p, const Pattern& p2, const Graph& g);
/// Containment both ways; the witness comes from the first failing side.
Verdict check_equivalent_on(const Pattern& p, const Pattern& p2,
                            const Graph& g);

struct SearchOptions {
  std::optional<EnumerationPosition> resume_from;
};

/// Candidate vocabulary: fresh IRIs f1..fk first, then the constants of
/// both patterns in lexicographic order.
std::vector<Iri> search_vocabulary(const Pattern& p, const Pattern& p2,
                                   std::size_t fresh);

Verdict find_subsumption_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options = {});
Verdict find_containment_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options = {});
Verdict find_equivalence_counterexample(const Pattern& p, const Pattern& p2,
                                        const SearchBudget& budget,
                                        const SearchOptions& options = {});

nlohmann::json verdict_to_json(const Verdict& v,
                               const SearchBudget* budget = nullptr);
std::string verdict_to_text(const Verdict& v);

}  // namespace optwb
