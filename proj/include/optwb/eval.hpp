#pragma once

// Set-based evaluation of OPT patterns over ground graphs.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "optwb/core.hpp"
#include "optwb/pattern.hpp"

namespace optwb {

/// Duplicate-free set of mappings, iterated in Mapping order.
class SolutionSet {
 public:
  using const_iterator = std::set<Mapping>::const_iterator;

  SolutionSet() = default;
  SolutionSet(std::initializer_list<Mapping> mappings) : mappings_(mappings) {}

  bool insert(Mapping m) { return mappings_.insert(std::move(m)).second; }
  bool contains(const Mapping& m) const { return mappings_.count(m) != 0; }

  std::size_t size() const { return mappings_.size(); }
  bool empty() const { return mappings_.empty(); }
  const_iterator begin() const { return mappings_.begin(); }
  const_iterator end() const { return mappings_.end(); }

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  std::set<Mapping> mappings_;
};

/// All μ with Dom(μ) = vars(b) and μ(b) ⊆ g.
SolutionSet match_basic(const BasicPattern& b, const Graph& g);

SolutionSet left_outer_join(const SolutionSet& w1, const SolutionSet& w2);

SolutionSet evaluate(const Pattern& p, const Graph& g);

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OracleBudget {
  /// Cap on total assignments enumerated across all leaves.
  std::uint64_t max_assignments = 20'000'000;
};

/// Reference evaluator: enumerates every total assignment of each leaf's
/// variables over IRIs(g) ∪ constants(p), and joins with the set-builder
/// formula. Exponential; intended for cross-checking evaluate().
/// Throws BudgetExceeded.
SolutionSet evaluate_oracle(const Pattern& p, const Graph& g,
                            OracleBudget budget = {});

/// JSON array of objects keyed by `?var`, sorted by serialized form.
nlohmann::json solutions_to_json(const SolutionSet& s);

/// One mapping per line in the same order as the JSON rendering.
std::string solutions_to_text(const SolutionSet& s);

}  // namespace optwb
