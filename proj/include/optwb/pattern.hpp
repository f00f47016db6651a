#pragma once

// Patterns of the OPT fragment: basic patterns (sets of triple templates)
// combined with binary OPT nodes. Also the parse-tree addressing used to
// talk about occurrences, and the well-designed / weakly well-designed
// classifiers.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "optwb/core.hpp"

namespace optwb {

class Term {
 public:
  Term(Iri iri) : value_(std::move(iri)) {}  // NOLINT(implicit)
  Term(Var var) : value_(std::move(var)) {}  // NOLINT(implicit)

  bool is_var() const { return std::holds_alternative<Var>(value_); }
  const Var& var() const { return std::get<Var>(value_); }
  const Iri& iri() const { return std::get<Iri>(value_); }

  /// Variables carry their `?` sigil.
  std::string str() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;

 private:
  std::variant<Iri, Var> value_;
};

struct TriplePattern {
  Term subject;
  Term predicate;
  Term object;

  friend bool operator==(const TriplePattern&, const TriplePattern&) = default;
  friend auto operator<=>(const TriplePattern&,
                          const TriplePattern&) = default;
};

/// Possibly empty set of triple patterns, stored sorted and duplicate-free.
class BasicPattern {
 public:
  BasicPattern() = default;
  BasicPattern(std::initializer_list<TriplePattern> triples);
  explicit BasicPattern(std::vector<TriplePattern> triples);

  void insert(TriplePattern t);

  const std::vector<TriplePattern>& triples() const { return triples_; }
  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  auto begin() const { return triples_.begin(); }
  auto end() const { return triples_.end(); }

  friend bool operator==(const BasicPattern&, const BasicPattern&) = default;

 private:
  std::vector<TriplePattern> triples_;
};

enum class Side : std::uint8_t { Left, Right };

/// Address of a node in a pattern's parse tree; the empty path is the root.
class Occurrence {
 public:
  Occurrence() = default;
  explicit Occurrence(std::vector<Side> path) : path_(std::move(path)) {}

  const std::vector<Side>& path() const { return path_; }
  std::size_t depth() const { return path_.size(); }

  Occurrence child(Side s) const;

  /// `ε` for the root, otherwise e.g. `L.R.L`.
  std::string str() const;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;

 private:
  std::vector<Side> path_;
};

/// Immutable binary tree; copies share structure.
class Pattern {
 public:
  /// Defaults to the empty basic pattern `{ }`.
  Pattern();

  static Pattern leaf(BasicPattern basic);
  static Pattern opt(Pattern left, Pattern right);

  bool is_leaf() const;
  /// Precondition: is_leaf().
  const BasicPattern& basic() const;
  /// Precondition: !is_leaf().
  const Pattern& left() const;
  const Pattern& right() const;
  const Pattern& child(Side s) const;

  /// Subtree addressed by `o`; throws std::out_of_range if `o` does not
  /// address a node.
  const Pattern& at(const Occurrence& o) const;
  bool addresses(const Occurrence& o) const;

  std::size_t node_count() const;
  std::size_t opt_count() const;

  friend bool operator==(const Pattern& a, const Pattern& b);

 private:
  struct Node;
  explicit Pattern(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct LeafOccurrence {
  Occurrence occurrence;
  const BasicPattern* basic;
};

std::set<Var> vars(const BasicPattern& b);
std::set<Var> vars(const Pattern& p);
std::set<Iri> constants(const BasicPattern& b);
std::set<Iri> constants(const Pattern& p);

/// All node addresses in preorder (node, left subtree, right subtree).
std::vector<Occurrence> occurrences(const Pattern& p);

/// Leaves in left-to-right order with their addresses. The pointers refer
/// into `p` and stay valid while `p` (or a copy) is alive.
std::vector<LeafOccurrence> leaves(const Pattern& p);

/// Descendant-or-self: o2's path is a prefix of o1's.
bool inside(const Occurrence& o1, const Occurrence& o2);

/// Some OPT node j has o1 inside j's left argument and o2 inside j's right
/// argument.
bool dominates(const Pattern& p, const Occurrence& o1, const Occurrence& o2);

bool is_well_designed(const Pattern& p);
bool is_weakly_well_designed(const Pattern& p);

/// Fully parenthesised concrete syntax:
///   pattern := basic | "(" pattern "OPT" pattern ")"
///   basic   := "{" [ triple { "." triple } [ "." ] ] "}"
/// Throws ParseError.
Pattern parse_pattern(std::string_view text);

/// Inverse of parse_pattern. OPT chains are broken across lines so that
/// generated patterns stay readable.
std::string to_string(const Pattern& p);
std::string to_string(const BasicPattern& b);
std::string to_string(const TriplePattern& t);

}  // namespace optwb
