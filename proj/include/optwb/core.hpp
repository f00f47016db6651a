#pragma once

// Ground RDF data model: IRIs, variables, triples, graphs and the mapping
// algebra (compatibility, subsumption, merge) used by pattern evaluation.

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace optwb {

/// Error raised by every text parser in the library. Line and column are
/// 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// ASCII letters, digits and underscore; first character not a digit.
bool is_identifier(std::string_view text);

/// Identifier grammar for variable names: an identifier optionally followed
/// by apostrophes (`r'`, `c''`).
bool is_variable_name(std::string_view text);

class Iri {
 public:
  /// Throws std::invalid_argument unless `name` is an identifier.
  explicit Iri(std::string name);

  const std::string& name() const { return name_; }

  friend bool operator==(const Iri&, const Iri&) = default;
  friend auto operator<=>(const Iri&, const Iri&) = default;

 private:
  std::string name_;
};

class Var {
 public:
  /// `name` is given without the leading `?`.
  explicit Var(std::string name);

  const std::string& name() const { return name_; }
  std::string str() const { return "?" + name_; }

  friend bool operator==(const Var&, const Var&) = default;
  friend auto operator<=>(const Var&, const Var&) = default;

 private:
  std::string name_;
};

struct Triple {
  Iri subject;
  Iri predicate;
  Iri object;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

/// Finite set of ground triples, kept in lexicographic (s, p, o) order.
class Graph {
 public:
  using const_iterator = std::set<Triple>::const_iterator;

  Graph() = default;
  Graph(std::initializer_list<Triple> triples);

  /// Returns false if the triple was already present.
  bool insert(Triple t) { return triples_.insert(std::move(t)).second; }
  bool contains(const Triple& t) const { return triples_.count(t) != 0; }

  std::size_t size() const { return triples_.size(); }
  bool empty() const { return triples_.empty(); }
  const_iterator begin() const { return triples_.begin(); }
  const_iterator end() const { return triples_.end(); }

  /// Every IRI occurring in any position.
  std::set<Iri> iris() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::set<Triple> triples_;
};

/// Partial function from variables to IRIs. Equality is extensional.
class Mapping {
 public:
  using const_iterator = std::map<Var, Iri>::const_iterator;

  Mapping() = default;
  Mapping(std::initializer_list<std::pair<const Var, Iri>> bindings);

  /// Throws std::invalid_argument if `v` is already bound to another IRI.
  void bind(const Var& v, const Iri& value);

  /// nullptr when `v` is outside the domain.
  const Iri* find(const Var& v) const;
  bool binds(const Var& v) const { return bindings_.count(v) != 0; }

  std::set<Var> domain() const;
  std::size_t size() const { return bindings_.size(); }
  bool empty() const { return bindings_.empty(); }
  const_iterator begin() const { return bindings_.begin(); }
  const_iterator end() const { return bindings_.end(); }

  friend bool operator==(const Mapping&, const Mapping&) = default;
  friend auto operator<=>(const Mapping&, const Mapping&) = default;

 private:
  std::map<Var, Iri> bindings_;
};

bool compatible(const Mapping& m1, const Mapping& m2);

/// m1 ⊑ m2: compatible and Dom(m1) ⊆ Dom(m2).
bool subsumed_mapping(const Mapping& m1, const Mapping& m2);

/// Union of two compatible mappings. Throws std::invalid_argument otherwise.
Mapping merge(const Mapping& m1, const Mapping& m2);

/// `{?x: a, ?y: b}`; the empty mapping renders as `{}`.
std::string to_string(const Mapping& m);

/// One triple per line, `s p o .`; `#` comment lines and blank lines are
/// skipped. Throws ParseError.
Graph parse_graph(std::string_view text);

/// Canonical form: triples in lexicographic order, single spaces, one per
/// line with a trailing newline.
std::string serialize_graph(const Graph& g);

}  // namespace optwb
