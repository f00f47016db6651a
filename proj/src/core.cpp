#include "optwb/core.hpp"

#include <cctype>
#include <sstream>

namespace optwb {

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::string located(const std::string& message, std::size_t line,
                    std::size_t column) {
  std::ostringstream out;
  out << "line " << line;
  if (column != 0) out << ", column " << column;
  out << ": " << message;
  return out.str();
}

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error(located(message, line, column)),
      line_(line),
      column_(column) {}

bool is_identifier(std::string_view text) {
  if (text.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(text.front()))) return false;
  for (char c : text) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

bool is_variable_name(std::string_view text) {
  auto end = text.find_last_not_of('\'');
  if (end == std::string_view::npos) return false;
  return is_identifier(text.substr(0, end + 1));
}

Iri::Iri(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) {
    throw std::invalid_argument("invalid IRI identifier '" + name_ + "'");
  }
}

Var::Var(std::string name) : name_(std::move(name)) {
  if (!is_variable_name(name_)) {
    throw std::invalid_argument("invalid variable name '" + name_ + "'");
  }
}

Graph::Graph(std::initializer_list<Triple> triples) : triples_(triples) {}

std::set<Iri> Graph::iris() const {
  std::set<Iri> out;
  for (const auto& t : triples_) {
    out.insert(t.subject);
    out.insert(t.predicate);
    out.insert(t.object);
  }
  return out;
}

Mapping::Mapping(std::initializer_list<std::pair<const Var, Iri>> bindings) {
  for (const auto& [v, value] : bindings) bind(v, value);
}

void Mapping::bind(const Var& v, const Iri& value) {
  auto [it, inserted] = bindings_.emplace(v, value);
  if (!inserted && it->second != value) {
    throw std::invalid_argument("variable " + v.str() +
                                " is already bound to " + it->second.name());
  }
}

const Iri* Mapping::find(const Var& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::set<Var> Mapping::domain() const {
  std::set<Var> out;
  for (const auto& [v, value] : bindings_) out.insert(v);
  return out;
}

bool compatible(const Mapping& m1, const Mapping& m2) {
  // Both maps are ordered by variable; walk them in lockstep.
  auto a = m1.begin();
  auto b = m2.begin();
  while (a != m1.end() && b != m2.end()) {
    if (a->first < b->first) {
      ++a;
    } else if (b->first < a->first) {
      ++b;
    } else {
      if (a->second != b->second) return false;
      ++a;
      ++b;
    }
  }
  return true;
}

bool subsumed_mapping(const Mapping& m1, const Mapping& m2) {
  for (const auto& [v, value] : m1) {
    const Iri* other = m2.find(v);
    if (other == nullptr || *other != value) return false;
  }
  return true;
}

Mapping merge(const Mapping& m1, const Mapping& m2) {
  if (!compatible(m1, m2)) {
    throw std::invalid_argument("merge of incompatible mappings " +
                                to_string(m1) + " and " + to_string(m2));
  }
  Mapping out = m1;
  for (const auto& [v, value] : m2) out.bind(v, value);
  return out;
}

std::string to_string(const Mapping& m) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, value] : m) {
    if (!first) out += ", ";
    first = false;
    out += v.str();
    out += ": ";
    out += value.name();
  }
  out += "}";
  return out;
}

Graph parse_graph(std::string_view text) {
  Graph g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;

    std::vector<std::pair<std::string_view, std::size_t>> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
      char c = line[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
        continue;
      }
      if (c == '#' && tokens.empty()) break;
      if (c == '.') {
        tokens.emplace_back(line.substr(i, 1), i + 1);
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])) &&
             line[i] != '.') {
        ++i;
      }
      tokens.emplace_back(line.substr(start, i - start), start + 1);
    }
    if (tokens.empty()) continue;

    if (tokens.size() < 4) {
      throw ParseError("expected 'subject predicate object .'", line_no, 0);
    }
    for (std::size_t k = 0; k < 3; ++k) {
      auto [tok, col] = tokens[k];
      if (tok == ".") {
        throw ParseError("expected a term before '.'", line_no, col);
      }
      if (tok.front() == '?') {
        throw ParseError("variable '" + std::string(tok) +
                             "' not allowed in a ground graph",
                         line_no, col);
      }
      if (!is_identifier(tok)) {
        throw ParseError("malformed IRI '" + std::string(tok) + "'", line_no,
                         col);
      }
    }
    if (tokens[3].first != ".") {
      throw ParseError("expected '.' after object", line_no, tokens[3].second);
    }
    if (tokens.size() > 4) {
      throw ParseError("unexpected token after '.'", line_no,
                       tokens[4].second);
    }
    g.insert(Triple{Iri(std::string(tokens[0].first)),
                    Iri(std::string(tokens[1].first)),
                    Iri(std::string(tokens[2].first))});
  }
  return g;
}

std::string serialize_graph(const Graph& g) {
  std::string out;
  for (const auto& t : g) {
    out += t.subject.name();
    out += ' ';
    out += t.predicate.name();
    out += ' ';
    out += t.object.name();
    out += " .\n";
  }
  return out;
}

}  // namespace optwb
